"""Two-valued semantics, compact translations and realizability for
argumentation frameworks, normal logic programs, abstract dialectical
frameworks and propositional logic."""

from .core import (
    ContractError,
    EnumerationLimitError,
    Interpretation,
    KbError,
    ModelSet,
    ParseError,
    Vocabulary,
    VocabularyError,
    all_interpretations,
    complement_count,
    is_antichain,
)
from .af import Af, is_conflict_free, stable_extensions
from .lp import LogicProgram, Rule, active_rules, gl_reduct, least_model, stable_models, supported_models
from .adf import (
    AcceptanceCondition,
    Adf,
    PartialPair,
    Polarity,
    adf_models,
    adf_reduct,
    adf_stable_models,
    gamma_lfp,
    gamma_step,
    is_bipolar,
    link_polarity,
)
from .realize import (
    count_realizations,
    decide_bipolar_realizability,
    encode_bipolar_realizability,
    realize_adf_supported,
    realize_badf_stable,
)

__version__ = "0.1.0"
