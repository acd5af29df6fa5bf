"""Named invariant suites, runnable from the command line via ``check --property``."""

from __future__ import annotations

import itertools
import random
from typing import Callable

import numpy as np

from .adf import Adf, adf_models, adf_stable_models, is_bipolar
from .af import is_conflict_free, stable_extensions
from .core import Vocabulary, is_antichain
from .lp import LogicProgram, Rule, stable_models, supported_models
from .oracle import all_model_sets, enumerate_adfs, enumerate_afs, semantic_range
from .proplogic import Atom, Not, Or, models
from .realize import decide_bipolar_realizability, realize_adf_supported, realize_badf_stable
from .sat import CnfInstance, solve
from .translate import adf_to_lp, adf_to_pl, af_to_adf, af_to_lp, clark_completion_pl, lp_to_adf

XYZ = Vocabulary("xyz")


def random_program(rng: random.Random, vocab: Vocabulary, max_rules: int = 5) -> LogicProgram:
    atoms = vocab.atoms
    rules = []
    for _ in range(rng.randint(0, max_rules)):
        body = [lit for lit in itertools.product(atoms, (True, False)) if rng.random() < 0.3]
        rules.append(Rule(rng.choice(atoms), [a for a, s in body if s], [a for a, s in body if not s]))
    return LogicProgram(rules, vocab)


def random_cnf(rng: random.Random, max_vars: int = 12) -> CnfInstance:
    n = rng.randint(1, max_vars)
    clauses = []
    for _ in range(rng.randint(0, 4 * n)):
        width = rng.randint(1, min(3, n))
        clauses.append([v if rng.random() < 0.5 else -v for v in rng.sample(range(1, n + 1), width)])
    return CnfInstance(n, clauses)


def brute_force_sat(cnf: CnfInstance) -> bool:
    """Truth-table satisfiability, vectorised over all assignments."""
    n = cnf.num_vars
    table = ((np.arange(1 << n)[:, None] >> np.arange(n)[None, :]) & 1).astype(bool)
    alive = np.ones(1 << n, dtype=bool)
    for c in cnf.clauses:
        sat = np.zeros(1 << n, dtype=bool)
        for lit in c:
            col = table[:, abs(lit) - 1]
            sat |= col if lit > 0 else ~col
        alive &= sat
    return bool(alive.any())


def check_af_antichain(samples: int = 0) -> tuple[bool, str]:
    count = 0
    for af in enumerate_afs(XYZ):
        st = stable_extensions(af)
        if not is_antichain(st):
            return False, f"non-antichain stable extensions for {sorted(af.attacks)}"
        for ext in st:
            if not is_conflict_free(af, ext):
                return False, f"{ext} is not conflict-free"
            outside = set(XYZ.atoms) - ext.names()
            if any(not any((b, a) in af.attacks for b in ext) for a in outside):
                return False, f"{ext} does not attack every outside argument"
        count += 1
    return True, f"{count} frameworks checked"


def check_lp_stable(samples: int = 10_000) -> tuple[bool, str]:
    rng = random.Random(7)
    for _ in range(samples):
        vocab = Vocabulary("abc"[: rng.randint(1, 3)])
        p = random_program(rng, vocab)
        st, su = stable_models(p), supported_models(p)
        if not st.masks <= su.masks:
            return False, f"stable ⊄ supported for {sorted(map(str, p.rules))}"
        if not is_antichain(st):
            return False, f"stable models not an antichain for {sorted(map(str, p.rules))}"
        if su != models(clark_completion_pl(p)):
            return False, f"supported models differ from completion for {sorted(map(str, p.rules))}"
    return True, f"{samples} random programs checked"


def check_adf_stable(samples: int = 2_000) -> tuple[bool, str]:
    def one(d: Adf) -> str | None:
        su, st = adf_models(d), adf_stable_models(d)
        if not st.masks <= su.masks:
            return "stable ⊄ models"
        if not is_antichain(st):
            return "stable models not an antichain"
        if su != models(adf_to_pl(d)):
            return "models differ from the biconditional theory"
        return None

    checked = 0
    for n in (1, 2):
        for d in enumerate_adfs(Vocabulary("ab"[:n])):
            err = one(d)
            if err:
                return False, f"{err}: {d}"
            checked += 1
    rng = random.Random(11)
    for _ in range(samples):
        d = Adf.from_tables(XYZ, [rng.randrange(256) for _ in range(3)])
        err = one(d)
        if err:
            return False, f"{err}: {d}"
        checked += 1
    return True, f"{checked} ADFs checked"


def check_translations(samples: int = 0) -> tuple[bool, str]:
    for af in enumerate_afs(XYZ):
        st = stable_extensions(af)
        d = af_to_adf(af)
        p = af_to_lp(af)
        if not (st == adf_models(d) == adf_stable_models(d) == stable_models(p) == supported_models(p)):
            return False, f"AF chain not faithful for {sorted(af.attacks)}"
    for d in enumerate_adfs(Vocabulary("ab")):
        su = adf_models(d)
        if not (su == supported_models(adf_to_lp(d)) == models(adf_to_pl(d))):
            return False, f"ADF supported translation not faithful for {d}"
    rng = random.Random(3)
    for _ in range(500):
        p = random_program(rng, Vocabulary("abc"[: rng.randint(1, 3)]))
        if not (supported_models(p) == adf_models(lp_to_adf(p)) == models(clark_completion_pl(p))):
            return False, f"LP supported translation not faithful for {sorted(map(str, p.rules))}"
    a = Atom("a")
    d = Adf.from_formulas({"a": Or((a, Not(a)))})
    if adf_stable_models(d).as_sets() != [frozenset("a")] or stable_models(adf_to_lp(d)).masks:
        return False, "the a∨¬a stable-semantics counterexample did not show the expected mismatch"
    return True, "512 AFs, 256 two-statement ADFs, 500 programs and the stable counterexample checked"


def check_sat(samples: int = 10_000) -> tuple[bool, str]:
    rng = random.Random(5)
    for _ in range(samples):
        cnf = random_cnf(rng)
        if solve(cnf).satisfiable != brute_force_sat(cnf):
            return False, f"solver disagrees with truth tables on {cnf}"
    return True, f"{samples} random instances checked"


def check_realize(samples: int = 0) -> tuple[bool, str]:
    for n in (1, 2):
        for x in all_model_sets(Vocabulary("ab"[:n])):
            realize_adf_supported(x)
    for n in (1, 2, 3):
        for x in all_model_sets(Vocabulary("xyz"[:n])):
            if x.masks and is_antichain(x):
                d = realize_badf_stable(x)
                if not (adf_stable_models(d) == adf_models(d) == x and is_bipolar(d)):
                    return False, f"canonical stable realization fails for {x}"
    return True, "supported realizations for n<=2 and stable realizations of every nonempty antichain for n<=3"


def check_bipolar_oracle(samples: int = 0) -> tuple[bool, str]:
    for n in (2, 3):
        vocab = Vocabulary("xyz"[:n])
        expected = semantic_range("badf-su", vocab)
        for x in all_model_sets(vocab):
            got = decide_bipolar_realizability(x) is not None
            if got != (x in expected):
                return False, f"SAT decision {got} disagrees with the oracle for {x}"
    return True, "16 model sets at n=2 and 256 at n=3 agree"


PROPERTIES: dict[str, Callable[..., tuple[bool, str]]] = {
    "af-antichain": check_af_antichain,
    "lp-stable": check_lp_stable,
    "adf-stable": check_adf_stable,
    "translations": check_translations,
    "sat-bruteforce": check_sat,
    "realize": check_realize,
    "bipolar-oracle": check_bipolar_oracle,
}
