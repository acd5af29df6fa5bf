"""Constructing ADFs with a prescribed model set, and deciding bipolar realizability via SAT."""

from __future__ import annotations

from dataclasses import dataclass

from .adf import AcceptanceCondition, Adf, adf_models, adf_stable_models, is_bipolar
from .core import ContractError, KbError, ModelSet, Vocabulary, check_limit, is_antichain
from .proplogic import Atom, Not, conj, disj, minterm
from .sat import CnfInstance, solve

ENCODING_LIMIT = 12


class RealizationError(KbError):
    """A constructed realization failed its own verification."""


def _verify(actual: ModelSet, target: ModelSet, what: str) -> None:
    if actual != target:
        raise RealizationError(f"{what}: got {actual}, expected {target}")


def realize_adf_supported(x: ModelSet) -> Adf:
    """An ADF over the same vocabulary whose models are exactly ``x``.

    For nonempty ``x`` every statement gets all statements as parents and
    ``C_a(M)`` is true iff ``M`` is wanted and contains ``a``, or ``M`` is
    unwanted and lacks ``a``.  For empty ``x`` the first atom gets the
    condition ``neg(a)``, which no interpretation can satisfy; the
    remaining statements keep ``b`` as their condition.
    """
    vocab = x.vocabulary
    check_limit(len(vocab))
    if not x.masks:
        if not len(vocab):
            raise ContractError("cannot realize the empty model set over an empty vocabulary")
        first = vocab.atoms[0]
        formulas = {a: Not(Atom(a)) if a == first else Atom(a) for a in vocab}
        d = Adf.from_formulas(formulas, vocab)
    else:
        conds = {}
        everything = range(1 << len(vocab))
        for i, a in enumerate(vocab):
            wanted = [m for m in sorted(x.masks) if m >> i & 1]
            unwanted = [m for m in everything if m not in x.masks and not m >> i & 1]
            table = 0
            for m in wanted + unwanted:
                table |= 1 << m
            formula = disj(*(minterm(vocab, m) for m in wanted + unwanted))
            conds[a] = AcceptanceCondition(vocab.atoms, table, formula)
        d = Adf(vocab, conds)
    _verify(adf_models(d), x, "supported realization")
    return d


def realize_badf_stable(x: ModelSet) -> Adf:
    """The canonical bipolar ADF whose stable models (and models) are the antichain ``x``.

    ``a`` is accepted iff, for some wanted set containing ``a``, every atom
    outside that set is false.  The empty model set is delegated to
    :func:`realize_adf_supported`.
    """
    if not is_antichain(x):
        raise ContractError(f"{x} is not a ⊆-antichain")
    vocab = x.vocabulary
    if not x.masks:
        d = realize_adf_supported(x)
    else:
        check_limit(len(vocab))
        formulas = {}
        for i, a in enumerate(vocab):
            disjuncts = []
            for m in sorted(x.masks):
                if m >> i & 1:
                    disjuncts.append(conj(*(Not(Atom(b)) for j, b in enumerate(vocab) if not m >> j & 1)))
            formulas[a] = disj(*disjuncts)
        d = Adf.from_formulas(formulas, vocab)
        _verify(adf_models(d), x, "canonical stable realization (models)")
    _verify(adf_stable_models(d), x, "canonical stable realization (stable models)")
    if not is_bipolar(d):
        raise RealizationError("canonical stable realization is not bipolar")
    return d


def count_realizations(n: int, m: int) -> int:
    """Number of ADFs over ``n`` statements having a given model set that omits ``m`` interpretations."""
    if n < 1:
        raise ContractError("n must be positive")
    if not 0 <= m <= 1 << n:
        raise ContractError(f"m must lie in [0, 2^{n}]")
    return ((1 << n) - 1) ** m


@dataclass(frozen=True)
class EncodingVarMap:
    """Fixed numbering of the encoding's variables.

    ``in(M,a)`` (C_a(M) is true) come first, ordered by statement index then
    subset bitmask; then ``sup(a,b)`` and ``att(a,b)`` in row-major pair order.
    """

    vocabulary: Vocabulary

    @property
    def n(self) -> int:
        return len(self.vocabulary)

    @property
    def num_vars(self) -> int:
        n = self.n
        return n * (1 << n) + 2 * n * n

    def var_in(self, mask: int, a: str) -> int:
        return self.vocabulary.index(a) * (1 << self.n) + mask + 1

    def var_sup(self, a: str, b: str) -> int:
        n = self.n
        return n * (1 << n) + self.vocabulary.index(a) * n + self.vocabulary.index(b) + 1

    def var_att(self, a: str, b: str) -> int:
        n = self.n
        return n * (1 << n) + n * n + self.vocabulary.index(a) * n + self.vocabulary.index(b) + 1

    def describe(self, var: int) -> str:
        n, atoms = self.n, self.vocabulary.atoms
        if not 1 <= var <= self.num_vars:
            raise ValueError(f"variable {var} out of range")
        k = var - 1
        if k < n << n:
            a, mask = divmod(k, 1 << n)
            members = ",".join(self.vocabulary.names_of(mask))
            return f"in({{{members}}},{atoms[a]})"
        k -= n << n
        kind = "sup" if k < n * n else "att"
        a, b = divmod(k % (n * n), n)
        return f"{kind}({atoms[a]},{atoms[b]})"


def encode_bipolar_realizability(x: ModelSet, limit: int = ENCODING_LIMIT) -> tuple[CnfInstance, EncodingVarMap]:
    """CNF that is satisfiable iff some bipolar ADF has exactly the models ``x``."""
    vocab = x.vocabulary
    check_limit(len(vocab), limit)
    vm = EncodingVarMap(vocab)
    n, atoms = len(vocab), vocab.atoms
    full = 1 << n
    clauses: list[list[int]] = []
    for m in sorted(x.masks):
        for i, a in enumerate(atoms):
            v = vm.var_in(m, a)
            clauses.append([v] if m >> i & 1 else [-v])
    for m in range(full):
        if m not in x.masks:
            clauses.append([-vm.var_in(m, a) if m >> i & 1 else vm.var_in(m, a) for i, a in enumerate(atoms)])
    for i, a in enumerate(atoms):
        for b in atoms:
            sup, att = vm.var_sup(a, b), vm.var_att(a, b)
            clauses.append([sup, att])
            lows = [m for m in range(full) if not m >> i & 1]
            for m in lows:
                clauses.append([-sup, -vm.var_in(m, b), vm.var_in(m | 1 << i, b)])
            for m in lows:
                clauses.append([-att, -vm.var_in(m | 1 << i, b), vm.var_in(m, b)])
    return CnfInstance(vm.num_vars, clauses), vm


def decide_bipolar_realizability(x: ModelSet) -> Adf | None:
    """A bipolar ADF realizing ``x`` under model semantics, or None if there is none.

    The witness is read off the satisfying assignment: all pairs are links
    and ``C_b(M)`` is the value of ``in(M,b)``.
    """
    cnf, vm = encode_bipolar_realizability(x)
    result = solve(cnf)
    if not result.satisfiable:
        return None
    vocab = x.vocabulary
    tables = []
    for b in vocab:
        t = 0
        for m in range(1 << len(vocab)):
            if result.assignment[vm.var_in(m, b)]:
                t |= 1 << m
        tables.append(t)
    d = Adf.from_tables(vocab, tables)
    _verify(adf_models(d), x, "bipolar realization")
    if not is_bipolar(d):
        raise RealizationError("extracted realization is not bipolar")
    return d
