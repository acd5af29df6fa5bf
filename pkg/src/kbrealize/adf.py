"""Abstract dialectical frameworks.

Acceptance conditions are truth tables keyed by parent-subset bitmasks: row
``r`` of the condition of ``a`` lists the parents of ``a`` (in vocabulary
order) whose bits are set in ``r``.  Formulas are kept alongside as an
optional source representation.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .core import (
    ATOM_RE,
    ContractError,
    Interpretation,
    ModelSet,
    ParseError,
    Vocabulary,
    VocabularyError,
    check_limit,
)
from .proplogic import (
    BOTTOM,
    TOP,
    Atom,
    Formula,
    compile_formula,
    conj,
    disj,
    Not,
    parse_formula,
    print_formula,
    substitute,
)

SUBCUBE_LIMIT = 20


@dataclass(frozen=True)
class AcceptanceCondition:
    """A total Boolean function on the subsets of ``parents``.

    ``table`` has bit ``r`` set iff the condition is true on parent subset ``r``.
    """

    parents: tuple[str, ...]
    table: int
    formula: Formula | None = None

    def __post_init__(self):
        if len(set(self.parents)) != len(self.parents):
            raise VocabularyError("duplicate parents")
        rows = 1 << len(self.parents)
        if self.table < 0 or self.table >> rows:
            raise ValueError(f"table {self.table:#x} does not fit {rows} rows")

    @classmethod
    def from_formula(cls, formula: Formula, parents: Iterable[str] | None = None) -> AcceptanceCondition:
        if parents is None:
            parents = sorted(formula.atoms())
        parents = tuple(parents)
        extra = formula.atoms() - set(parents)
        if extra:
            raise VocabularyError(f"formula mentions non-parents {sorted(extra)}")
        local = Vocabulary(parents)
        pred = compile_formula(formula, local)
        # local vocabulary is sorted; translate to the given parent order
        perm = [local.index(p) for p in parents]
        table = 0
        for r in range(1 << len(parents)):
            lm = 0
            for i, j in enumerate(perm):
                if r >> i & 1:
                    lm |= 1 << j
            if pred(lm):
                table |= 1 << r
        return cls(parents, table, formula)

    @classmethod
    def from_function(cls, parents: Iterable[str], fn: Callable[[frozenset[str]], bool]) -> AcceptanceCondition:
        parents = tuple(parents)
        table = 0
        for r in range(1 << len(parents)):
            if fn(frozenset(p for i, p in enumerate(parents) if r >> i & 1)):
                table |= 1 << r
        return cls(parents, table)

    def value(self, accepted: Iterable[str]) -> bool:
        """C(R) for a set of accepted statements; non-parents are ignored."""
        acc = set(accepted)
        r = 0
        for i, p in enumerate(self.parents):
            if p in acc:
                r |= 1 << i
        return bool(self.table >> r & 1)

    def row(self, r: int) -> bool:
        return bool(self.table >> r & 1)

    def to_formula(self) -> Formula:
        """The source formula if present, else a DNF of the true rows."""
        if self.formula is not None:
            return self.formula
        n = len(self.parents)
        if self.table == 0:
            return BOTTOM
        if self.table == (1 << (1 << n)) - 1:
            return TOP
        terms = []
        for r in range(1 << n):
            if self.table >> r & 1:
                terms.append(conj(*(Atom(p) if r >> i & 1 else Not(Atom(p)) for i, p in enumerate(self.parents))))
        return disj(*terms)


class Polarity(enum.Enum):
    SUPPORTING = "supporting"
    ATTACKING = "attacking"
    BOTH = "both"
    NEITHER = "neither"


@dataclass(frozen=True)
class PartialPair:
    """Accepted/rejected statements of a partial interpretation."""

    accepted: Interpretation
    rejected: Interpretation

    @property
    def consistent(self) -> bool:
        return self.accepted.mask & self.rejected.mask == 0


class Adf:
    """An ADF ``(statements, links, conditions)``; immutable after construction."""

    __slots__ = ("statements", "links", "conditions", "_parent_bits", "_tables")

    def __init__(
        self,
        statements: Vocabulary | Iterable[str],
        conditions: Mapping[str, AcceptanceCondition],
    ):
        if not isinstance(statements, Vocabulary):
            statements = Vocabulary(statements)
        if set(conditions) != set(statements.atoms):
            raise VocabularyError("need exactly one acceptance condition per statement")
        conds = {}
        links = set()
        for a in statements:
            c = conditions[a]
            for p in c.parents:
                if p not in statements:
                    raise VocabularyError(f"parent {p!r} of {a!r} is not a statement")
            # canonical parent order is vocabulary order
            if list(c.parents) != sorted(c.parents, key=statements.index):
                c = _reorder(c, sorted(c.parents, key=statements.index))
            conds[a] = c
            links.update((p, a) for p in c.parents)
        object.__setattr__(self, "statements", statements)
        object.__setattr__(self, "links", frozenset(links))
        object.__setattr__(self, "conditions", conds)
        object.__setattr__(self, "_parent_bits", tuple(tuple(statements.bit(p) for p in conds[a].parents) for a in statements))
        object.__setattr__(self, "_tables", tuple(conds[a].table for a in statements))

    def __setattr__(self, name, value):
        raise AttributeError("Adf is immutable")

    @classmethod
    def from_formulas(
        cls,
        formulas: Mapping[str, Formula],
        statements: Vocabulary | Iterable[str] | None = None,
        links: Iterable[tuple[str, str]] = (),
    ) -> Adf:
        """Build an ADF whose links are the atoms of each formula plus any explicit ``links``."""
        if statements is None:
            statements = Vocabulary(formulas)
        elif not isinstance(statements, Vocabulary):
            statements = Vocabulary(statements)
        extra: dict[str, set[str]] = {a: set() for a in statements}
        for b, a in links:
            if a not in extra or b not in statements:
                raise VocabularyError(f"link ({b},{a}) mentions an unknown statement")
            extra[a].add(b)
        conds = {}
        for a in statements:
            f = formulas[a]
            parents = sorted(f.atoms() | extra[a], key=statements.index)
            conds[a] = AcceptanceCondition.from_formula(f, parents)
        return cls(statements, conds)

    @classmethod
    def from_tables(cls, statements: Vocabulary, tables: Iterable[int]) -> Adf:
        """Full-link ADF: every statement has all statements as parents, row = global bitmask."""
        parents = statements.atoms
        return cls(statements, {a: AcceptanceCondition(parents, t) for a, t in zip(statements, tables)})

    def parents(self, a: str) -> tuple[str, ...]:
        return self.conditions[a].parents

    def condition_at(self, i: int, mask: int) -> bool:
        """C_a(mask ∩ par(a)) for the ``i``-th statement and a global bitmask."""
        r = 0
        for j, bit in enumerate(self._parent_bits[i]):
            if mask & bit:
                r |= 1 << j
        return bool(self._tables[i] >> r & 1)

    def is_model_mask(self, mask: int) -> bool:
        for i in range(len(self.statements)):
            if bool(mask >> i & 1) != self.condition_at(i, mask):
                return False
        return True

    def __eq__(self, other):
        if not isinstance(other, Adf):
            return NotImplemented
        return self.statements == other.statements and all(
            self.conditions[a].parents == other.conditions[a].parents
            and self.conditions[a].table == other.conditions[a].table
            for a in self.statements
        )

    def __hash__(self):
        return hash((self.statements, self._tables, tuple(self.conditions[a].parents for a in self.statements)))

    def __repr__(self):
        conds = ", ".join(f"{a}: {print_formula(self.conditions[a].to_formula())}" for a in self.statements)
        return f"Adf({{{conds}}})"


def _reorder(c: AcceptanceCondition, parents: list[str]) -> AcceptanceCondition:
    pos = {p: i for i, p in enumerate(c.parents)}
    table = 0
    for r in range(1 << len(parents)):
        old = 0
        for i, p in enumerate(parents):
            if r >> i & 1:
                old |= 1 << pos[p]
        if c.table >> old & 1:
            table |= 1 << r
    return AcceptanceCondition(tuple(parents), table, c.formula)


# --- semantics ----------------------------------------------------------------------


def adf_models(d: Adf, limit: int | None = None) -> ModelSet:
    """All M with ``a in M`` iff ``C_a(M ∩ par(a))`` for every statement ``a``."""
    check_limit(len(d.statements), limit)
    return ModelSet(d.statements, (m for m in range(1 << len(d.statements)) if d.is_model_mask(m)))


def adf_reduct(d: Adf, m: Interpretation) -> Adf:
    """Restrict ``d`` to the statements in ``m``, fixing all others to false."""
    if m.vocabulary != d.statements:
        raise VocabularyError("interpretation is over a different vocabulary than the ADF")
    keep = m.names()
    sub = d.statements.restrict(keep)
    conds = {}
    for a in sub:
        c = d.conditions[a]
        kept = [i for i, p in enumerate(c.parents) if p in keep]
        table = 0
        for r in range(1 << len(kept)):
            old = 0
            for j, i in enumerate(kept):
                if r >> j & 1:
                    old |= 1 << i
            if c.table >> old & 1:
                table |= 1 << r
        formula = None
        if c.formula is not None:
            formula = substitute(c.formula, {p: BOTTOM for p in c.parents if p not in keep})
        conds[a] = AcceptanceCondition(tuple(c.parents[i] for i in kept), table, formula)
    return Adf(sub, conds)


def _subsets(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _uniform(d: Adf, i: int, q: int, free: int, value: bool) -> bool:
    """Whether C_i(Z) == value for every Z with q ⊆ Z ⊆ q ∪ free."""
    free &= _parent_mask(d, i)
    if bin(free).count("1") > SUBCUBE_LIMIT:
        raise ContractError(f"undecided parent subcube exceeds {SUBCUBE_LIMIT} bits")
    for sub in _subsets(free):
        if d.condition_at(i, q | sub) != value:
            return False
    return True


def _parent_mask(d: Adf, i: int) -> int:
    out = 0
    for bit in d._parent_bits[i]:
        out |= bit
    return out


def _gamma(d: Adf, q: int, r: int) -> tuple[int, int]:
    free = d.statements.full_mask & ~(q | r)
    acc = rej = 0
    for i in range(len(d.statements)):
        if _uniform(d, i, q, free, True):
            acc |= 1 << i
        elif _uniform(d, i, q, free, False):
            rej |= 1 << i
    return acc, rej


def gamma_step(d: Adf, pair: PartialPair) -> PartialPair:
    """One application of the acc/rej refinement operator."""
    v = d.statements
    if pair.accepted.vocabulary != v or pair.rejected.vocabulary != v:
        raise VocabularyError("pair is over a different vocabulary than the ADF")
    if not pair.consistent:
        raise ContractError("gamma_step needs a consistent pair (accepted ∩ rejected = ∅)")
    acc, rej = _gamma(d, pair.accepted.mask, pair.rejected.mask)
    return PartialPair(Interpretation(v, acc), Interpretation(v, rej))


def gamma_lfp(d: Adf) -> PartialPair:
    """Least fixpoint of the operator by iteration from (∅, ∅)."""
    q = r = 0
    while True:
        nq, nr = _gamma(d, q, r)
        if (nq, nr) == (q, r):
            v = d.statements
            return PartialPair(Interpretation(v, q), Interpretation(v, r))
        q, r = nq, nr


def is_stable_mask(d: Adf, m: int) -> bool:
    if not d.is_model_mask(m):
        return False
    lfp = gamma_lfp(adf_reduct(d, Interpretation(d.statements, m)))
    return lfp.accepted.mask == lfp.accepted.vocabulary.full_mask and lfp.rejected.mask == 0


def adf_stable_models(d: Adf, limit: int | None = None) -> ModelSet:
    """Models M whose reduct has least fixpoint (M, ∅)."""
    check_limit(len(d.statements), limit)
    return ModelSet(d.statements, (m for m in range(1 << len(d.statements)) if is_stable_mask(d, m)))


def link_polarity(d: Adf, b: str, a: str) -> Polarity:
    if (b, a) not in d.links:
        raise ContractError(f"({b},{a}) is not a link")
    c = d.conditions[a]
    j = c.parents.index(b)
    bit = 1 << j
    supporting = attacking = True
    for r in range(1 << len(c.parents)):
        if r & bit:
            continue
        lo, hi = c.row(r), c.row(r | bit)
        if lo and not hi:
            supporting = False
        if hi and not lo:
            attacking = False
    if supporting and attacking:
        return Polarity.BOTH
    if supporting:
        return Polarity.SUPPORTING
    if attacking:
        return Polarity.ATTACKING
    return Polarity.NEITHER


def is_bipolar(d: Adf) -> bool:
    return all(link_polarity(d, b, a) is not Polarity.NEITHER for b, a in d.links)


# --- text format ------------------------------------------------------------------

_STMT_RE = re.compile(r"\s*(statement|ac|link)\s*\((.*)\)\s*\Z", re.S)


def _statements_of(text: str):
    """Split on the terminating '.' of each fact, tracking line numbers."""
    buf = []
    start = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].split("#", 1)[0]
        for ch in line:
            if ch == ".":
                yield start or lineno, "".join(buf)
                buf, start = [], None
            else:
                if start is None and not ch.isspace():
                    start = lineno
                buf.append(ch)
        buf.append(" ")
    if "".join(buf).strip():
        raise ParseError("missing final '.'", start)


def parse_adf(text: str) -> Adf:
    """Read ``statement(a).``, ``ac(a, <formula>).`` and optional ``link(b,a).`` facts."""
    statements: list[str] = []
    acs: dict[str, Formula] = {}
    links: list[tuple[str, str]] = []
    for lineno, stmt in _statements_of(text):
        m = _STMT_RE.match(stmt)
        if not m:
            raise ParseError(f"expected statement/ac/link fact, got {stmt.strip()!r}", lineno)
        kind, body = m.group(1), m.group(2)
        if kind == "statement":
            name = body.strip()
            if not ATOM_RE.match(name):
                raise ParseError(f"invalid statement name {name!r}", lineno)
            if name not in statements:
                statements.append(name)
        elif kind == "ac":
            name, sep, ftext = body.partition(",")
            name = name.strip()
            if not sep or not ATOM_RE.match(name):
                raise ParseError("expected ac(<statement>, <formula>)", lineno)
            if name in acs:
                raise ParseError(f"duplicate acceptance condition for {name!r}", lineno)
            acs[name] = parse_formula(ftext, lineno)
        else:
            parts = [t.strip() for t in body.split(",")]
            if len(parts) != 2 or not all(ATOM_RE.match(t) for t in parts):
                raise ParseError("expected link(<from>, <to>)", lineno)
            links.append((parts[0], parts[1]))
    declared = set(statements)
    for name, f in acs.items():
        if name not in declared:
            raise ParseError(f"acceptance condition for undeclared statement {name!r}")
        bad = f.atoms() - declared
        if bad:
            raise ParseError(f"condition of {name!r} mentions undeclared statements {sorted(bad)}")
    missing = declared - set(acs)
    if missing:
        raise ParseError(f"no acceptance condition for {sorted(missing)}")
    for b, a in links:
        if a not in declared or b not in declared:
            raise ParseError(f"link({b},{a}) mentions an undeclared statement")
    return Adf.from_formulas(acs, Vocabulary(statements), links)


def format_adf(d: Adf) -> str:
    lines = [f"statement({a})." for a in d.statements]
    for a in d.statements:
        c = d.conditions[a]
        f = c.to_formula()
        lines.append(f"ac({a},{print_formula(f)}).")
    for a in d.statements:
        c = d.conditions[a]
        implicit = c.to_formula().atoms()
        lines.extend(f"link({b},{a})." for b in c.parents if b not in implicit)
    return "\n".join(lines) + "\n" if lines else ""
