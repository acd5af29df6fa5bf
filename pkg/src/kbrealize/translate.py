"""Vocabulary-preserving translations between AFs, ADFs, logic programs and PL."""

from __future__ import annotations

from .adf import Adf, AcceptanceCondition
from .af import Af
from .core import ContractError
from .lp import LogicProgram, Rule
from .proplogic import Atom, Formula, Iff, Not, Theory, conj, disj

ROW_LIMIT = 1 << 16


def af_to_adf(af: Af) -> Adf:
    """Each argument is accepted iff none of its attackers is."""
    formulas = {}
    for a in af.arguments:
        attackers = sorted((b for b, t in af.attacks if t == a), key=af.arguments.index)
        formulas[a] = conj(*(Not(Atom(b)) for b in attackers))
    return Adf.from_formulas(formulas, af.arguments)


def adf_to_pl(d: Adf) -> Theory:
    return Theory(d.statements, tuple(Iff(Atom(a), d.conditions[a].to_formula()) for a in d.statements))


def adf_to_lp(d: Adf, row_limit: int = ROW_LIMIT) -> LogicProgram:
    """One rule per true row: ``a :- M, not (par(a) \\ M)``."""
    total = sum(1 << len(d.parents(a)) for a in d.statements)
    if total > row_limit:
        raise ContractError(f"ADF has {total} condition rows, above the limit of {row_limit}")
    rules = []
    for a in d.statements:
        c: AcceptanceCondition = d.conditions[a]
        for r in range(1 << len(c.parents)):
            if c.row(r):
                pos = [p for i, p in enumerate(c.parents) if r >> i & 1]
                neg = [p for i, p in enumerate(c.parents) if not r >> i & 1]
                rules.append(Rule(a, pos, neg))
    return LogicProgram(rules, d.statements)


def completion_formula(p: LogicProgram, a: str) -> Formula:
    idx = p.vocabulary.index
    bodies = []
    for r in p.sorted_rules():
        if r.head != a:
            continue
        lits = [Atom(b) for b in sorted(r.pos, key=idx)] + [Not(Atom(b)) for b in sorted(r.neg, key=idx)]
        bodies.append(conj(*lits))
    return disj(*bodies)


def clark_completion_pl(p: LogicProgram) -> Theory:
    """``a <-> (disjunction of bodies of a)`` for every atom; atoms without rules get ``a <-> falsum``."""
    return Theory(p.vocabulary, tuple(Iff(Atom(a), completion_formula(p, a)) for a in p.vocabulary))


def lp_to_adf(p: LogicProgram) -> Adf:
    return Adf.from_formulas({a: completion_formula(p, a) for a in p.vocabulary}, p.vocabulary)


def af_to_lp(af: Af) -> LogicProgram:
    return adf_to_lp(af_to_adf(af))


def af_to_pl(af: Af) -> Theory:
    return adf_to_pl(af_to_adf(af))
