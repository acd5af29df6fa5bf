"""Normal logic programs: supported models, the Gelfond-Lifschitz reduct and stable models."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .core import (
    ATOM_RE,
    ContractError,
    Interpretation,
    ModelSet,
    ParseError,
    Vocabulary,
    VocabularyError,
    check_limit,
    parse_atoms_directive,
    strip_comment,
)


@dataclass(frozen=True)
class Rule:
    head: str
    pos: frozenset[str] = frozenset()
    neg: frozenset[str] = frozenset()

    def __init__(self, head: str, pos: Iterable[str] = (), neg: Iterable[str] = ()):
        object.__setattr__(self, "head", head)
        object.__setattr__(self, "pos", frozenset(pos))
        object.__setattr__(self, "neg", frozenset(neg))

    @property
    def definite(self) -> bool:
        return not self.neg

    def atoms(self) -> frozenset[str]:
        return self.pos | self.neg | {self.head}

    def __str__(self) -> str:
        body = sorted(self.pos) + [f"not {b}" for b in sorted(self.neg)]
        return f"{self.head} :- {', '.join(body)}." if body else f"{self.head}."


@dataclass(frozen=True)
class LogicProgram:
    vocabulary: Vocabulary
    rules: frozenset[Rule]

    def __init__(self, rules: Iterable[Rule] = (), vocabulary: Vocabulary | Iterable[str] | None = None):
        rules = frozenset(rules)
        used = set().union(*(r.atoms() for r in rules)) if rules else set()
        if vocabulary is None:
            vocabulary = Vocabulary(sorted(used))
        elif not isinstance(vocabulary, Vocabulary):
            vocabulary = Vocabulary(vocabulary)
        missing = used - set(vocabulary.atoms)
        if missing:
            raise VocabularyError(f"rules mention atoms outside the vocabulary: {sorted(missing)}")
        object.__setattr__(self, "vocabulary", vocabulary)
        object.__setattr__(self, "rules", rules)

    @property
    def definite(self) -> bool:
        return all(r.definite for r in self.rules)

    def sorted_rules(self) -> list[Rule]:
        idx = self.vocabulary.index
        return sorted(self.rules, key=lambda r: (idx(r.head), sorted(map(idx, r.pos)), sorted(map(idx, r.neg))))

    def _compiled(self) -> list[tuple[int, int, int]]:
        v = self.vocabulary
        return [(v.bit(r.head), v.mask_of(r.pos), v.mask_of(r.neg)) for r in self.rules]


def _check(p: LogicProgram, m: Interpretation) -> None:
    if m.vocabulary != p.vocabulary:
        raise VocabularyError("interpretation is over a different vocabulary than the program")


def active_rules(p: LogicProgram, m: Interpretation) -> frozenset[Rule]:
    """Rules whose positive body holds in ``m`` and whose negative body is false in ``m``."""
    _check(p, m)
    names = m.names()
    return frozenset(r for r in p.rules if r.pos <= names and not (r.neg & names))


def _active_heads(compiled, mask: int) -> int:
    heads = 0
    for head, pos, neg in compiled:
        if pos & ~mask == 0 and neg & mask == 0:
            heads |= head
    return heads


def supported_models(p: LogicProgram, limit: int | None = None) -> ModelSet:
    check_limit(len(p.vocabulary), limit)
    compiled = p._compiled()
    return ModelSet(p.vocabulary, (m for m in range(1 << len(p.vocabulary)) if _active_heads(compiled, m) == m))


def gl_reduct(p: LogicProgram, m: Interpretation) -> LogicProgram:
    """Drop rules blocked by ``m`` and strip negative literals from the rest."""
    _check(p, m)
    names = m.names()
    return LogicProgram((Rule(r.head, r.pos) for r in p.rules if not (r.neg & names)), p.vocabulary)


def _least_mask(compiled) -> int:
    derived = 0
    while True:
        nxt = derived
        for head, pos, _ in compiled:
            if pos & ~derived == 0:
                nxt |= head
        if nxt == derived:
            return derived
        derived = nxt


def least_model(p: LogicProgram) -> Interpretation:
    if not p.definite:
        raise ContractError("least_model requires a definite program")
    return Interpretation(p.vocabulary, _least_mask(p._compiled()))


def stable_models(p: LogicProgram, limit: int | None = None) -> ModelSet:
    """Interpretations equal to the least model of their reduct (guess and check)."""
    check_limit(len(p.vocabulary), limit)
    compiled = p._compiled()
    found = []
    for m in range(1 << len(p.vocabulary)):
        reduct = [(h, pos, 0) for h, pos, neg in compiled if neg & m == 0]
        if _least_mask(reduct) == m:
            found.append(m)
    return ModelSet(p.vocabulary, found)


# --- text format --------------------------------------------------------------------

_RULE_RE = re.compile(r"\s*([^:]+?)\s*(?::-\s*(.*?))?\s*\Z", re.S)


def _atom(name: str, lineno: int) -> str:
    if not ATOM_RE.fullmatch(name) or name == "not":
        raise ParseError(f"invalid atom {name!r}", lineno)
    return name


def parse_lp(text: str) -> LogicProgram:
    """Read rules like ``a :- b, not c.`` and facts ``a.``; one rule per line."""
    declared: list[str] = []
    rules: list[Rule] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue
        atoms = parse_atoms_directive(line, lineno)
        if atoms is not None:
            declared.extend(atoms)
            continue
        if not line.endswith("."):
            raise ParseError(f"rule must end with '.': {line!r}", lineno)
        m = _RULE_RE.match(line[:-1])
        if not m:
            raise ParseError(f"malformed rule {line!r}", lineno)
        head = _atom(m.group(1), lineno)
        pos, neg = [], []
        body = m.group(2)
        if body is not None:
            if not body.strip():
                raise ParseError("empty rule body after ':-'", lineno)
            for lit in body.split(","):
                lit = lit.strip()
                if lit == "not":
                    raise ParseError("'not' needs an atom", lineno)
                if lit.startswith("not "):
                    neg.append(_atom(lit[4:].strip(), lineno))
                else:
                    pos.append(_atom(lit, lineno))
        rules.append(Rule(head, pos, neg))
    used = set().union(*(r.atoms() for r in rules)) if rules else set()
    vocab = Vocabulary(dict.fromkeys(declared + sorted(used - set(declared))))
    return LogicProgram(rules, vocab)


def format_lp(p: LogicProgram) -> str:
    used = set().union(*(r.atoms() for r in p.rules)) if p.rules else set()
    lines = []
    if set(p.vocabulary.atoms) - used:
        lines.append("atoms: " + ",".join(p.vocabulary.atoms))
    lines.extend(str(r) for r in p.sorted_rules())
    return "\n".join(lines) + "\n" if lines else ""
