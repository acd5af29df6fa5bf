"""Propositional formulas: AST, prefix syntax, evaluation and model enumeration."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Union

from .core import (
    ModelSet,
    ParseError,
    Interpretation,
    Vocabulary,
    VocabularyError,
    check_limit,
    parse_atoms_directive,
    strip_comment,
)


class Formula:
    __slots__ = ()

    def atoms(self) -> frozenset[str]:
        out: set[str] = set()
        _collect_atoms(self, out)
        return frozenset(out)

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True, repr=False)
class Atom(Formula):
    name: str

    def __repr__(self):
        return f"Atom({self.name!r})"


@dataclass(frozen=True, repr=False)
class Top(Formula):
    def __repr__(self):
        return "Top()"


@dataclass(frozen=True, repr=False)
class Bottom(Formula):
    def __repr__(self):
        return "Bottom()"


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Or(Formula):
    args: tuple[Formula, ...]


@dataclass(frozen=True)
class Xor(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


TOP = Top()
BOTTOM = Bottom()


def conj(*args: Formula) -> Formula:
    """Conjunction with nested conjunctions merged; ``conj()`` is TOP."""
    flat = []
    for f in args:
        flat.extend(f.args if isinstance(f, And) else (f,))
    if not flat:
        return TOP
    return flat[0] if len(flat) == 1 else And(tuple(flat))


def disj(*args: Formula) -> Formula:
    """Disjunction with nested disjunctions merged; ``disj()`` is BOTTOM."""
    flat = []
    for f in args:
        flat.extend(f.args if isinstance(f, Or) else (f,))
    if not flat:
        return BOTTOM
    return flat[0] if len(flat) == 1 else Or(tuple(flat))


def _collect_atoms(f: Formula, out: set[str]) -> None:
    if isinstance(f, Atom):
        out.add(f.name)
    elif isinstance(f, Not):
        _collect_atoms(f.arg, out)
    elif isinstance(f, (And, Or)):
        for g in f.args:
            _collect_atoms(g, out)
    elif isinstance(f, (Xor, Imp, Iff)):
        _collect_atoms(f.left, out)
        _collect_atoms(f.right, out)


def flatten(f: Formula) -> Formula:
    """Canonical form used for round-tripping: nested and/or merged, empty and/or as constants."""
    if isinstance(f, Not):
        return Not(flatten(f.arg))
    if isinstance(f, (And, Or)):
        kind = type(f)
        args: list[Formula] = []
        for g in f.args:
            g = flatten(g)
            if isinstance(g, kind):
                args.extend(g.args)
            else:
                args.append(g)
        if not args:
            return TOP if kind is And else BOTTOM
        return kind(tuple(args))
    if isinstance(f, (Xor, Imp, Iff)):
        return type(f)(flatten(f.left), flatten(f.right))
    return f


def substitute(f: Formula, mapping: dict[str, Formula]) -> Formula:
    if isinstance(f, Atom):
        return mapping.get(f.name, f)
    if isinstance(f, Not):
        return Not(substitute(f.arg, mapping))
    if isinstance(f, (And, Or)):
        return type(f)(tuple(substitute(g, mapping) for g in f.args))
    if isinstance(f, (Xor, Imp, Iff)):
        return type(f)(substitute(f.left, mapping), substitute(f.right, mapping))
    return f


# --- evaluation ---------------------------------------------------------------


def _eval(f: Formula, true: Callable[[str], bool]) -> bool:
    if isinstance(f, Atom):
        return true(f.name)
    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Not):
        return not _eval(f.arg, true)
    if isinstance(f, And):
        return all(_eval(g, true) for g in f.args)
    if isinstance(f, Or):
        return any(_eval(g, true) for g in f.args)
    left = _eval(f.left, true)
    right = _eval(f.right, true)
    if isinstance(f, Xor):
        return left != right
    if isinstance(f, Imp):
        return (not left) or right
    if isinstance(f, Iff):
        return left == right
    raise TypeError(f"not a formula: {f!r}")


def evaluate(f: Formula, interpretation: Interpretation) -> bool:
    vocab = interpretation.vocabulary
    missing = f.atoms() - set(vocab.atoms)
    if missing:
        raise VocabularyError(f"atoms {sorted(missing)} are not in the vocabulary {list(vocab.atoms)}")
    return _eval(f, interpretation.__contains__)


def compile_formula(f: Formula, vocabulary: Vocabulary) -> Callable[[int], bool]:
    """Return a predicate on bitmasks over ``vocabulary``."""
    bits = {a: vocabulary.bit(a) for a in f.atoms()}

    def predicate(mask: int) -> bool:
        return _eval(f, lambda a: bool(mask & bits[a]))

    return predicate


@dataclass(frozen=True)
class Theory:
    """A finite set of formulas over a shared vocabulary; its models satisfy every member."""

    vocabulary: Vocabulary
    formulas: tuple[Formula, ...]

    def __post_init__(self):
        used = set().union(*(f.atoms() for f in self.formulas)) if self.formulas else set()
        missing = used - set(self.vocabulary.atoms)
        if missing:
            raise VocabularyError(f"theory mentions atoms outside its vocabulary: {sorted(missing)}")


def models(f: Union[Formula, Theory], vocabulary: Vocabulary | None = None, limit: int | None = None) -> ModelSet:
    """All interpretations over the vocabulary satisfying ``f`` (every member, for a theory)."""
    if isinstance(f, Theory):
        vocabulary = f.vocabulary if vocabulary is None else vocabulary
        formulas = f.formulas
    else:
        if vocabulary is None:
            vocabulary = Vocabulary(sorted(f.atoms()))
        formulas = (f,)
    check_limit(len(vocabulary), limit)
    preds = [compile_formula(g, vocabulary) for g in formulas]
    return ModelSet(vocabulary, (m for m in range(1 << len(vocabulary)) if all(p(m) for p in preds)))


def minterm(vocabulary: Vocabulary, mask: int) -> Formula:
    """The conjunction fixing every atom: positive inside ``mask``, negated outside."""
    lits: list[Formula] = []
    for i, a in enumerate(vocabulary.atoms):
        lits.append(Atom(a) if mask >> i & 1 else Not(Atom(a)))
    return conj(*lits)


def realizer_formula(x: ModelSet) -> Formula:
    """Disjunction of one minterm per model; its models are exactly ``x``."""
    return disj(*(minterm(x.vocabulary, m) for m in sorted(x.masks)))


def equivalent(f: Formula, g: Formula, vocabulary: Vocabulary | None = None) -> bool:
    if vocabulary is None:
        vocabulary = Vocabulary(sorted(f.atoms() | g.atoms()))
    return models(f, vocabulary) == models(g, vocabulary)


# --- concrete syntax ------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:([a-z][a-zA-Z0-9_]*)|(\()|(\))|(,))")
_BINARY = {"xor": Xor, "imp": Imp, "iff": Iff}
_NARY = {"and": And, "or": Or}


class _Parser:
    def __init__(self, text: str, line: int | None):
        self.text = text
        self.pos = 0
        self.line = line

    def error(self, msg: str):
        raise ParseError(msg, self.line, self.pos + 1)

    def peek(self) -> str | None:
        m = _TOKEN_RE.match(self.text, self.pos)
        if not m:
            return None
        return m.group(m.lastindex)

    def take(self, expected: str | None = None) -> str:
        m = _TOKEN_RE.match(self.text, self.pos)
        if not m:
            rest = self.text[self.pos :].strip()
            self.error(f"unexpected {rest[:1]!r}" if rest else "unexpected end of input")
        tok = m.group(m.lastindex)
        if expected is not None and tok != expected:
            self.pos = m.start(m.lastindex)
            self.error(f"expected {expected!r}, got {tok!r}")
        self.pos = m.end()
        return tok

    def formula(self) -> Formula:
        start = self.pos
        tok = self.take()
        if tok in "(),":
            self.pos = start
            self.error(f"unexpected {tok!r}")
        if self.peek() != "(":
            if tok == "verum":
                return TOP
            if tok == "falsum":
                return BOTTOM
            return Atom(tok)
        self.take("(")
        if tok == "neg":
            arg = self.formula()
            self.take(")")
            return Not(arg)
        if tok in _BINARY:
            left = self.formula()
            self.take(",")
            right = self.formula()
            self.take(")")
            return _BINARY[tok](left, right)
        if tok in _NARY:
            args = [self.formula()]
            while self.peek() == ",":
                self.take(",")
                args.append(self.formula())
            self.take(")")
            return _NARY[tok](tuple(args))
        self.pos = start
        self.error(f"unknown connective {tok!r}")


def parse_formula(text: str, line: int | None = None) -> Formula:
    p = _Parser(text, line)
    f = p.formula()
    if p.text[p.pos :].strip():
        p.pos += len(p.text[p.pos :]) - len(p.text[p.pos :].lstrip())
        p.error(f"trailing input {p.text[p.pos:]!r}")
    return flatten(f)


def print_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "verum"
    if isinstance(f, Bottom):
        return "falsum"
    if isinstance(f, Not):
        return f"neg({print_formula(f.arg)})"
    if isinstance(f, (And, Or)):
        if not f.args:
            return "verum" if isinstance(f, And) else "falsum"
        name = "and" if isinstance(f, And) else "or"
        return f"{name}({','.join(print_formula(g) for g in f.args)})"
    name = {Xor: "xor", Imp: "imp", Iff: "iff"}[type(f)]
    return f"{name}({print_formula(f.left)},{print_formula(f.right)})"


def parse_theory(text: str, vocabulary: Vocabulary | None = None) -> Theory:
    """One formula per line; an optional ``atoms:`` line fixes the vocabulary."""
    declared: list[str] | None = None
    formulas: list[Formula] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue
        atoms = parse_atoms_directive(line, lineno)
        if atoms is not None:
            declared = (declared or []) + atoms
            continue
        formulas.append(parse_formula(line, lineno))
    if vocabulary is None:
        used: set[str] = set().union(*(f.atoms() for f in formulas)) if formulas else set()
        vocabulary = Vocabulary(dict.fromkeys((declared or []) + sorted(used - set(declared or []))))
    return Theory(vocabulary, tuple(formulas))


def format_theory(theory: Theory) -> str:
    used: set[str] = set().union(*(f.atoms() for f in theory.formulas)) if theory.formulas else set()
    lines = []
    if set(theory.vocabulary.atoms) - used:
        lines.append("atoms: " + ",".join(theory.vocabulary.atoms))
    lines.extend(print_formula(f) for f in theory.formulas)
    return "\n".join(lines) + "\n" if lines else ""

