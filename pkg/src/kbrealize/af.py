"""Dung-style argumentation frameworks under stable extension semantics."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .core import (
    ATOM_RE,
    Interpretation,
    ModelSet,
    ParseError,
    Vocabulary,
    VocabularyError,
    check_limit,
)


@dataclass(frozen=True)
class Af:
    arguments: Vocabulary
    attacks: frozenset[tuple[str, str]]

    def __init__(self, arguments: Iterable[str] | Vocabulary, attacks: Iterable[tuple[str, str]] = ()):
        if not isinstance(arguments, Vocabulary):
            arguments = Vocabulary(arguments)
        attacks = frozenset((a, b) for a, b in attacks)
        for a, b in attacks:
            if a not in arguments or b not in arguments:
                raise VocabularyError(f"attack ({a},{b}) mentions an undeclared argument")
        object.__setattr__(self, "arguments", arguments)
        object.__setattr__(self, "attacks", attacks)

    def attacker_masks(self) -> list[int]:
        """``out[i]`` is the bitmask of arguments attacking argument ``i``."""
        out = [0] * len(self.arguments)
        for a, b in self.attacks:
            out[self.arguments.index(b)] |= self.arguments.bit(a)
        return out


def _conflict_free(attackers: list[int], s: int) -> bool:
    for i, att in enumerate(attackers):
        if s >> i & 1 and att & s:
            return False
    return True


def is_conflict_free(af: Af, s: Interpretation) -> bool:
    if s.vocabulary != af.arguments:
        raise VocabularyError("extension is over a different vocabulary than the framework")
    return _conflict_free(af.attacker_masks(), s.mask)


def stable_extensions(af: Af, limit: int | None = None) -> ModelSet:
    """All conflict-free sets that attack every argument outside them."""
    n = len(af.arguments)
    check_limit(n, limit)
    attackers = af.attacker_masks()
    found = []
    for s in range(1 << n):
        ok = True
        for i, att in enumerate(attackers):
            hit = att & s
            if (s >> i & 1) == bool(hit):
                # inside and attacked, or outside and unattacked
                ok = False
                break
        if ok:
            found.append(s)
    return ModelSet(af.arguments, found)


# --- ASPARTIX-style text format -------------------------------------------------

_FACT_RE = re.compile(r"\s*(arg|att)\s*\(([^()]*)\)\s*\Z")


def parse_af(text: str) -> Af:
    """Read ``arg(a).`` / ``att(a,b).`` facts; ``%`` and ``#`` start comments."""
    args: list[str] = []
    atts: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].split("#", 1)[0]
        stmts = line.split(".")
        if stmts[-1].strip():
            raise ParseError(f"fact must end with '.': {stmts[-1].strip()!r}", lineno)
        for stmt in stmts[:-1]:
            if not stmt.strip():
                continue
            m = _FACT_RE.match(stmt)
            if not m:
                raise ParseError(f"expected arg(..) or att(..,..), got {stmt.strip()!r}", lineno)
            names = [t.strip() for t in m.group(2).split(",")]
            for name in names:
                if not ATOM_RE.match(name):
                    raise ParseError(f"invalid argument name {name!r}", lineno)
            if m.group(1) == "arg":
                if len(names) != 1:
                    raise ParseError("arg/1 takes exactly one argument", lineno)
                if names[0] not in args:
                    args.append(names[0])
            else:
                if len(names) != 2:
                    raise ParseError("att/2 takes exactly two arguments", lineno)
                atts.append((names[0], names[1]))
    declared = set(args)
    for a, b in atts:
        for name in (a, b):
            if name not in declared:
                raise ParseError(f"attack mentions undeclared argument {name!r}")
    return Af(args, atts)


def format_af(af: Af) -> str:
    lines = [f"arg({a})." for a in af.arguments]
    order = {a: i for i, a in enumerate(af.arguments)}
    for a, b in sorted(af.attacks, key=lambda p: (order[p[0]], order[p[1]])):
        lines.append(f"att({a},{b}).")
    return "\n".join(lines) + "\n" if lines else ""
