"""A small complete DPLL solver and DIMACS CNF reading/writing."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import ParseError


@dataclass(frozen=True)
class CnfInstance:
    num_vars: int
    clauses: tuple[tuple[int, ...], ...]

    def __init__(self, num_vars: int, clauses: Iterable[Sequence[int]] = ()):
        clauses = tuple(tuple(c) for c in clauses)
        if num_vars < 0:
            raise ValueError("variable count must be nonnegative")
        for c in clauses:
            for lit in c:
                if lit == 0 or abs(lit) > num_vars:
                    raise ValueError(f"literal {lit} out of range for {num_vars} variables")
        object.__setattr__(self, "num_vars", num_vars)
        object.__setattr__(self, "clauses", clauses)


@dataclass(frozen=True)
class SatResult:
    satisfiable: bool
    assignment: dict[int, bool] | None = None

    def __bool__(self) -> bool:
        return self.satisfiable

    def true_vars(self) -> list[int]:
        return sorted(v for v, b in (self.assignment or {}).items() if b)


UNSAT = SatResult(False)


def check_assignment(cnf: CnfInstance, assignment: dict[int, bool]) -> bool:
    return all(any(assignment[abs(l)] == (l > 0) for l in c) for c in cnf.clauses)


def solve(cnf: CnfInstance) -> SatResult:
    """Decide ``cnf`` by DPLL: unit propagation, root-level pure literals,
    and branching on the lowest unassigned variable, true first."""
    n = cnf.num_vars
    clauses = cnf.clauses
    if any(not c for c in clauses):
        return UNSAT
    value = [0] * (n + 1)  # 1 true, -1 false, 0 unassigned
    trail: list[int] = []

    def assign(lit: int) -> None:
        value[abs(lit)] = 1 if lit > 0 else -1
        trail.append(abs(lit))

    def propagate() -> bool:
        changed = True
        while changed:
            changed = False
            for c in clauses:
                free = 0
                unit = 0
                for lit in c:
                    v = value[lit] if lit > 0 else -value[-lit]
                    if v == 1:
                        break
                    if v == 0:
                        free += 1
                        unit = lit
                else:
                    if free == 0:
                        return False
                    if free == 1:
                        assign(unit)
                        changed = True
        return True

    polarity = [0] * (n + 1)  # bit 1: occurs positively, bit 2: negatively
    for c in clauses:
        for lit in c:
            polarity[abs(lit)] |= 1 if lit > 0 else 2
    for var in range(1, n + 1):
        if polarity[var] == 1:
            assign(var)
        elif polarity[var] == 2:
            assign(-var)

    if not propagate():
        return UNSAT
    decisions: list[list] = []  # [var, trail length before deciding, flipped]
    while True:
        var = next((v for v in range(1, n + 1) if value[v] == 0), None)
        if var is None:
            break
        decisions.append([var, len(trail), False])
        assign(var)
        while not propagate():
            while decisions and decisions[-1][2]:
                decisions.pop()
            if not decisions:
                return UNSAT
            var, mark, _ = decisions[-1]
            for v in trail[mark:]:
                value[v] = 0
            del trail[mark:]
            decisions[-1][2] = True
            assign(-var)

    assignment = {v: value[v] == 1 for v in range(1, n + 1)}
    if not check_assignment(cnf, assignment):
        raise AssertionError("solver produced an assignment violating a clause")
    return SatResult(True, assignment)


def to_dimacs(cnf: CnfInstance, comments: Iterable[str] = ()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p cnf {cnf.num_vars} {len(cnf.clauses)}")
    lines.extend(" ".join(map(str, c + (0,))) for c in cnf.clauses)
    return "\n".join(lines) + "\n"


def from_dimacs(text: str) -> CnfInstance:
    header = None
    clauses: list[list[int]] = []
    current: list[int] = []
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        if line.startswith("p"):
            parts = line.split()
            if header is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"malformed problem line {line!r}", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError("negative counts in problem line", lineno)
            continue
        if header is None:
            raise ParseError("clause before problem line", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                clauses.append(current)
                current = []
            elif abs(lit) > header[0]:
                raise ParseError(f"literal {lit} exceeds declared variable count {header[0]}", lineno)
            else:
                current.append(lit)
        last_line = lineno
    if header is None:
        raise ParseError("missing problem line 'p cnf V C'")
    if current:
        raise ParseError("last clause is not terminated by 0", last_line)
    if len(clauses) != header[1]:
        raise ParseError(f"problem line declares {header[1]} clauses, found {len(clauses)}")
    return CnfInstance(header[0], clauses)
