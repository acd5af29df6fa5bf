"""Vocabularies, interpretations and model sets.

Interpretations are subsets of a fixed vocabulary and are stored as integer
bitmasks: bit ``i`` is set iff the ``i``-th atom (in lexicographic order) is
true.  Model sets are sets of such bitmasks tagged with their vocabulary.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator

ENUMERATION_LIMIT = 20
MAX_VOCABULARY = 63


class KbError(Exception):
    """Base class for all errors raised by this package."""


class VocabularyError(KbError, ValueError):
    pass


class EnumerationLimitError(KbError):
    def __init__(self, size: int, limit: int):
        super().__init__(
            f"refusing to enumerate 2^{size} interpretations: "
            f"vocabulary size {size} exceeds the limit of {limit}"
        )
        self.size = size
        self.limit = limit


class ContractError(KbError, ValueError):
    """An operation was called outside its precondition."""


class ParseError(KbError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def check_limit(size: int, limit: int | None = None) -> None:
    limit = ENUMERATION_LIMIT if limit is None else limit
    if size > limit:
        raise EnumerationLimitError(size, limit)


@dataclass(frozen=True)
class Vocabulary:
    """An ordered set of atom names; position defines the bit index."""

    atoms: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, atoms: Iterable[str] = ()):
        names = list(atoms)
        for name in names:
            if not isinstance(name, str) or not name:
                raise VocabularyError(f"atom names must be nonempty strings, got {name!r}")
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            raise VocabularyError(f"duplicate atoms: {', '.join(dupes)}")
        if len(names) > MAX_VOCABULARY:
            raise VocabularyError(f"at most {MAX_VOCABULARY} atoms are supported")
        ordered = tuple(sorted(names))
        object.__setattr__(self, "atoms", ordered)
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(ordered)})

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[str]:
        return iter(self.atoms)

    def __contains__(self, atom: object) -> bool:
        return atom in self._index

    def __repr__(self) -> str:
        return f"Vocabulary({list(self.atoms)!r})"

    @property
    def full_mask(self) -> int:
        return (1 << len(self.atoms)) - 1

    def index(self, atom: str) -> int:
        try:
            return self._index[atom]
        except KeyError:
            raise VocabularyError(f"atom {atom!r} is not in the vocabulary {list(self.atoms)}") from None

    def bit(self, atom: str) -> int:
        return 1 << self.index(atom)

    def mask_of(self, atoms: Iterable[str]) -> int:
        mask = 0
        for a in atoms:
            mask |= self.bit(a)
        return mask

    def names_of(self, mask: int) -> tuple[str, ...]:
        return tuple(a for i, a in enumerate(self.atoms) if mask >> i & 1)

    def interpretation(self, atoms: Iterable[str] = ()) -> Interpretation:
        return Interpretation(self, self.mask_of(atoms))

    def restrict(self, atoms: Iterable[str]) -> Vocabulary:
        keep = set(atoms)
        for a in keep:
            self.index(a)
        return Vocabulary(a for a in self.atoms if a in keep)


@dataclass(frozen=True)
class Interpretation:
    """A two-valued interpretation, represented by the set of true atoms."""

    vocabulary: Vocabulary
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask & ~self.vocabulary.full_mask:
            raise VocabularyError(f"mask {self.mask:#b} has bits outside the vocabulary")

    def __contains__(self, atom: str) -> bool:
        return atom in self.vocabulary and bool(self.mask & self.vocabulary.bit(atom))

    def __iter__(self) -> Iterator[str]:
        return iter(self.vocabulary.names_of(self.mask))

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def names(self) -> frozenset[str]:
        return frozenset(self.vocabulary.names_of(self.mask))

    def issubset(self, other: Interpretation) -> bool:
        return self.mask & ~other.mask == 0

    def __str__(self) -> str:
        return "{" + ",".join(self) + "}"

    def __repr__(self) -> str:
        return f"Interpretation({self})"


def all_interpretations(vocabulary: Vocabulary, limit: int | None = None) -> Iterator[Interpretation]:
    """Yield every subset of ``vocabulary`` in ascending bitmask order."""
    check_limit(len(vocabulary), limit)
    for mask in range(1 << len(vocabulary)):
        yield Interpretation(vocabulary, mask)


@dataclass(frozen=True)
class ModelSet:
    """A set of interpretations over one vocabulary."""

    vocabulary: Vocabulary
    masks: frozenset[int]

    def __init__(self, vocabulary: Vocabulary, masks: Iterable[int] = ()):
        masks = frozenset(masks)
        full = vocabulary.full_mask
        for m in masks:
            if m < 0 or m & ~full:
                raise VocabularyError(f"mask {m:#b} has bits outside the vocabulary")
        object.__setattr__(self, "vocabulary", vocabulary)
        object.__setattr__(self, "masks", masks)

    @classmethod
    def from_sets(cls, vocabulary: Vocabulary, models: Iterable[Iterable[str]]) -> ModelSet:
        return cls(vocabulary, (vocabulary.mask_of(m) for m in models))

    @classmethod
    def from_interpretations(cls, vocabulary: Vocabulary, models: Iterable[Interpretation]) -> ModelSet:
        masks = []
        for m in models:
            if m.vocabulary != vocabulary:
                raise VocabularyError("interpretation over a different vocabulary")
            masks.append(m.mask)
        return cls(vocabulary, masks)

    @classmethod
    def from_family_mask(cls, vocabulary: Vocabulary, family: int) -> ModelSet:
        """Decode a model set whose bit ``M`` is set iff interpretation ``M`` is a member."""
        return cls(vocabulary, (m for m in range(1 << len(vocabulary)) if family >> m & 1))

    @classmethod
    def everything(cls, vocabulary: Vocabulary) -> ModelSet:
        check_limit(len(vocabulary))
        return cls(vocabulary, range(1 << len(vocabulary)))

    @property
    def family_mask(self) -> int:
        out = 0
        for m in self.masks:
            out |= 1 << m
        return out

    def fingerprint(self) -> tuple[int, ...]:
        return tuple(sorted(self.masks))

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[Interpretation]:
        for m in sorted(self.masks):
            yield Interpretation(self.vocabulary, m)

    def __contains__(self, item) -> bool:
        if isinstance(item, Interpretation):
            return item.vocabulary == self.vocabulary and item.mask in self.masks
        if isinstance(item, int):
            return item in self.masks
        return self.vocabulary.mask_of(item) in self.masks

    def as_sets(self) -> list[frozenset[str]]:
        return [m.names() for m in self]

    def __str__(self) -> str:
        return "{" + ", ".join(str(m) for m in self) + "}"

    def __repr__(self) -> str:
        return f"ModelSet({list(self.vocabulary.atoms)!r}, {self})"


def is_antichain(models: ModelSet) -> bool:
    """True iff no member is a proper subset of another member."""
    ms = sorted(models.masks, key=lambda m: bin(m).count("1"))
    for i, small in enumerate(ms):
        for big in ms[i + 1 :]:
            if small & ~big == 0:
                return False
    return True


def complement_count(models: ModelSet) -> int:
    """Number of interpretations over the vocabulary that are not in the set."""
    return (1 << len(models.vocabulary)) - len(models)


# --- model-set text format -------------------------------------------------

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")
_MODEL_RE = re.compile(r"\{(.*)\}\Z")


def _split_atoms(text: str, lineno: int) -> list[str]:
    names = [t.strip() for t in text.split(",")] if text.strip() else []
    for n in names:
        if not ATOM_RE.match(n):
            raise ParseError(f"invalid atom name {n!r}", lineno)
    return names


def parse_atoms_directive(line: str, lineno: int) -> list[str] | None:
    """Parse an ``atoms: a, b, c`` vocabulary line; None if the line is something else."""
    if not line.startswith("atoms:"):
        return None
    return _split_atoms(line[len("atoms:") :], lineno)


def strip_comment(line: str) -> str:
    for marker in ("#", "%"):
        pos = line.find(marker)
        if pos >= 0:
            line = line[:pos]
    return line.strip()


def parse_modelset(text: str, vocabulary: Vocabulary | None = None) -> ModelSet:
    """Read the one-model-per-line format, e.g. ``{x,y}``.

    The vocabulary comes from the argument, else from an ``atoms:`` line,
    else from the atoms mentioned in the models.
    """
    declared: list[str] | None = None
    models: list[list[str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = strip_comment(raw)
        if not line:
            continue
        atoms = parse_atoms_directive(line, lineno)
        if atoms is not None:
            declared = (declared or []) + atoms
            continue
        m = _MODEL_RE.match(line)
        if not m:
            raise ParseError(f"expected a model like {{a,b}}, got {line!r}", lineno)
        models.append(_split_atoms(m.group(1), lineno))
    if vocabulary is None:
        if declared is not None:
            vocabulary = Vocabulary(dict.fromkeys(declared))
        else:
            vocabulary = Vocabulary(sorted({a for m in models for a in m}))
    return ModelSet.from_sets(vocabulary, models)


def format_modelset(models: ModelSet) -> str:
    lines = ["atoms: " + ",".join(models.vocabulary.atoms)]
    lines.extend(str(m) for m in models)
    return "\n".join(lines) + "\n"
