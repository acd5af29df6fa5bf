"""Exhaustive ground truth over tiny vocabularies.

Enumerates every AF and every full-link ADF over ``n <= 3`` atoms, computes
the semantic range of each language (the set of model sets it can express)
and compares the ranges.  Model sets are handled as *family masks*: bit
``M`` is set iff interpretation ``M`` is a member.

LP ranges are not enumerated; supported LPs coincide with supported ADFs
(Clark completion) and stable LPs with stable bipolar ADFs, so those
ranges are reported under the ADF names.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

import numpy as np

from .adf import Adf, is_bipolar
from .af import Af, stable_extensions
from .core import ContractError, ModelSet, Vocabulary, is_antichain

ORACLE_LIMIT = 3
LANGUAGES = ("af", "badf-st", "adf-st", "badf-su", "adf-su", "pl")
ALIASES = {"lp-su": "adf-su", "lp-st": "badf-st"}

# expected hierarchy, bottom to top: (lower, upper, strict)
CLAIMS = (
    ("af", "badf-st", True),
    ("badf-st", "adf-st", False),
    ("badf-st", "badf-su", True),
    ("badf-su", "adf-su", True),
    ("adf-su", "pl", False),
)


def _guard(vocabulary: Vocabulary, limit: int = ORACLE_LIMIT) -> int:
    n = len(vocabulary)
    if n > limit:
        raise ContractError(f"exhaustive enumeration needs at most {limit} atoms, got {n}")
    return n


def default_vocabulary(n: int) -> Vocabulary:
    names = ("x", "y", "z") if n <= 3 else tuple(f"a{i}" for i in range(n))
    return Vocabulary(names[:n])


def enumerate_afs(vocabulary: Vocabulary) -> Iterator[Af]:
    n = _guard(vocabulary)
    pairs = [(a, b) for a in vocabulary for b in vocabulary]
    for bits in range(1 << (n * n)):
        yield Af(vocabulary, [p for k, p in enumerate(pairs) if bits >> k & 1])


def enumerate_adfs(vocabulary: Vocabulary, bipolar_only: bool = False) -> Iterator[Adf]:
    """Every ADF whose statements all have the whole vocabulary as parents."""
    n = _guard(vocabulary)
    for tables in itertools.product(range(1 << (1 << n)), repeat=n):
        d = Adf.from_tables(vocabulary, tables)
        if bipolar_only and not is_bipolar(d):
            continue
        yield d


def all_model_sets(vocabulary: Vocabulary) -> Iterator[ModelSet]:
    n = _guard(vocabulary, 4)
    for fam in range(1 << (1 << n)):
        yield ModelSet.from_family_mask(vocabulary, fam)


# --- vectorised sweep --------------------------------------------------------------


@dataclass(frozen=True)
class Sweep:
    """Per-model-set counts of ADFs over all condition-table combinations."""

    n: int
    su: np.ndarray = field(repr=False)
    su_bipolar: np.ndarray = field(repr=False)
    st: np.ndarray = field(repr=False)
    st_bipolar: np.ndarray = field(repr=False)
    af: frozenset = frozenset()


def _statement_tables(n: int):
    N, T = 1 << n, 1 << (1 << n)
    t = np.arange(T)
    rows = ((t[:, None] >> np.arange(N)[None, :]) & 1).astype(bool)  # rows[t, M] = C(M)
    cons, bip, acc = [], [], []
    for a in range(n):
        inside = np.array([(m >> a) & 1 for m in range(N)], dtype=bool)
        agree = rows == inside[None, :]
        cons.append((agree.astype(np.int64) << np.arange(N)[None, :]).sum(axis=1))
        ok = np.ones(T, dtype=bool)
        for b in range(n):
            lows = [m for m in range(N) if not m >> b & 1]
            lo, hi = rows[:, lows], rows[:, [m | 1 << b for m in lows]]
            supports = ~(lo & ~hi).any(axis=1)
            attacks = ~(hi & ~lo).any(axis=1)
            ok &= supports | attacks
        bip.append(ok)
        # acc_a[M][t, Q]: a accepted in the reduct at M when Q is already accepted
        per_m = np.zeros((N, T, N), dtype=np.int64)
        for m in range(N):
            if not m >> a & 1:
                continue
            for q in range(N):
                if q & ~m:
                    continue
                between = [z for z in range(N) if z & q == q and z & ~m == 0]
                per_m[m, :, q] = rows[:, between].all(axis=1).astype(np.int64) << a
        acc.append(per_m)
    return cons, bip, acc


@lru_cache(maxsize=None)
def sweep(n: int) -> Sweep:
    """Enumerate all ADFs over ``n`` statements (parents = everything) in table space.

    The outermost statement's table is the partition key; the remaining
    statements are handled as one broadcast numpy block per key.
    """
    if not 1 <= n <= ORACLE_LIMIT:
        raise ContractError(f"sweep supports 1..{ORACLE_LIMIT} atoms")
    N, T = 1 << n, 1 << (1 << n)
    F = 1 << N
    cons, bip, acc = _statement_tables(n)
    rest = np.meshgrid(*([np.arange(T)] * (n - 1)), indexing="ij") if n > 1 else []
    rest = [g.ravel() for g in rest]
    size = T ** (n - 1)
    counts = {k: np.zeros(F, dtype=np.int64) for k in ("su", "su_b", "st", "st_b")}
    for t0 in range(T):
        tabs = [np.full(size, t0)] + rest
        su = np.full(size, F - 1, dtype=np.int64)
        bipolar = np.ones(size, dtype=bool)
        for a in range(n):
            su &= cons[a][tabs[a]]
            bipolar &= bip[a][tabs[a]]
        st = np.zeros(size, dtype=np.int64)
        for m in range(N):
            model = (su >> m) & 1
            if not model.any():
                continue
            q = np.zeros(size, dtype=np.int64)
            for _ in range(n):
                nq = np.zeros(size, dtype=np.int64)
                for a in range(n):
                    nq |= acc[a][m][tabs[a], q]
                q = nq
            st |= ((q == m) & (model == 1)).astype(np.int64) << m
        counts["su"] += np.bincount(su, minlength=F)
        counts["su_b"] += np.bincount(su[bipolar], minlength=F)
        counts["st"] += np.bincount(st, minlength=F)
        counts["st_b"] += np.bincount(st[bipolar], minlength=F)
    vocab = default_vocabulary(n)
    af_range = frozenset(stable_extensions(f).family_mask for f in enumerate_afs(vocab))
    return Sweep(n, counts["su"], counts["su_b"], counts["st"], counts["st_b"], af_range)


def _range_masks(language: str, n: int) -> frozenset[int]:
    language = ALIASES.get(language, language)
    if language == "pl":
        return frozenset(range(1 << (1 << n)))
    s = sweep(n)
    arrays = {"adf-su": s.su, "badf-su": s.su_bipolar, "adf-st": s.st, "badf-st": s.st_bipolar}
    if language == "af":
        return s.af
    if language not in arrays:
        raise ContractError(f"unknown language {language!r}; expected one of {LANGUAGES + tuple(ALIASES)}")
    return frozenset(int(f) for f in np.nonzero(arrays[language])[0])


def semantic_range(language: str, vocabulary: Vocabulary) -> frozenset[ModelSet]:
    """All model sets over ``vocabulary`` expressible by ``language``."""
    n = _guard(vocabulary)
    if n == 0:
        raise ContractError("semantic ranges need a nonempty vocabulary")
    return frozenset(ModelSet.from_family_mask(vocabulary, f) for f in _range_masks(language, n))


def count_realizations_bruteforce(x: ModelSet) -> int:
    """Number of ADFs (all links present) whose model set is ``x``."""
    n = _guard(x.vocabulary)
    if n == 0:
        return 1 if x.masks == {0} else 0
    return int(sweep(n).su[x.family_mask])


def count_bipolar_realizations_bruteforce(x: ModelSet) -> int:
    n = _guard(x.vocabulary)
    return int(sweep(n).su_bipolar[x.family_mask])


# --- hierarchy report ----------------------------------------------------------------


def _relation(lo: frozenset, hi: frozenset) -> str:
    if lo == hi:
        return "="
    if lo < hi:
        return "⊊"
    if lo > hi:
        return "⊋"
    return "incomparable"


@dataclass
class HierarchyReport:
    n: int
    atoms: tuple[str, ...]
    sizes: dict[str, int]
    relations: list[dict]
    claims: list[dict]
    checks: list[dict]
    notes: list[str]

    @property
    def ok(self) -> bool:
        return all(c["status"] != "violated" for c in self.claims) and all(c["holds"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "atoms": list(self.atoms),
            "n": self.n,
            "range_sizes": self.sizes,
            "relations": self.relations,
            "claims": self.claims,
            "checks": self.checks,
            "notes": self.notes,
            "ok": self.ok,
        }

    def to_text(self) -> str:
        out = [f"expressiveness hierarchy over {{{','.join(self.atoms)}}} (n={self.n})", ""]
        out.append("range sizes:")
        for lang in LANGUAGES:
            out.append(f"  {lang:8} {self.sizes[lang]}")
        out.append("")
        out.append("claims (bottom to top):")
        for c in self.claims:
            sym = "<" if c["strict"] else "≅"
            line = f"  {c['lower']} {sym} {c['upper']}: {c['status']} (observed {c['observed']})"
            if c.get("witness") is not None:
                line += f", witness {c['witness']}"
            out.append(line)
        if self.checks:
            out.append("")
            out.append("named witnesses:")
            for c in self.checks:
                out.append(f"  {c['name']}: {'holds' if c['holds'] else 'FAILS'}")
        out.append("")
        out.append("pairwise relations (row vs column):")
        for r in self.relations:
            out.append(f"  {r['left']:8} {r['relation']:12} {r['right']}")
        for note in self.notes:
            out.append(f"note: {note}")
        return "\n".join(out) + "\n"


def _fmt(vocab: Vocabulary, fam: int) -> str:
    return str(ModelSet.from_family_mask(vocab, fam))


def verify_hierarchy(vocabulary: Vocabulary) -> HierarchyReport:
    n = _guard(vocabulary)
    if n == 0:
        raise ContractError("the hierarchy needs a nonempty vocabulary")
    ranges = {lang: _range_masks(lang, n) for lang in LANGUAGES}
    relations = []
    for left, right in itertools.combinations(LANGUAGES, 2):
        lo, hi = ranges[left], ranges[right]
        rel = {"left": left, "right": right, "relation": _relation(lo, hi)}
        only_right = sorted(hi - lo)
        only_left = sorted(lo - hi)
        if only_right:
            rel["witness_right_only"] = _fmt(vocabulary, only_right[0])
        if only_left:
            rel["witness_left_only"] = _fmt(vocabulary, only_left[0])
        relations.append(rel)

    claims = []
    for lower, upper, strict in CLAIMS:
        lo, hi = ranges[lower], ranges[upper]
        observed = _relation(lo, hi)
        entry = {"lower": lower, "upper": upper, "strict": strict, "observed": observed, "witness": None}
        if strict:
            if lo < hi:
                entry["status"] = "holds"
                entry["witness"] = _fmt(vocabulary, min(hi - lo))
            elif lo == hi:
                entry["status"] = "needs larger vocabulary"
            else:
                entry["status"] = "violated"
        else:
            entry["status"] = "holds" if lo == hi else "violated"
        claims.append(entry)

    antichains = frozenset(f for f in range(1 << (1 << n)) if is_antichain(ModelSet.from_family_mask(vocabulary, f)))
    checks = [
        {
            "name": "stable ranges are exactly the antichains",
            "holds": ranges["adf-st"] == ranges["badf-st"] == antichains,
        },
        {
            "name": "af range consists of antichains",
            "holds": ranges["af"] <= antichains,
        },
        {
            "name": "adf-su range is every model set",
            "holds": ranges["adf-su"] == ranges["pl"],
        },
    ]
    if n == 1:
        both = 0b11  # {∅, {a}}
        checks.append({"name": f"{_fmt(vocabulary, both)} in badf-su but not af", "holds": both in ranges["badf-su"] and both not in ranges["af"]})
    if n == 3:
        x1 = (1 << 0) | (1 << 3) | (1 << 5) | (1 << 6)
        x2 = (1 << 3) | (1 << 5) | (1 << 6)
        s = sweep(3)
        checks += [
            {"name": f"X1={_fmt(vocabulary, x1)} in adf-su but not badf-su", "holds": x1 in ranges["adf-su"] and x1 not in ranges["badf-su"]},
            {"name": f"X2={_fmt(vocabulary, x2)} in badf-st but not af", "holds": x2 in ranges["badf-st"] and x2 not in ranges["af"]},
            {"name": "X1 has 2401 realizations, none bipolar", "holds": int(s.su[x1]) == 2401 and int(s.su_bipolar[x1]) == 0},
        ]
    notes = [
        "lp-su is reported as adf-su and lp-st as badf-st (equivalences via completion and canonical BADFs); programs are not enumerated",
    ]
    sizes = {lang: len(ranges[lang]) for lang in LANGUAGES}
    return HierarchyReport(n, vocabulary.atoms, sizes, relations, claims, checks, notes)
