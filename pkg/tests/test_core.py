import itertools

import pytest
from hypothesis import given, strategies as st

from kbrealize.core import (
    EnumerationLimitError,
    Interpretation,
    ModelSet,
    ParseError,
    Vocabulary,
    VocabularyError,
    all_interpretations,
    complement_count,
    format_modelset,
    is_antichain,
    parse_modelset,
)


def test_vocabulary_is_sorted_and_indexed():
    v = Vocabulary(["z", "x", "y"])
    assert v.atoms == ("x", "y", "z")
    assert v.bit("y") == 2
    assert v.names_of(0b101) == ("x", "z")


@pytest.mark.parametrize("atoms", [["a", "a"], ["a", ""]])
def test_vocabulary_rejects_bad_atoms(atoms):
    with pytest.raises(VocabularyError):
        Vocabulary(atoms)


def test_all_interpretations_examples():
    assert [set(i) for i in all_interpretations(Vocabulary("a"))] == [set(), {"a"}]
    assert [set(i) for i in all_interpretations(Vocabulary([]))] == [set()]
    assert len(list(all_interpretations(Vocabulary("xyz")))) == 8


def test_all_interpretations_guard():
    v = Vocabulary(f"a{i}" for i in range(21))
    with pytest.raises(EnumerationLimitError, match="20"):
        next(all_interpretations(v))
    assert len(list(itertools.islice(all_interpretations(v, limit=21), 3))) == 3


def test_guard_override():
    v = Vocabulary(f"a{i}" for i in range(3))
    with pytest.raises(EnumerationLimitError):
        list(all_interpretations(v, limit=2))


@pytest.mark.parametrize("n", range(11))
def test_all_interpretations_distinct(n):
    v = Vocabulary(f"a{i}" for i in range(n))
    ms = [i.mask for i in all_interpretations(v)]
    assert ms == sorted(set(ms)) and len(ms) == 2**n


def test_antichain_examples(xyz):
    assert is_antichain(ModelSet.from_sets(xyz, [["x", "y"], ["x", "z"], ["y", "z"]]))
    assert not is_antichain(ModelSet.from_sets(xyz, [[], ["x", "y"]]))
    assert is_antichain(ModelSet(xyz))


def _pairwise_antichain(x: ModelSet) -> bool:
    sets = [frozenset(m) for m in x]
    return not any(a != b and a <= b for a in sets for b in sets)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_antichain_matches_pairwise_scan(n):
    v = Vocabulary("xyz"[:n])
    for fam in range(1 << (1 << n)):
        x = ModelSet.from_family_mask(v, fam)
        assert is_antichain(x) == _pairwise_antichain(x)


def test_complement_count(xyz, x1):
    assert complement_count(x1) == 4
    assert complement_count(ModelSet.everything(xyz)) == 0
    assert complement_count(ModelSet(xyz)) == 8


@given(st.permutations(["p", "q", "r", "s"]), st.sets(st.sampled_from(["p", "q", "r", "s"])))
def test_interpretation_equality_ignores_construction_order(order, members):
    v1, v2 = Vocabulary(order), Vocabulary(sorted(order))
    i1 = v1.interpretation(sorted(members, reverse=True))
    i2 = v2.interpretation(sorted(members))
    assert i1 == i2 and hash(i1) == hash(i2)
    assert len(ModelSet.from_interpretations(v1, [i1, i2])) == 1


def test_interpretation_rejects_foreign_bits():
    with pytest.raises(VocabularyError):
        Interpretation(Vocabulary("a"), 0b10)


def test_modelset_text_round_trip(xyz, x1):
    text = format_modelset(x1)
    assert text == "atoms: x,y,z\n{}\n{x,y}\n{x,z}\n{y,z}\n"
    assert parse_modelset(text) == x1
    assert format_modelset(parse_modelset(text)) == text


def test_modelset_parse_comments_and_duplicates():
    text = "# wanted models\n{b, a}\n\n{a,b}   # again\n{}\n"
    x = parse_modelset(text)
    assert x.vocabulary.atoms == ("a", "b")
    assert x.as_sets() == [frozenset(), frozenset("ab")]


def test_modelset_parse_errors():
    with pytest.raises(ParseError, match="line 2"):
        parse_modelset("{a}\nb\n")
    with pytest.raises(ParseError):
        parse_modelset("{A}\n")


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, 2 ** (2**n) - 1))))
def test_modelset_round_trip_property(case):
    n, fam = case
    x = ModelSet.from_family_mask(Vocabulary("abcd"[:n]), fam)
    text = format_modelset(x)
    assert parse_modelset(text) == x
    assert format_modelset(parse_modelset(text)) == text


def test_family_mask_round_trip():
    v = Vocabulary("ab")
    for fam in range(16):
        assert ModelSet.from_family_mask(v, fam).family_mask == fam
    assert list(itertools.islice(ModelSet.everything(v), 2))[1].names() == {"a"}
