import random
from collections import Counter

import pytest

from kbrealize.adf import Adf, adf_models, adf_stable_models, is_bipolar
from kbrealize.af import stable_extensions
from kbrealize.core import ContractError, ModelSet, Vocabulary, is_antichain
from kbrealize.oracle import (
    LANGUAGES,
    all_model_sets,
    count_bipolar_realizations_bruteforce,
    count_realizations_bruteforce,
    default_vocabulary,
    enumerate_adfs,
    enumerate_afs,
    semantic_range,
    sweep,
    verify_hierarchy,
)

# Number of antichains of subsets of an n-set (Dedekind numbers), counting the empty family.
DEDEKIND = {1: 3, 2: 6, 3: 20}


def fams(ranges):
    return {x.family_mask for x in ranges}


def test_enumeration_sizes():
    assert [sum(1 for _ in enumerate_afs(default_vocabulary(n))) for n in (1, 2, 3)] == [2, 16, 512]
    assert [sum(1 for _ in enumerate_adfs(default_vocabulary(n))) for n in (1, 2)] == [4, 256]
    assert int(sweep(3).su.sum()) == 256**3 == 16_777_216
    assert int(sweep(2).su.sum()) == 256 and int(sweep(1).su.sum()) == 4


def test_enumeration_guard():
    with pytest.raises(ContractError):
        next(enumerate_afs(Vocabulary("abcd")))
    with pytest.raises(ContractError):
        next(enumerate_adfs(Vocabulary("abcd")))


def test_afs_enumerated_once():
    attacks = [f.attacks for f in enumerate_afs(Vocabulary("ab"))]
    assert len(set(attacks)) == len(attacks) == 16


@pytest.mark.parametrize("n", [1, 2])
def test_sweep_matches_generic_semantics(n):
    v = default_vocabulary(n)
    su, sub, st, stb = Counter(), Counter(), Counter(), Counter()
    for d in enumerate_adfs(v):
        m, s = adf_models(d).family_mask, adf_stable_models(d).family_mask
        su[m] += 1
        st[s] += 1
        if is_bipolar(d):
            sub[m] += 1
            stb[s] += 1
    sw = sweep(n)
    for fam in range(1 << (1 << n)):
        assert (sw.su[fam], sw.su_bipolar[fam], sw.st[fam], sw.st_bipolar[fam]) == (su[fam], sub[fam], st[fam], stb[fam])
    bipolar_only = sum(1 for _ in enumerate_adfs(v, bipolar_only=True))
    assert bipolar_only == int(sw.su_bipolar.sum())


def test_sweep_n3_consistent_with_random_adfs():
    sw = sweep(3)
    v = default_vocabulary(3)
    rng = random.Random(5)
    for _ in range(1000):
        d = Adf.from_tables(v, [rng.randrange(256) for _ in range(3)])
        su, st = adf_models(d).family_mask, adf_stable_models(d).family_mask
        assert sw.su[su] > 0 and sw.st[st] > 0
        if is_bipolar(d):
            assert sw.su_bipolar[su] > 0 and sw.st_bipolar[st] > 0
    assert int(sw.st.sum()) == int(sw.su.sum())


def test_range_examples(x2):
    va = Vocabulary("a")
    assert fams(semantic_range("af", va)) == {ModelSet.from_sets(va, [["a"]]).family_mask, 0}
    assert len(semantic_range("adf-su", Vocabulary("ab"))) == 16
    assert x2 not in semantic_range("af", Vocabulary("xyz"))
    assert semantic_range("lp-su", Vocabulary("ab")) == semantic_range("adf-su", Vocabulary("ab"))
    assert semantic_range("lp-st", Vocabulary("ab")) == semantic_range("badf-st", Vocabulary("ab"))
    with pytest.raises(ContractError):
        semantic_range("nope", va)


def test_range_uses_given_atom_names():
    v = Vocabulary(["p", "q"])
    assert all(x.vocabulary == v for x in semantic_range("badf-st", v))


def test_af_range_matches_direct_enumeration():
    v = Vocabulary("xyz")
    direct = {stable_extensions(f).family_mask for f in enumerate_afs(v)}
    assert fams(semantic_range("af", v)) == direct


@pytest.mark.parametrize("n", [1, 2, 3])
def test_range_invariants(n):
    v = default_vocabulary(n)
    r = {lang: fams(semantic_range(lang, v)) for lang in LANGUAGES}
    assert r["af"] <= r["badf-st"] <= r["badf-su"] <= r["adf-su"] == r["pl"] == set(range(1 << (1 << n)))
    antichains = {x.family_mask for x in all_model_sets(v) if is_antichain(x)}
    assert len(antichains) == DEDEKIND[n]
    assert r["adf-st"] == r["badf-st"] == antichains
    for lang in ("af", "adf-st", "badf-st"):
        assert all(is_antichain(ModelSet.from_family_mask(v, f)) for f in r[lang])


def test_counts(x1):
    v2 = Vocabulary("xy")
    assert count_realizations_bruteforce(ModelSet.everything(v2)) == 1
    assert count_realizations_bruteforce(ModelSet(v2)) == 81
    assert count_realizations_bruteforce(x1) == 2401
    assert count_bipolar_realizations_bruteforce(x1) == 0


def test_hierarchy_n3():
    rep = verify_hierarchy(default_vocabulary(3))
    assert rep.ok
    claims = {(c["lower"], c["upper"]): c for c in rep.claims}
    assert claims[("af", "badf-st")]["observed"] == "⊊"
    assert claims[("badf-st", "adf-st")]["observed"] == "="
    assert claims[("badf-st", "badf-su")]["observed"] == "⊊"
    assert claims[("badf-su", "adf-su")]["observed"] == "⊊"
    assert claims[("adf-su", "pl")]["observed"] == "="
    assert all(c["status"] == "holds" for c in rep.claims)
    assert rep.sizes == {"af": 18, "badf-st": 20, "adf-st": 20, "badf-su": 254, "adf-su": 256, "pl": 256}
    assert all(c["holds"] for c in rep.checks)
    names = " ".join(c["name"] for c in rep.checks)
    assert "X1" in names and "X2" in names
    data = rep.to_json()
    assert data["ok"] and data["range_sizes"]["badf-su"] == 254


def test_hierarchy_n1_witness():
    rep = verify_hierarchy(default_vocabulary(1))
    assert rep.ok
    assert any("in badf-su but not af" in c["name"] and c["holds"] for c in rep.checks)
    status = {(c["lower"], c["upper"]): c["status"] for c in rep.claims}
    assert status[("badf-st", "badf-su")] == "holds"
    assert status[("badf-su", "adf-su")] == "needs larger vocabulary"


def test_hierarchy_n2_answers_the_open_strictness_question():
    rep = verify_hierarchy(default_vocabulary(2))
    status = {(c["lower"], c["upper"]): c["status"] for c in rep.claims}
    # every model set over two atoms has a bipolar realization
    assert status[("badf-su", "adf-su")] == "needs larger vocabulary"
    assert rep.sizes["badf-su"] == rep.sizes["adf-su"] == 16
    assert "needs larger vocabulary" in rep.to_text()


def test_hierarchy_guard():
    with pytest.raises(ContractError):
        verify_hierarchy(Vocabulary("abcd"))
