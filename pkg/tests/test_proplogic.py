import itertools

import pytest
from hypothesis import given, settings, strategies as st

from kbrealize.core import ModelSet, ParseError, Vocabulary, VocabularyError, all_interpretations
from kbrealize.proplogic import (
    BOTTOM,
    TOP,
    And,
    Atom,
    Bottom,
    Iff,
    Imp,
    Not,
    Or,
    Theory,
    Top,
    Xor,
    conj,
    disj,
    evaluate,
    flatten,
    format_theory,
    models,
    parse_formula,
    parse_theory,
    print_formula,
    realizer_formula,
)
from conftest import brute_models

a, b, x, y, z = (Atom(s) for s in "abxyz")
ATOMS = ("p", "q", "r")


def to_python(f) -> str:
    """Render a formula as a Python boolean expression over a dict ``v``."""
    if isinstance(f, Atom):
        return f"v[{f.name!r}]"
    if isinstance(f, Top):
        return "True"
    if isinstance(f, Bottom):
        return "False"
    if isinstance(f, Not):
        return f"(not {to_python(f.arg)})"
    if isinstance(f, And):
        return "(" + " and ".join(map(to_python, f.args)) + ")" if f.args else "True"
    if isinstance(f, Or):
        return "(" + " or ".join(map(to_python, f.args)) + ")" if f.args else "False"
    if isinstance(f, Xor):
        return f"({to_python(f.left)} != {to_python(f.right)})"
    if isinstance(f, Imp):
        return f"((not {to_python(f.left)}) or {to_python(f.right)})"
    if isinstance(f, Iff):
        return f"({to_python(f.left)} == {to_python(f.right)})"
    raise TypeError(f)


leaves = st.one_of(st.sampled_from([Atom(s) for s in ATOMS]), st.just(TOP), st.just(BOTTOM))


def _extend(children):
    return st.one_of(
        children.map(Not),
        st.lists(children, min_size=1, max_size=3).map(lambda xs: And(tuple(xs))),
        st.lists(children, min_size=1, max_size=3).map(lambda xs: Or(tuple(xs))),
        st.tuples(children, children).map(lambda t: Xor(*t)),
        st.tuples(children, children).map(lambda t: Imp(*t)),
        st.tuples(children, children).map(lambda t: Iff(*t)),
    )


def bounded(d: int):
    """Formulas of depth at most ``d``."""
    return leaves if d <= 1 else st.one_of(leaves, _extend(bounded(d - 1)))


formulas = bounded(6)


def depth(f) -> int:
    kids = [getattr(f, k) for k in ("arg", "left", "right") if hasattr(f, k)]
    kids += list(getattr(f, "args", ()))
    return 1 + max(map(depth, kids), default=0)


V3 = Vocabulary(ATOMS)


@settings(max_examples=1000, deadline=None)
@given(formulas)
def test_evaluate_matches_truth_table_oracle(f):
    src = compile(to_python(f), "<oracle>", "eval")
    for i in all_interpretations(V3):
        v = {s: s in i for s in ATOMS}
        assert evaluate(f, i) == eval(src, {}, {"v": v})


@settings(max_examples=300, deadline=None)
@given(formulas)
def test_parse_print_round_trip(f):
    g = flatten(f)
    assert parse_formula(print_formula(f)) == g
    assert parse_formula(print_formula(g)) == g


@settings(max_examples=200, deadline=None)
@given(formulas)
def test_flatten_preserves_semantics(f):
    assert models(f, V3) == models(flatten(f), V3)


@settings(max_examples=200, deadline=None)
@given(formulas)
def test_generated_depth_bound(f):
    assert depth(f) <= 6


def test_deep_formulas_are_reachable():
    from hypothesis import find

    assert depth(find(formulas, lambda f: depth(f) == 6)) == 6


@pytest.mark.parametrize("n", [1, 2, 3])
def test_de_morgan_and_xor_laws(n):
    vocab = Vocabulary("pqr"[:n])
    p, q = Atom("p"), Atom("pqr"[n - 1])
    for i in all_interpretations(vocab):
        assert evaluate(Not(And((p, q))), i) == evaluate(Or((Not(p), Not(q))), i)
        assert evaluate(Not(Or((p, q))), i) == evaluate(And((Not(p), Not(q))), i)
        assert evaluate(Xor(p, q), i) == evaluate(Not(Iff(p, q)), i)


def test_evaluate_examples():
    v = Vocabulary("xyz")
    assert evaluate(Xor(y, z), v.interpretation(["x", "y"])) is True
    assert evaluate(Or((Not(y), Not(z))), v.interpretation(["y", "z"])) is False
    assert evaluate(Or((a, Not(a))), Vocabulary("a").interpretation([])) is True


def test_evaluate_undeclared_atom():
    with pytest.raises(VocabularyError):
        evaluate(b, Vocabulary("a").interpretation([]))


def test_models_examples():
    va = Vocabulary("a")
    assert models(Iff(a, a), va).as_sets() == [frozenset(), frozenset("a")]
    assert models(BOTTOM, va).as_sets() == []
    theory = Theory(Vocabulary("ab"), (Iff(a, Not(b)), Iff(b, Not(a))))
    expected = brute_models("ab", lambda s: ("a" in s) == ("b" not in s))
    assert set(models(theory).as_sets()) == expected == {frozenset("a"), frozenset("b")}


def test_empty_connectives():
    assert conj() == TOP and disj() == BOTTOM
    assert conj(a) == a and disj(a) == a
    assert conj(a, conj(b, x)) == And((a, b, x))
    i = Vocabulary("a").interpretation([])
    assert evaluate(And(()), i) and not evaluate(Or(()), i)


def test_realizer_examples(xyz, x1):
    va = Vocabulary("a")
    f = realizer_formula(ModelSet.from_sets(va, [[]]))
    assert f == Not(a)
    assert models(f, va).as_sets() == [frozenset()]
    assert realizer_formula(ModelSet(va)) == BOTTOM
    g = realizer_formula(x1)
    assert isinstance(g, Or) and len(g.args) == 4
    # independent check over the 8 interpretations
    wanted = {frozenset(), frozenset("xy"), frozenset("xz"), frozenset("yz")}
    assert set(models(g, xyz).as_sets()) == brute_models("xyz", lambda s: s in wanted)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_realizer_formula_exhaustive(n):
    vocab = Vocabulary("abcd"[:n])
    fams = range(1 << (1 << n))
    if n == 4:
        fams = itertools.chain(range(0, 1 << 16, 97), [0, (1 << 16) - 1, 1, 1 << 15])
    for fam in fams:
        x = ModelSet.from_family_mask(vocab, fam)
        assert models(realizer_formula(x), vocab) == x


def test_parse_examples():
    assert parse_formula("xor(y,z)") == Xor(y, z)
    assert parse_formula("and(or(neg(y),neg(z)))") == And((Or((Not(y), Not(z))),))
    assert parse_formula("verum") == TOP and parse_formula("falsum") == BOTTOM
    assert parse_formula(" and( a , or(b, and(x, y)), and(z) ) ") == And((a, Or((b, And((x, y)))), z))
    assert parse_formula("and(a, and(b, x))") == And((a, b, x))


@pytest.mark.parametrize(
    "text, column",
    [("and(a,", 7), ("xor(a)", 6), ("neg(a,b)", 6), ("A", 1), ("and()", 5), ("a b", 3)],
)
def test_parse_errors_report_position(text, column):
    with pytest.raises(ParseError) as err:
        parse_formula(text)
    assert err.value.column == column


def test_print_examples():
    assert print_formula(Or((Not(y), Not(z)))) == "or(neg(y),neg(z))"
    assert print_formula(And(())) == "verum"
    assert print_formula(Imp(a, Iff(b, BOTTOM))) == "imp(a,iff(b,falsum))"


def test_theory_text_round_trip():
    text = "atoms: a,b,c\niff(a,neg(b))\niff(b,neg(a))\n"
    t = parse_theory(text)
    assert t.vocabulary.atoms == ("a", "b", "c")
    assert format_theory(t) == text
    assert models(parse_theory(format_theory(t))) == models(t)
    with pytest.raises(ParseError, match="line 2"):
        parse_theory("a\nand(\n")
