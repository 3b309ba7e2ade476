import random

import pytest
from hypothesis import given, strategies as st

from helpers import SMALL_MONOIDS, parallel_pair, random_category, random_functor
from multikleisli._order import UnionFind, canon_sorted
from multikleisli.fincat import (
    FinCategory,
    Functor,
    MalformedError,
    NatTransformation,
    chain,
    check_functor,
    check_nat,
    compose_functors,
    constant_functor,
    discrete,
    empty_category,
    enumerate_functors,
    identity_functor,
    monoid_category,
    opposite,
    poset_category,
    product_category,
    terminal,
    validate_category,
)

seeds = st.integers(0, 10**6)


def closure(c, gens):
    reached = {c.identity(x) for x in c.objects} | set(gens)
    frontier = list(reached)
    while frontier:
        new = []
        for f in frontier:
            for g in list(reached):
                for h in (c.compose(g, f), c.compose(f, g)):
                    if h is not None and h not in reached:
                        reached.add(h)
                        new.append(h)
        frontier = new
    return reached


def test_constructors_are_categories():
    for c in [terminal(), empty_category(), chain(3), discrete("xyz"), parallel_pair()] + [monoid_category(*m) for m in SMALL_MONOIDS.values()]:
        assert validate_category(c) == []


def test_chain_and_counts():
    c = chain(3)
    assert c.objects == ("a", "b", "c")
    assert c.num_morphisms() == 6
    assert c.hom("c", "a") == ()
    assert c.compose(("b", "c"), ("a", "b")) == ("a", "c")
    assert c.compose_path(("b", "c"), ("a", "b"), ("a", "a")) == ("a", "c")
    assert repr(c) == "<chain3: 3 objects, 6 morphisms>"


def test_malformed_inputs_are_rejected():
    with pytest.raises(MalformedError):
        FinCategory(["x", "x"], {}, {}, {})
    with pytest.raises(MalformedError):
        FinCategory(["x"], {"f": ("x", "y")}, {"x": "f"}, {})
    with pytest.raises(MalformedError):
        FinCategory(["x"], {"f": ("x", "x")}, {}, {})
    with pytest.raises(MalformedError):
        FinCategory(["x"], {"f": ("x", "x")}, {"x": "f"}, {("f", "g"): "f"})
    with pytest.raises(MalformedError):
        poset_category([0, 1, 2], lambda a, b: b - a in (0, 1))


def test_broken_tables_are_reported():
    mor = {"1": ("x", "x"), "e": ("x", "x")}
    # e∘e missing
    c = FinCategory(["x"], mor, {"x": "1"}, {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e"})
    assert [v.law for v in validate_category(c)] == ["composition-total"]
    assert validate_category(c, partial=True) == []
    # left-zero-like table that is not associative
    comp = {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "1"}
    mor3 = dict(mor, f=("x", "x"))
    comp3 = {**comp, ("1", "f"): "f", ("f", "1"): "f", ("f", "f"): "f", ("e", "f"): "e", ("f", "e"): "f"}
    bad = FinCategory(["x"], mor3, {"x": "1"}, comp3)
    laws = {v.law for v in validate_category(bad)}
    assert laws == {"associativity"}


def test_violation_text_and_order():
    c = FinCategory(["x"], {"1": ("x", "x"), "e": ("x", "x")}, {"x": "1"}, {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e"})
    (v,) = validate_category(c)
    assert str(v) == "composition-total: ('e', 'e')"


@given(seeds)
def test_random_categories_validate(seed):
    c = random_category(random.Random(seed))
    assert validate_category(c) == []
    assert validate_category(opposite(c)) == []


@given(seeds)
def test_generators_generate(seed):
    c = random_category(random.Random(seed))
    gens = c.generators()
    idents = {c.identity(x) for x in c.objects}
    assert not idents & set(gens)
    assert closure(c, gens) == set(c.morphisms())
    assert c.generators() is gens


def test_generators_of_chain_include_covers():
    # covers are indecomposable, so every generating set contains them
    assert {("a", "b"), ("b", "c"), ("c", "d")} <= set(chain(4).generators())
    assert discrete("xy").generators() == ()


def test_opposite_is_involutive():
    c = chain(3)
    assert opposite(opposite(c)) == c
    assert opposite(c).hom("b", "a") == (("a", "b"),)


def test_product_category():
    p = product_category(chain(2), monoid_category(*SMALL_MONOIDS["Z/2"]))
    assert validate_category(p) == []
    assert p.num_morphisms() == 3 * 2


def test_functor_checks():
    c = chain(2)
    assert check_functor(identity_functor(c)) == []
    assert check_functor(constant_functor(c, chain(3), "b")) == []
    swap = Functor(c, c, {"a": "b", "b": "a"}, {("a", "a"): ("b", "b"), ("b", "b"): ("a", "a"), ("a", "b"): ("a", "b")})
    assert [v.law for v in check_functor(swap)] == ["morphism-typing"]
    lost = Functor(c, c, {"a": "q", "b": "a"}, lambda f: f)
    assert [v.law for v in check_functor(lost)] == ["object-map"]


def test_enumerate_functors_counts():
    # monotone maps between chains; monoid maps Z/2 -> Z/2
    assert len(enumerate_functors(chain(2), chain(3))) == 6
    assert len(enumerate_functors(chain(3), chain(2))) == 4
    z2 = monoid_category(*SMALL_MONOIDS["Z/2"])
    assert len(enumerate_functors(z2, z2)) == 2
    assert len(enumerate_functors(z2, monoid_category(*SMALL_MONOIDS["Z/3"]))) == 1
    assert len(enumerate_functors(chain(2), chain(3), limit=2)) == 2
    assert len(enumerate_functors(empty_category(), chain(2))) == 1


@given(seeds)
def test_enumerated_functors_compose(seed):
    rng = random.Random(seed)
    A, B, C = (random_category(rng, 3) for _ in range(3))
    f, g = random_functor(rng, A, B), random_functor(rng, B, C)
    if f is None or g is None:
        return
    gf = compose_functors(g, f)
    assert check_functor(gf) == []
    assert compose_functors(identity_functor(C), gf) == gf


def test_natural_transformations():
    c2, c3 = chain(2), chain(3)
    lo, hi = constant_functor(c2, c3, "a"), constant_functor(c2, c3, "c")
    assert check_nat(NatTransformation(lo, hi, {"a": ("a", "c"), "b": ("a", "c")})) == []
    assert [v.law for v in check_nat(NatTransformation(hi, lo, {"a": ("a", "c"), "b": ("a", "c")}))] == ["component-typing"] * 2
    inc = Functor(c2, c3, {"a": "a", "b": "b"}, {("a", "a"): ("a", "a"), ("b", "b"): ("b", "b"), ("a", "b"): ("a", "b")})
    assert check_nat(NatTransformation(inc, hi, {"a": ("a", "c"), "b": ("b", "c")})) == []


def test_union_find_canonical_representatives():
    uf = UnionFind([3, 1, 2, (0, "x")])
    uf.union(3, 2)
    uf.union(2, (0, "x"))
    assert 3 in uf and 9 not in uf
    assert uf.find(3) == uf.find((0, "x"))
    canon = uf.canonical()
    assert canon[3] == canon[2] == canon[(0, "x")] == 2
    assert canon[1] == 1


def test_canonical_order_is_total_on_mixed_values():
    xs = [("b", 1), "a", 2, None, (1,), ("a",), frozenset({1})]
    assert canon_sorted(xs) == canon_sorted(list(reversed(xs)))
