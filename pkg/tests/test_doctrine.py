import random
from math import factorial

import pytest
from hypothesis import given, strategies as st

from helpers import SMALL_MONOIDS, random_category, random_functor, small_category
from multikleisli.doctrine import (
    CARTESIAN,
    DOCTRINES,
    PLANAR,
    SYMMETRIC,
    ArityMap,
    block_reindex,
    check_doctrine,
    compose_maps,
    doctrine_leq,
    identity_map,
    include_map,
    index_valid,
    inclusion_functor,
    map_arity,
    mult_flatten,
    restrict_map,
    s_functor,
    s_hom,
    serialize_map,
    tensor_maps,
    unit_functor,
    word_category,
)
from multikleisli.fincat import chain, check_functor, discrete, monoid_category, terminal, validate_category
from test_fincat import closure

seeds = st.integers(0, 10**6)
doctrines = st.sampled_from(DOCTRINES)


def test_doctrine_order():
    assert doctrine_leq(PLANAR, CARTESIAN) and doctrine_leq(SYMMETRIC, SYMMETRIC)
    assert not doctrine_leq(CARTESIAN, SYMMETRIC)
    with pytest.raises(ValueError):
        check_doctrine("braided")


def test_index_shapes():
    assert index_valid(PLANAR, 2, 2, (0, 1)) and not index_valid(PLANAR, 2, 2, (1, 0))
    assert index_valid(SYMMETRIC, 2, 2, (1, 0)) and not index_valid(SYMMETRIC, 2, 2, (0, 0))
    assert index_valid(CARTESIAN, 2, 3, (0, 0, 1)) and not index_valid(CARTESIAN, 2, 1, (2,))


@pytest.mark.parametrize("m,n", [(0, 0), (0, 2), (1, 3), (2, 2), (3, 3), (3, 1)])
def test_hom_counts_over_terminal(m, n):
    one = terminal()
    x, y = ("*",) * m, ("*",) * n
    assert len(s_hom(x, y, PLANAR, one)) == int(m == n)
    assert len(s_hom(x, y, SYMMETRIC, one)) == (factorial(n) if m == n else 0)
    assert len(s_hom(x, y, CARTESIAN, one)) == m**n


def test_hom_counts_with_base_arrows():
    c = chain(2)
    assert len(s_hom(("a", "a"), ("b", "a"), PLANAR, c)) == 1
    assert len(s_hom(("a", "b"), ("b", "a"), SYMMETRIC, c)) == 1
    # each target letter picks any source letter below it
    assert len(s_hom(("a", "b"), ("b", "b", "a"), CARTESIAN, c)) == 2 * 2 * 1


@pytest.mark.parametrize("d", DOCTRINES)
def test_word_categories_are_categories(d):
    for base in (terminal(), chain(2), discrete("xy"), monoid_category(*SMALL_MONOIDS["Z/2"])):
        S = word_category(base, d, 2)
        assert validate_category(S) == []
        assert all(S.has_morphism(u) for u in S.morphisms())
        assert closure(S, S.generators()) == set(S.morphisms())


@pytest.mark.parametrize("d", DOCTRINES)
def test_generators_reach_everything_at_bound_three(d):
    for base in (chain(2), monoid_category(*SMALL_MONOIDS["Z/3"])):
        S = word_category(base, d, 3)
        assert closure(S, S.generators()) == set(S.morphisms())


def test_word_category_is_shared_and_named():
    c = chain(2)
    assert word_category(c, PLANAR, 2) is word_category(c, PLANAR, 2)
    assert word_category(c, PLANAR, 2) != word_category(c, SYMMETRIC, 2)
    assert repr(word_category(terminal(), CARTESIAN, 1)).startswith("<WordCategory cartesian K=1")


def test_has_morphism_rejects_foreign_data():
    S = word_category(chain(2), SYMMETRIC, 2)
    good = ArityMap(SYMMETRIC, ("a", "b"), ("b", "a"), (1, 0), (("b", "b"), ("a", "a")))
    assert S.has_morphism(good)
    assert not S.has_morphism(good._replace(doctrine=PLANAR))
    assert not S.has_morphism(good._replace(index=(0, 0)))
    assert not S.has_morphism(good._replace(arrows=(("a", "b"), ("a", "a"))))
    assert not S.has_morphism(("a", "b"))


@given(seeds, doctrines)
def test_composition_is_associative_and_unital(seed, d):
    rng = random.Random(seed)
    base = small_category(rng)
    S = word_category(base, d, 3)
    w = [rng.choice(S.objects) for _ in range(4)]
    homs = [S.hom(w[i], w[i + 1]) for i in range(3)]
    if not all(homs):
        return
    f, g, h = (rng.choice(hs) for hs in homs)
    assert compose_maps(h, compose_maps(g, f, base), base) == compose_maps(compose_maps(h, g, base), f, base)
    assert compose_maps(f, identity_map(w[0], d, base), base) == f
    assert compose_maps(identity_map(w[1], d, base), f, base) == f


def test_compose_rejects_mismatch():
    one = terminal()
    u = identity_map(("*",), PLANAR, one)
    with pytest.raises(ValueError):
        compose_maps(u, identity_map((), PLANAR, one), one)


@given(seeds, doctrines)
def test_tensor_is_functorial(seed, d):
    rng = random.Random(seed)
    base = small_category(rng)
    S = word_category(base, d, 2)
    pairs = []
    for _ in range(2):
        x, y, z = (rng.choice(S.objects) for _ in range(3))
        f, g = S.hom(x, y), S.hom(y, z)
        if not f or not g:
            return
        pairs.append((rng.choice(f), rng.choice(g)))
    (f1, g1), (f2, g2) = pairs
    lhs = compose_maps(tensor_maps([g1, g2], d), tensor_maps([f1, f2], d), base)
    rhs = tensor_maps([compose_maps(g1, f1, base), compose_maps(g2, f2, base)], d)
    assert lhs == rhs


def test_block_reindex_moves_blocks():
    base = discrete("xyz")
    u = block_reindex([("x", "y"), ("z",)], [1, 0], SYMMETRIC, base)
    assert u.dst == ("z", "x", "y") and u.index == (2, 0, 1)
    assert index_valid(SYMMETRIC, 3, 3, u.index)
    dup = block_reindex([("x",), ("y",)], [0, 0], CARTESIAN, base)
    assert dup.dst == ("x", "x") and dup.index == (0, 0)


def test_include_and_restrict_round_trip():
    u = ArityMap(PLANAR, ("*", "*"), ("*", "*"), (0, 1), (("id", "*"),) * 2)
    v = include_map(u, CARTESIAN)
    assert v.doctrine == CARTESIAN and restrict_map(v, PLANAR) == u
    swap = v._replace(index=(1, 0))
    assert restrict_map(swap, PLANAR) is None
    assert restrict_map(swap, SYMMETRIC).doctrine == SYMMETRIC
    with pytest.raises(ValueError):
        include_map(v, PLANAR)


@given(seeds, doctrines)
def test_word_functors_are_functors(seed, d):
    rng = random.Random(seed)
    A, B = random_category(rng, 2), random_category(rng, 2)
    f = random_functor(rng, A, B)
    if f is None:
        return
    assert check_functor(s_functor(f, d, 2)) == []
    assert check_functor(unit_functor(A, d, 2)) == []


def test_inclusion_functors():
    c = chain(2)
    assert check_functor(inclusion_functor(c, PLANAR, CARTESIAN, 2)) == []
    assert check_functor(inclusion_functor(c, SYMMETRIC, CARTESIAN, 2)) == []
    with pytest.raises(ValueError):
        inclusion_functor(c, CARTESIAN, PLANAR, 2)


def test_map_arity_and_flatten_and_serialize():
    c2, c1 = chain(2), terminal()
    f = random_functor(random.Random(1), c2, c1)
    u = ArityMap(CARTESIAN, ("a", "b"), ("b",), (1,), (("b", "b"),))
    assert map_arity(f, u) == ArityMap(CARTESIAN, ("*", "*"), ("*",), (1,), (("id", "*"),))
    assert mult_flatten([("a",), (), ("b", "a")]) == ("a", "b", "a")
    assert serialize_map(u) == {"doctrine": "cartesian", "src": ["a", "b"], "dst": ["b"], "index": [1], "arrows": [("b", "b")]}
