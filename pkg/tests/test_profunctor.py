import random

import pytest
from hypothesis import given, strategies as st

from helpers import SMALL_MONOIDS, parallel_pair, random_category, random_functor, random_profunctor
from multikleisli._order import canon_key
from multikleisli.fincat import chain, check_functor, discrete, monoid_category, terminal, validate_category
from multikleisli.profunctor import (
    ProfCell,
    check_cell,
    check_inverse,
    check_prof_monad,
    check_profunctor,
    closure_classes,
    compose_prof,
    costar,
    from_tables,
    identity_cell,
    identity_prof,
    io_ff_factorize,
    is_bijective,
    is_bijective_on_objects,
    is_full_and_faithful,
    kleisli_object,
    left_unitor,
    monad_of_functor,
    right_unitor,
    star,
    triangle_identities,
)
from oracles import coend_components

seeds = st.integers(0, 10**6)


def tables_of(p):
    A, B = p.source, p.target
    left = {(beta, a, x): p.left(beta, a, x) for b, a, x in p.all_elements() for beta in B.hom_into(b)}
    right = {(alpha, b, x): p.right(alpha, b, x) for b, a, x in p.all_elements() for alpha in A.hom_from(a)}
    els = {c: p.elements(*c) for c in p.cells()}
    return els, left, right


def mutate(p, rng):
    """Redirect one action entry to another element of the same cell."""
    A, B = p.source, p.target
    els, left, right = tables_of(p)
    options = []
    for (beta, a, x), y in left.items():
        for z in els.get((B.src(beta), a), ()):
            if z != y:
                options.append(("left", (beta, a, x), z))
    for (alpha, b, x), y in right.items():
        for z in els.get((b, A.dst(alpha)), ()):
            if z != y:
                options.append(("right", (alpha, b, x), z))
    if not options:
        return None
    side, key, z = rng.choice(options)
    (left if side == "left" else right)[key] = z
    return from_tables(A, B, els, left, right)


def test_hom_profunctor_is_a_profunctor():
    for c in [chain(3), parallel_pair(), monoid_category(*SMALL_MONOIDS["left-zero"])]:
        assert check_profunctor(identity_prof(c)) == []
        assert check_profunctor(identity_prof(c), exhaustive=True) == []


def test_from_tables_fills_identities_and_reports_missing():
    c = chain(2)
    p = from_tables(c, terminal(), {("*", "a"): ["x"], ("*", "b"): ["y"]}, {}, {(("a", "b"), "*", "x"): "y"})
    assert check_profunctor(p) == []
    assert p.right(("a", "b"), "*", "x") == "y"
    q = from_tables(c, terminal(), {("*", "a"): ["x"], ("*", "b"): ["y"]}, {}, {})
    with pytest.raises(ValueError, match="missing right action"):
        check_profunctor(q)


def test_typing_violation():
    c = chain(2)
    p = from_tables(c, terminal(), {("*", "a"): ["x"], ("*", "b"): ["y"]}, {}, {(("a", "b"), "*", "x"): "x"})
    assert [v.law for v in check_profunctor(p)] == ["right-typing"]


@given(seeds)
def test_random_profunctors_pass_both_routes(seed):
    rng = random.Random(seed)
    A, B = random_category(rng), random_category(rng)
    p = random_profunctor(rng, A, B)
    assert check_profunctor(p) == []
    assert check_profunctor(p, exhaustive=True) == []


@given(seeds)
def test_routes_agree_on_broken_tables(seed):
    rng = random.Random(seed)
    A, B = random_category(rng), random_category(rng)
    bad = mutate(random_profunctor(rng, A, B), rng)
    if bad is None:
        return
    fast, full = check_profunctor(bad), check_profunctor(bad, exhaustive=True)
    assert bool(fast) == bool(full)
    assert {(v.law, v.witness) for v in fast} <= {(v.law, v.witness) for v in full}


@given(seeds)
def test_composite_matches_both_oracles(seed):
    rng = random.Random(seed)
    A, B, C = (random_category(rng) for _ in range(3))
    m, n = random_profunctor(rng, A, B), random_profunctor(rng, B, C)
    comp = compose_prof(n, m)
    assert check_profunctor(comp) == []
    oracle = coend_components(n, m)
    for c in C.objects:
        for a in A.objects:
            ours = {frozenset(comp.members(c, a, r)) for r in comp.elements(c, a)}
            assert ours == set(closure_classes(n, m, c, a)) == set(map(frozenset, oracle.get((c, a), [])))
            for r in comp.elements(c, a):
                assert r == min(comp.members(c, a, r), key=canon_key)


def test_composition_with_hom_counts():
    c = chain(3)
    comp = compose_prof(identity_prof(c), identity_prof(c))
    assert comp.count() == identity_prof(c).count() == 6


@given(seeds)
def test_unitors_and_cell_routes(seed):
    rng = random.Random(seed)
    A, B = random_category(rng), random_category(rng)
    m = random_profunctor(rng, A, B)
    for comp, f, g in (left_unitor(m), right_unitor(m)):
        assert check_inverse(f, g) == []
        assert is_bijective(f) and is_bijective(g)
        for cell in (f, g):
            assert check_cell(cell) == check_cell(cell, exhaustive=True) == []


@given(seeds)
def test_cell_routes_agree_on_non_natural_cells(seed):
    rng = random.Random(seed)
    A, B = random_category(rng), random_category(rng)
    m = random_profunctor(rng, A, B)
    table = {}
    for b, a, x in m.all_elements():
        table[(b, a, x)] = rng.choice(m.elements(b, a))
    cell = ProfCell(m, m, lambda b, a, x: table[(b, a, x)])
    fast, full = check_cell(cell), check_cell(cell, exhaustive=True)
    assert bool(fast) == bool(full)
    assert check_cell(identity_cell(m)) == []


def test_cell_typing_violation():
    c = chain(2)
    h = identity_prof(c)
    cell = ProfCell(h, h, lambda b, a, x: ("zz",))
    assert {v.law for v in check_cell(cell)} == {"cell-typing"}


@given(seeds)
def test_star_costar_adjunction(seed):
    rng = random.Random(seed)
    A, B = random_category(rng, 3), random_category(rng, 3)
    f = random_functor(rng, A, B)
    if f is None:
        return
    assert check_profunctor(star(f)) == [] and check_profunctor(costar(f)) == []
    assert triangle_identities(f) == []


@given(seeds)
def test_io_ff_factorization(seed):
    rng = random.Random(seed)
    A, B = random_category(rng, 3), random_category(rng, 3)
    f = random_functor(rng, A, B)
    if f is None:
        return
    M, unit, mult, _ = monad_of_functor(f)
    assert check_prof_monad(M, unit, mult) == []
    io, ff = io_ff_factorize(f)
    assert validate_category(io.target) == []
    assert check_functor(io) == [] and check_functor(ff) == []
    assert is_bijective_on_objects(io)
    assert is_full_and_faithful(ff)
    for x in A.objects:
        assert ff.ob(io.ob(x)) == f.ob(x)
    for g in A.morphisms():
        assert ff.mor(io.mor(g)) == f.mor(g)


def test_kleisli_object_of_identity_monad():
    c = chain(3)
    h = identity_prof(c)
    _, lam, _ = left_unitor(h)
    C, k = kleisli_object(h, identity_cell(h), lam)
    assert validate_category(C) == []
    assert C.num_morphisms() == c.num_morphisms()


def test_functor_missing_an_object_is_not_bijective_on_objects():
    d = discrete(["x"])
    f = random_functor(random.Random(0), d, chain(2))
    assert not is_bijective_on_objects(f)
