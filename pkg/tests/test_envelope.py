from itertools import permutations, product

import pytest

from multikleisli.builtins import builtin_theory, two_sorted_terminal
from multikleisli.doctrine import CARTESIAN, DOCTRINES, PLANAR, SYMMETRIC, word_category
from multikleisli.envelope import (
    EnvelopeError,
    check_envelope,
    check_envelope_unit,
    envelope_unit,
    free_algebra_envelope,
    lawvere_theory,
    planar_prop,
    prop,
    unit_is_bijective,
)
from multikleisli.fincat import validate_category


def ordered_fibre_maps(m, n):
    """Maps m -> n with a linear order on every fibre, by enumeration."""
    count = 0
    for f in product(range(n), repeat=m):
        orders = 1
        for j in range(n):
            fibre = [i for i in range(m) if f[i] == j]
            orders *= sum(1 for _ in permutations(fibre))
        count += orders
    return count


@pytest.mark.parametrize(
    "name,K",
    [("as", 3), ("comm", 3), ("ass", 3), ("initial-planar", 3), ("initial-symmetric", 3), ("initial-cartesian", 3), ("terminal-cartesian", 3), ("semilattice", 2)],
)
def test_envelopes_are_strict_monoidal(name, K):
    e = free_algebra_envelope(builtin_theory(name, K))
    assert check_envelope(e) == []
    t = envelope_unit(e.theory, e)
    assert check_envelope_unit(e.theory) == []
    assert unit_is_bijective(t)


def test_prop_of_ass_counts_ordered_fibres():
    e = prop(builtin_theory("ass", 3))
    for (m, n), c in e.hom_counts().items():
        assert c == ordered_fibre_maps(m, n)


def test_restriction_to_single_outputs_is_the_theory():
    m = builtin_theory("ass", 3)
    e = prop(m)
    for k in range(4):
        bs = ("*",) * k
        assert len(e.hom(bs, ("*",))) == len(m.elements(bs, "*"))


def test_embedding_of_arity_maps():
    m = builtin_theory("initial-symmetric", 3)
    e = prop(m)
    S = word_category(m.sorts, SYMMETRIC, 3)
    for x in S.objects:
        for y in S.objects:
            # the initial theory's envelope is the word category itself
            assert len(e.hom(x, y)) == len(S.hom(x, y))
            assert len({e.embed(u) for u in S.hom(x, y)}) == len(S.hom(x, y))


def test_two_sorted_envelope():
    for d in DOCTRINES:
        e = free_algebra_envelope(two_sorted_terminal(d, 2))
        assert check_envelope(e) == []


def test_doctrine_guards():
    with pytest.raises(EnvelopeError, match="expected a cartesian"):
        lawvere_theory(builtin_theory("comm", 2))
    with pytest.raises(EnvelopeError, match="expected a symmetric"):
        prop(builtin_theory("as", 2))
    with pytest.raises(EnvelopeError, match="expected a planar"):
        planar_prop(builtin_theory("ass", 2))


def test_failing_theory_is_refused():
    m = builtin_theory("ass", 3)
    bad = m.with_gamma(lambda bs, a, f, inners: tuple(reversed(m._gamma(bs, a, f, inners))))
    with pytest.raises(EnvelopeError, match="law check"):
        free_algebra_envelope(bad)
    assert free_algebra_envelope(bad, check=False) is not None


def test_tampered_composition_is_reported():
    e = prop(builtin_theory("ass", 2))
    x = ("*", "*")
    (swap,) = [u for u in word_category(e.sorts, SYMMETRIC, 2).hom(x, x) if u.index == (1, 0)]
    g = e.embed(swap)
    assert e.compose(g, g) == e.identity(x)
    e.overrides[(g, g)] = g  # the swap no longer squares to the identity
    assert validate_category(e)
    assert check_envelope(e)


def test_cartesian_envelope_is_partial_only_past_the_bound():
    e = lawvere_theory(builtin_theory("initial-cartesian", 2))
    assert validate_category(e, partial=True) == []
    one, two = ("*",), ("*", "*")
    copy = e.embed(word_category(e.sorts, CARTESIAN, 2).hom(one, two)[0])
    assert copy is not None and e.compose(e.identity(two), copy) == copy


def test_planar_envelope_has_no_crossings():
    e = planar_prop(builtin_theory("as", 3))
    assert e.hom_counts()[(2, 2)] == 3
    assert e.hom_counts()[(0, 1)] == 1
    assert PLANAR == e.doctrine
