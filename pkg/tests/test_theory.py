import random
from itertools import product

import pytest

from multikleisli.builtins import BUILTIN_THEORIES, builtin_theory, initial_theory, terminal_theory, two_sorted_terminal
from multikleisli.doctrine import CARTESIAN, DOCTRINES, PLANAR, SYMMETRIC
from multikleisli.fincat import chain, terminal
from multikleisli.kleisli import kleisli_unit, subst_compose
from multikleisli.profunctor import Profunctor, check_cell
from multikleisli.schemas import dump_theory
from multikleisli.theory import (
    CeilingExceeded,
    MonoidAlgebra,
    Multicategory,
    builtin_algebras,
    builtin_op,
    ceiling_from_env,
    check_algebra,
    check_model,
    check_normality,
    check_theory,
    check_theory_map,
    clone_of_algebra,
    close_clone,
    compose_theory_maps,
    endomorphism_theory,
    enumerate_models,
    enumerate_theory_maps,
    identity_theory_map,
    induced_monad_on_set,
    subst_cell,
    terminal_algebra,
    truncate_theory,
    unit_cell,
)
from mutations import mutations, verdict
from oracles import meet_clone_tables

K = 3
FAST_ALGEBRAS = {
    PLANAR: ["terminal", "Z/2", "Z/3", "and", "left-zero", "chain3-max"],
    SYMMETRIC: ["terminal", "Z/2", "Z/3", "and", "chain3-max"],
    CARTESIAN: ["terminal", "chain2-min", "chain3-min"],
}


@pytest.mark.parametrize("name", sorted(BUILTIN_THEORIES))
def test_builtins_pass_on_both_routes(name):
    m = builtin_theory(name, K)
    assert check_theory(m) == []
    assert check_theory(m, exhaustive=True) == []


def test_two_sorted_terminal_passes():
    for d in DOCTRINES:
        m = two_sorted_terminal(d, 2)
        assert not m.normal
        assert check_theory(m) == []
        # a unary operation x -> y with no sort arrow behind it
        assert {v.witness for v in check_normality(m)} == {("x", "y"), ("y", "x")}


def test_theories_over_a_chain_of_sorts():
    for d in DOCTRINES:
        for m in (initial_theory(d, 2, sorts=chain(2)), terminal_theory(d, 2, sorts=chain(2))):
            assert check_theory(m) == [] == check_theory(m, exhaustive=True)


@pytest.mark.parametrize("name", ["ass", "semilattice", "z2", "bounded-semilattice", "z2-group", "comm", "as"])
def test_mutations_routes_agree(name):
    rng = random.Random(17)
    doc = dump_theory(builtin_theory(name, K))
    for label, mutant in mutations(doc, rng, per_kind=3):
        fast, full = verdict(mutant), verdict(mutant, exhaustive=True)
        assert bool(fast) == bool(full), label
        assert fast, label


def test_broken_substitution_is_caught():
    m = builtin_theory("ass", K)

    def gamma(bs, a, f, inners):
        r = m._gamma(bs, a, f, inners)
        # reverse every composite of length three
        return tuple(reversed(r)) if len(r) == 3 else r

    laws = {v.law for v in check_theory(m.with_gamma(gamma))}
    assert laws and laws <= {"associativity", "unit-left", "unit-right", "equivariance-inner", "equivariance-outer"}


def test_bad_unit_is_caught():
    m = builtin_theory("ass", K)
    bad = Multicategory(m.carrier, {"*": (1, 0)}, m._gamma, name="bad")
    assert check_theory(bad)


def test_carrier_must_be_an_endo_profunctor():
    p = kleisli_unit(chain(2), PLANAR, 2)
    other = Profunctor(terminal(), p.target, {}, p.left, p.right)
    with pytest.raises(ValueError):
        Multicategory(other, {}, lambda *a: None)


def test_normality():
    assert check_normality(builtin_theory("initial-cartesian", K)) == []
    neg = clone_of_algebra(2, {"neg": builtin_op("neg", 2)}, 2)
    assert not neg.normal
    assert [v.law for v in check_normality(neg)] == ["normality"]
    assert check_theory(neg) == []


def test_arity_counts_of_builtins():
    assert builtin_theory("ass", 4).arity_counts() == {0: 1, 1: 1, 2: 2, 3: 6, 4: 24}
    assert builtin_theory("initial-cartesian", 3).arity_counts() == {0: 0, 1: 1, 2: 2, 3: 3}
    assert builtin_theory("semilattice", 3).arity_counts() == {0: 0, 1: 1, 2: 3, 3: 7}
    # x xor x is the constant 0, so every linear form without constant term
    assert builtin_theory("z2", 3).arity_counts() == {0: 0, 1: 2, 2: 4, 3: 8}


def test_close_clone_against_brute_force():
    # meet clone: min over nonempty subsets of the variables
    for n in (1, 2, 3):
        assert set(close_clone(2, {"meet": builtin_op("meet", 2)}, n)) == meet_clone_tables(n)
    # xor clone: sums over any subset of the variables (x xor x = 0)
    for n in (1, 2, 3):
        inputs = list(product((0, 1), repeat=n))
        linear = {tuple(sum(x[i] for i in S) % 2 for x in inputs) for S in _subsets(n)}
        assert set(close_clone(2, {"xor": builtin_op("xor", 2)}, n)) == linear


def _subsets(n):
    for mask in range(1 << n):
        yield [i for i in range(n) if mask >> i & 1]


def test_clone_argument_errors():
    with pytest.raises(ValueError):
        builtin_op("nand", 2)
    with pytest.raises(ValueError):
        clone_of_algebra(0, {}, 2)
    with pytest.raises(ValueError):
        clone_of_algebra(2, {}, 0)


def test_builtin_theory_unknown_name():
    with pytest.raises(KeyError, match="unknown builtin"):
        builtin_theory("lie", 2)


@pytest.mark.parametrize("d", DOCTRINES)
def test_builtin_algebras_are_strict(d):
    algebras = builtin_algebras(d)
    assert len(algebras) >= 5
    for name, x in algebras.items():
        if name in FAST_ALGEBRAS[d]:
            assert check_algebra(x) == [], name


def test_noncommutative_monoid_is_not_a_symmetric_algebra():
    x = MonoidAlgebra(["e", "p", "q"], lambda a, b: b if a == "e" else a, "e", SYMMETRIC, name="left-zero")
    assert check_algebra(x)


@pytest.mark.parametrize("d", DOCTRINES)
def test_endomorphism_theories(d):
    algebras = builtin_algebras(d)
    for name in FAST_ALGEBRAS[d]:
        m = endomorphism_theory(algebras[name], K)
        assert check_theory(m) == [], name


def test_theory_map_enumeration():
    ass, comm = builtin_theory("ass", K), builtin_theory("comm", K)
    assert len(enumerate_theory_maps(ass, comm)) == 1
    assert enumerate_theory_maps(comm, ass) == []
    assert len(enumerate_theory_maps(ass, ass)) == 2
    assert len(enumerate_theory_maps(builtin_theory("initial-symmetric", K), ass)) == 1
    with pytest.raises(ValueError, match="doctrine"):
        enumerate_theory_maps(builtin_theory("as", K), comm)


def test_theory_map_identity_and_composition():
    ass, comm = builtin_theory("ass", K), builtin_theory("comm", K)
    ident = identity_theory_map(ass)
    assert check_theory_map(ident) == []
    (t,) = enumerate_theory_maps(ass, comm)
    assert check_theory_map(compose_theory_maps(t, ident)) == []
    assert compose_theory_maps(t, ident) == t
    flip = [s for s in enumerate_theory_maps(ass, ass) if s != ident]
    assert len(flip) == 1
    assert compose_theory_maps(flip[0], flip[0]) == ident


def test_theory_map_violation():
    ass = builtin_theory("ass", K)
    broken = identity_theory_map(ass)
    broken.components[(("*", "*"), "*", (0, 1))] = (1, 0)
    assert check_theory_map(broken)


def test_ceiling(monkeypatch):
    ass = builtin_theory("ass", K)
    with pytest.raises(CeilingExceeded):
        enumerate_theory_maps(ass, ass, ceiling=0)
    monkeypatch.setenv("MULTIKLEISLI_CEILING", "7")
    assert ceiling_from_env() == 7
    monkeypatch.setenv("MULTIKLEISLI_CEILING", "many")
    with pytest.raises(ValueError):
        ceiling_from_env()


def test_models_in_algebras():
    comm = builtin_theory("comm", K)
    x = terminal_algebra(SYMMETRIC)
    models = enumerate_models(comm, x)
    assert len(models) == 1
    assert check_model(comm, x, models[0]) == []
    z2 = builtin_algebras(SYMMETRIC)["Z/2"]
    for t in enumerate_models(comm, z2):
        assert check_model(comm, z2, t) == []
    with pytest.raises(ValueError):
        enumerate_models(comm, terminal_algebra(PLANAR))


def test_truncation():
    m = builtin_theory("ass", 4)
    t = truncate_theory(m, 2)
    assert t.bound == 2 and t.arity_counts() == {0: 1, 1: 1, 2: 2}
    assert check_theory(t) == []
    assert truncate_theory(m, 4) is m
    with pytest.raises(ValueError):
        truncate_theory(m, 5)


@pytest.mark.parametrize("name", ["as", "ass", "initial-cartesian", "semilattice"])
def test_unit_and_substitution_cells_are_natural(name):
    m = builtin_theory(name, K)
    u = kleisli_unit(m.sorts, m.doctrine, K)
    assert check_cell(unit_cell(m, u)) == []
    mm = subst_compose(m.carrier, m.carrier)
    assert check_cell(subst_cell(m, mm)) == []


@pytest.mark.parametrize(
    "name,size",
    [
        ("terminal-cartesian", 1),  # every term collapses
        ("initial-symmetric", 2),  # identity monad
        ("initial-cartesian", 2),
        ("semilattice", 3),  # nonempty subsets
        ("bounded-semilattice", 4),  # all subsets
        ("z2", 4),  # F_2-linear combinations, zero included via x xor x
        ("z2-group", 4),  # the free vector space over F_2
        ("comm", 10),
        ("ass", 15),  # lists: the symmetric presentation of As
    ],
)
def test_induced_monads_on_two_letters(name, size):
    T = induced_monad_on_set(builtin_theory(name, K), [0, 1])
    assert len(T.TX) == size
    assert T.check_laws() == []


def test_induced_monad_needs_one_sort():
    with pytest.raises(ValueError):
        induced_monad_on_set(two_sorted_terminal(PLANAR, 2), [0])
