"""Named theories used by the tests, the docs and the CLI."""

from __future__ import annotations

from itertools import permutations
from typing import Callable, Dict, Optional

from .doctrine import CARTESIAN, PLANAR, SYMMETRIC, check_doctrine, compose_maps, identity_map, tensor_maps, word_category
from .fincat import FinCategory, discrete, terminal
from .kleisli import kleisli_unit
from .profunctor import Profunctor
from .theory.clones import builtin_op, clone_of_algebra
from .theory.multicategory import Multicategory


def initial_theory(doctrine: str, K: int, sorts: Optional[FinCategory] = None) -> Multicategory:
    """Only what the unit forces: the arity maps bs -> (a)."""
    d = check_doctrine(doctrine)
    A = sorts or terminal()
    carrier = kleisli_unit(A, d, K)

    def gamma(bs, a, u, inners):
        return compose_maps(u, tensor_maps([v for _, v in inners], d), A)

    unit = {a: identity_map((a,), d, A) for a in A.objects}
    return Multicategory(carrier, unit, gamma, name=f"initial-{d}")


def terminal_theory(doctrine: str, K: int, sorts: Optional[FinCategory] = None) -> Multicategory:
    """One operation for every input word and output sort."""
    d = check_doctrine(doctrine)
    A = sorts or terminal()
    SA = word_category(A, d, K)
    elements = {(bs, a): ["t"] for bs in SA.objects for a in A.objects}
    carrier = Profunctor(A, SA, elements, lambda u, a, x: "t", lambda alpha, bs, x: "t", name=f"terminal-{d}")
    # normal only when every sort hom is a singleton, as the unary part is
    normal = all(len(A.hom(x, y)) == 1 for x in A.objects for y in A.objects)
    return Multicategory(carrier, {a: "t" for a in A.objects}, lambda bs, a, x, inners: "t", normal=normal, name=f"terminal-{d}")


def as_theory(K: int) -> Multicategory:
    m = terminal_theory(PLANAR, K)
    m.name = "As"
    return m


def comm_theory(K: int) -> Multicategory:
    m = terminal_theory(SYMMETRIC, K)
    m.name = "Comm"
    return m


def ass_theory(K: int) -> Multicategory:
    """Symmetric operad of total orders: an arity-n element lists the
    input positions in the order they are multiplied."""
    A = terminal()
    SA = word_category(A, SYMMETRIC, K)
    elements = {(("*",) * n, "*"): list(permutations(range(n))) for n in range(K + 1)}

    def left(u, a, f):
        return tuple(u.index[p] for p in f)

    carrier = Profunctor(A, SA, elements, left, lambda alpha, bs, f: f, name="Ass")

    def gamma(bs, a, f, inners):
        offsets = []
        off = 0
        for cs, _ in inners:
            offsets.append(off)
            off += len(cs)
        return tuple(offsets[p] + q for p in f for q in inners[p][1])

    return Multicategory(carrier, {"*": (0,)}, gamma, name="Ass")


def two_sorted_terminal(doctrine: str, K: int) -> Multicategory:
    m = terminal_theory(doctrine, K, sorts=discrete(["x", "y"], name="two"))
    m.name = f"terminal-{doctrine}-2"
    return m


def semilattice_clone(K: int) -> Multicategory:
    return clone_of_algebra(2, {"meet": builtin_op("meet", 2)}, K, name="semilattice")


def z2_clone(K: int) -> Multicategory:
    return clone_of_algebra(2, {"xor": builtin_op("xor", 2)}, K, name="Z/2")


def bounded_semilattice_clone(K: int) -> Multicategory:
    ops = {"meet": builtin_op("meet", 2), "one": builtin_op("one", 2)}
    return clone_of_algebra(2, ops, K, name="bounded-semilattice")


def z2_group_clone(K: int) -> Multicategory:
    """Like ``z2_clone`` but with the constant 0 as a nullary operation."""
    return clone_of_algebra(2, {"xor": builtin_op("xor", 2), "zero": builtin_op("zero", 2)}, K, name="Z/2-group")


BUILTIN_THEORIES: Dict[str, Callable[[int], Multicategory]] = {
    "initial-planar": lambda K: initial_theory(PLANAR, K),
    "initial-symmetric": lambda K: initial_theory(SYMMETRIC, K),
    "initial-cartesian": lambda K: initial_theory(CARTESIAN, K),
    "terminal-planar": lambda K: terminal_theory(PLANAR, K),
    "terminal-symmetric": lambda K: terminal_theory(SYMMETRIC, K),
    "terminal-cartesian": lambda K: terminal_theory(CARTESIAN, K),
    "as": as_theory,
    "comm": comm_theory,
    "ass": ass_theory,
    "semilattice": semilattice_clone,
    "z2": z2_clone,
    "bounded-semilattice": bounded_semilattice_clone,
    "z2-group": z2_group_clone,
}


def builtin_theory(name: str, K: int) -> Multicategory:
    try:
        factory = BUILTIN_THEORIES[name]
    except KeyError:
        raise KeyError(f"unknown builtin theory {name!r}; known: {sorted(BUILTIN_THEORIES)}") from None
    return factory(K)
