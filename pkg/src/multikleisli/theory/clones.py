"""Abstract clones generated by finite operation tables.

The arity-n part is the set of term operations X^n -> X obtained from the
projections by applying the generators pointwise, iterated to a fixed
point.  A term operation is stored as its value tuple over ``X^n`` in
lexicographic order, so the identity on a 2-element set is ``(0, 1)``.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from .._order import canon_sorted
from ..doctrine import CARTESIAN, word_category
from ..fincat import terminal
from ..profunctor import Profunctor
from .multicategory import Multicategory

Table = Tuple[int, ...]
OpSpec = Tuple[int, Union[Callable[..., int], Mapping[Tuple[int, ...], int]]]

SORT = "*"


def _as_fn(op) -> Callable[..., int]:
    if callable(op):
        return op
    return lambda *xs: op[tuple(xs)]


def builtin_op(name: str, size: int) -> OpSpec:
    """Named generators on {0, ..., size-1}."""
    ops = {
        "meet": (2, min),
        "join": (2, max),
        "xor": (2, lambda a, b: (a + b) % size),
        "plus": (2, lambda a, b: (a + b) % size),
        "times": (2, lambda a, b: (a * b) % size),
        "neg": (1, lambda a: (size - 1 - a)),
        "zero": (0, lambda: 0),
        "one": (0, lambda: 1 % size),
        "maj": (3, lambda a, b, c: sorted((a, b, c))[1]),
    }
    if name not in ops:
        raise ValueError(f"unknown operation {name!r}; known: {sorted(ops)}")
    return ops[name]


def close_clone(size: int, ops: Mapping[str, OpSpec], n: int, start: Iterable[Table] = ()) -> List[Table]:
    """Fixed point of generator application on arity-n operations."""
    inputs = list(product(range(size), repeat=n))
    current = set(start)
    for i in range(n):
        current.add(tuple(x[i] for x in inputs))
    gens = [(r, _as_fn(op)) for r, op in ops.values()]
    while True:
        ordered = canon_sorted(current)
        new = set()
        for r, fn in gens:
            for args in product(ordered, repeat=r):
                t = tuple(fn(*(a[k] for a in args)) for k in range(len(inputs)))
                if t not in current:
                    new.add(t)
        if not new:
            return canon_sorted(current)
        current |= new


def _pos(size: int, x: Sequence[int]) -> int:
    p = 0
    for v in x:
        p = p * size + v
    return p


def clone_multicategory(size: int, parts: Mapping[int, Sequence[Table]], K: int, name: Optional[str] = None) -> Multicategory:
    """Cartesian one-sorted theory from arity-indexed sets of value tuples."""
    A = terminal()
    SA = word_category(A, CARTESIAN, K)
    elements = {((SORT,) * n, SORT): list(parts.get(n, ())) for n in range(K + 1)}

    def left(u, a, f):
        m = len(u.src)
        return tuple(f[_pos(size, tuple(x[i] for i in u.index))] for x in product(range(size), repeat=m))

    def right(alpha, bs, f):
        return f

    carrier = Profunctor(A, SA, elements, left, right, name=name)

    def gamma(bs, a, f, inners):
        lens = [len(cs) for cs, _ in inners]
        total = sum(lens)
        out = []
        for x in product(range(size), repeat=total):
            vals = []
            off = 0
            for (cs, g), k in zip(inners, lens):
                vals.append(g[_pos(size, x[off:off + k])])
                off += k
            out.append(f[_pos(size, vals)])
        return tuple(out)

    ident = tuple(range(size))
    normal = list(parts.get(1, ())) == [ident]
    return Multicategory(carrier, {SORT: ident}, gamma, normal=normal, name=name)


def clone_of_algebra(size: int, ops: Mapping[str, OpSpec], K: int, name: Optional[str] = None) -> Multicategory:
    if size < 1:
        raise ValueError("carrier must be nonempty")
    if K < 1:
        raise ValueError("bound must be at least 1")
    parts = {n: close_clone(size, ops, n) for n in range(K + 1)}
    return clone_multicategory(size, parts, K, name=name or "clone")


def clone_arity_counts(m: Multicategory) -> Dict[int, int]:
    return m.arity_counts()
