"""Finite strict algebras for the three doctrines.

An algebra is a finite category together with a strict structure map: an
object ``ob(word)`` for every word and an arrow ``act(u): ob(x) -> ob(y)``
for every arity map ``u: x -> y``.  ``act`` returns ``None`` when no arrow
exists, which :func:`check_algebra` reports.
"""

from __future__ import annotations

from functools import reduce
from math import gcd
from itertools import product
from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from ..doctrine import (
    CARTESIAN,
    PLANAR,
    SYMMETRIC,
    ArityMap,
    block_reindex,
    check_doctrine,
    compose_maps,
    index_candidates,
    mult_flatten,
    tensor_maps,
    word_category,
)
from ..fincat import FinCategory, Violation, discrete, poset_category, sorted_report


class FiniteAlgebra:
    doctrine: str
    category: FinCategory
    name: str

    def ob(self, word: Sequence[Hashable]) -> Optional[Hashable]:
        raise NotImplementedError

    def act(self, u: ArityMap) -> Optional[Hashable]:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} {self.doctrine}>"


class MonoidAlgebra(FiniteAlgebra):
    """A monoid as a discrete strict monoidal category.

    Only identity arrows exist, so every arity map must preserve the
    product: commutativity is needed for the symmetric doctrine.
    """

    def __init__(self, elements: Sequence[Hashable], mult: Callable, unit: Hashable, doctrine: str, name: str = "monoid"):
        self.doctrine = check_doctrine(doctrine)
        self.elements = tuple(elements)
        self.mult = mult
        self.unit = unit
        self.category = discrete(self.elements, name=name)
        self.name = name

    def ob(self, word):
        return reduce(self.mult, word, self.unit)

    def act(self, u):
        s, t = self.ob(u.src), self.ob(u.dst)
        return self.category.identity(s) if s == t else None


class PosetAlgebra(FiniteAlgebra):
    """A finite poset with a monotone associative operation and its unit.

    With ``op = meet`` and ``unit = top`` this is a cartesian algebra.
    """

    def __init__(self, elements, leq: Callable, op: Callable, unit, doctrine: str, name: str = "poset"):
        self.doctrine = check_doctrine(doctrine)
        self.leq = leq
        self.op = op
        self.unit = unit
        self.category = poset_category(list(elements), leq, name=name)
        self.name = name

    def ob(self, word):
        return reduce(self.op, word, self.unit)

    def act(self, u):
        s, t = self.ob(u.src), self.ob(u.dst)
        return (s, t) if self.leq(s, t) else None


class FunctionCategory(FinCategory):
    """Powers X^0..X^N of a finite set with all functions between them.

    Arrows are ``("fn", n, m, table)`` where ``table[i]`` is the output tuple
    for the i-th input tuple in lexicographic order.  Homs are built lazily.
    """

    def __init__(self, size: int, max_power: int):
        self.size = size
        self.max_power = max_power
        self.objects = tuple(range(max_power + 1))
        self.name = f"Fun({size})"
        self._homs: Dict[Tuple[int, int], Tuple] = {}
        self._inputs = {n: tuple(product(range(size), repeat=n)) for n in self.objects}
        self._pos = {n: {x: i for i, x in enumerate(xs)} for n, xs in self._inputs.items()}

    def inputs(self, n):
        return self._inputs[n]

    def function(self, n: int, m: int, fn: Callable[[Tuple], Tuple]):
        return ("fn", n, m, tuple(tuple(fn(x)) for x in self._inputs[n]))

    def apply(self, f, x: Tuple) -> Tuple:
        return f[3][self._pos[f[1]][tuple(x)]]

    def src(self, f):
        return f[1]

    def dst(self, f):
        return f[2]

    def identity(self, n):
        return self.function(n, n, lambda x: x)

    def compose(self, g, f):
        if f[2] != g[1]:
            return None
        return ("fn", f[1], g[2], tuple(self.apply(g, y) for y in f[3]))

    def hom(self, n, m):
        key = (n, m)
        h = self._homs.get(key)
        if h is None:
            if n in self._pos and m in self._pos:
                outs = self._inputs[m]
                h = tuple(("fn", n, m, t) for t in product(outs, repeat=len(self._inputs[n])))
            else:
                h = ()
            self._homs[key] = h
        return h

    def has_object(self, n):
        return n in self._pos

    def has_morphism(self, f):
        return (
            isinstance(f, tuple)
            and len(f) == 4
            and f[0] == "fn"
            and f[1] in self._pos
            and f[2] in self._pos
            and len(f[3]) == len(self._inputs[f[1]])
            and all(len(y) == f[2] and all(0 <= v < self.size for v in y) for y in f[3])
        )

    def __eq__(self, other):
        if isinstance(other, FunctionCategory):
            return (self.size, self.max_power) == (other.size, other.max_power)
        if isinstance(other, FinCategory):
            return False
        return NotImplemented

    __hash__ = object.__hash__


class PowerAlgebra(FiniteAlgebra):
    """Cartesian algebra of a finite set: X^n x X^m = X^(n+m) on the nose."""

    def __init__(self, size: int, max_power: int, name: Optional[str] = None):
        self.doctrine = CARTESIAN
        self.size = size
        self.category = FunctionCategory(size, max_power)
        self.name = name or f"powers of {size}"

    def ob(self, word):
        if any(w is None for w in word):
            return None
        n = sum(word)
        return n if n <= self.category.max_power else None

    def act(self, u):
        F = self.category
        s, t = self.ob(u.src), self.ob(u.dst)
        if s is None or t is None:
            return None
        offsets = []
        off = 0
        for w in u.src:
            offsets.append(off)
            off += w

        def fn(x):
            out = []
            for j, i in enumerate(u.index):
                block = x[offsets[i]:offsets[i] + u.src[i]]
                out.extend(F.apply(u.arrows[j], block))
            return out

        return F.function(s, t, fn)


def terminal_algebra(doctrine: str) -> MonoidAlgebra:
    return MonoidAlgebra(["*"], lambda x, y: "*", "*", doctrine, name="terminal")


# ---------------------------------------------------------------------
# strictness checks


def _nested_words(objs, bound) -> List[Tuple[Tuple, ...]]:
    """Words of at most ``bound`` words, with total length <= bound."""
    words = [w for n in range(bound + 1) for w in product(objs, repeat=n)]
    out = []
    for k in range(bound + 1):
        for combo in product(words, repeat=k):
            if sum(len(w) for w in combo) <= bound:
                out.append(combo)
    return out


def check_algebra(x: FiniteAlgebra, bound: int = 2, limit: Optional[int] = 500, comp_limit: int = 24) -> List[Violation]:
    """Strict algebra laws on words up to ``bound``.

    Unit and flattening laws for ``ob``; typing, identities and composition
    for ``act``; and compatibility of ``act`` with flattening arity maps.
    ``limit`` caps the arity maps taken per pair of words (in order), and
    ``comp_limit`` does the same inside the cubic composition check.
    """
    A, d = x.category, x.doctrine
    out: List[Violation] = []
    S = word_category(A, d, bound)
    for a in A.objects:
        if x.ob((a,)) != a:
            out.append(Violation("algebra-unit", a, f"ob((a,)) = {x.ob((a,))!r}"))
        for b in A.objects:
            for alpha in A.hom(a, b):
                e = ArityMap(d, (a,), (b,), (0,), (alpha,))
                if x.act(e) != alpha:
                    out.append(Violation("algebra-unit-arrow", alpha))
    ww_list = _nested_words(A.objects, bound)
    for ww in ww_list:
        flat = mult_flatten(ww)
        if len(flat) > bound:
            continue
        obs = tuple(x.ob(w) for w in ww)
        if x.ob(flat) is None and x.ob(obs) is None:
            continue  # beyond the algebra's own truncation
        if x.ob(flat) != x.ob(obs):
            out.append(Violation("algebra-flatten", ww, f"{x.ob(flat)!r} != {x.ob(obs)!r}"))
    if out:
        return sorted_report(out)

    def maps(src, dst, cap=limit):
        hs = S.hom(src, dst)
        return hs if cap is None else hs[:cap]

    for src in S.objects:
        for dst in S.objects:
            s, t = x.ob(src), x.ob(dst)
            if s is None or t is None:
                continue
            for u in maps(src, dst):
                f = x.act(u)
                if f is None or not A.has_morphism(f) or (A.src(f), A.dst(f)) != (s, t):
                    out.append(Violation("algebra-act-typing", u, f"got {f!r}"))
    if out:
        return sorted_report(out)
    defined = [w for w in S.objects if x.ob(w) is not None]
    for w in defined:
        if x.act(S.identity(w)) != A.identity(x.ob(w)):
            out.append(Violation("algebra-act-identity", w))
    for w0 in defined:
        for w1 in defined:
            for f in maps(w0, w1, comp_limit):
                for w2 in defined:
                    for g in maps(w1, w2, comp_limit):
                        if x.act(compose_maps(g, f, A)) != A.compose(x.act(g), x.act(f)):
                            out.append(Violation("algebra-act-composition", (g, f)))
    out += _check_flatten_maps(x, ww_list, bound, comp_limit)
    return sorted_report(out)


def _check_flatten_maps(x: FiniteAlgebra, ww_list, bound, limit) -> List[Violation]:
    # act(flatten U) == act(S act U) for U: W -> W' in S S A
    A, d = x.category, x.doctrine
    S = word_category(A, d, bound)
    out = []
    budget = limit
    for W in ww_list:
        for W2 in ww_list:
            if len(mult_flatten(W)) > bound or len(mult_flatten(W2)) > bound:
                continue
            if x.ob(mult_flatten(W)) is None or x.ob(mult_flatten(W2)) is None:
                continue
            for phi in index_candidates(d, len(W), len(W2)):
                if len(mult_flatten(W[i] for i in phi)) > bound:
                    continue
                choices = [S.hom(W[phi[j]], W2[j]) for j in range(len(W2))]
                count = 0
                for us in product(*choices):
                    count += 1
                    if budget is not None and count > budget:
                        break
                    flat = compose_maps(tensor_maps(us, d), block_reindex(W, phi, d, A), A)
                    outer = ArityMap(d, tuple(x.ob(w) for w in W), tuple(x.ob(w) for w in W2), tuple(phi), tuple(x.act(u) for u in us))
                    if x.act(flat) != x.act(outer):
                        out.append(Violation("algebra-strictness", (W, W2, phi, us)))
    return out


# ---------------------------------------------------------------------
# builtin algebras


def builtin_algebras(doctrine: str) -> Dict[str, FiniteAlgebra]:
    """At least five small strict algebras per doctrine."""
    d = check_doctrine(doctrine)
    out: Dict[str, FiniteAlgebra] = {"terminal": terminal_algebra(d)}
    if d in (PLANAR, SYMMETRIC):
        for n in (2, 3):
            out[f"Z/{n}"] = MonoidAlgebra(list(range(n)), lambda a, b, n=n: (a + b) % n, 0, d, name=f"Z/{n}")
        out["and"] = MonoidAlgebra([0, 1], lambda a, b: a & b, 1, d, name="and")
        out["chain3-max"] = PosetAlgebra([0, 1, 2], lambda a, b: a <= b, max, 0, d, name="chain3-max")
        out["square-join"] = PosetAlgebra(
            [(0, 0), (0, 1), (1, 0), (1, 1)],
            lambda a, b: a[0] <= b[0] and a[1] <= b[1],
            lambda a, b: (max(a[0], b[0]), max(a[1], b[1])),
            (0, 0),
            d,
            name="square-join",
        )
        if d == PLANAR:
            # left-zero semigroup with a unit adjoined: not commutative
            out["left-zero"] = MonoidAlgebra(["e", "p", "q"], lambda a, b: b if a == "e" else a, "e", d, name="left-zero")
    else:
        out["chain2-min"] = PosetAlgebra([0, 1], lambda a, b: a <= b, min, 1, d, name="chain2-min")
        out["chain3-min"] = PosetAlgebra([0, 1, 2], lambda a, b: a <= b, min, 2, d, name="chain3-min")
        out["square-meet"] = PosetAlgebra(
            [(0, 0), (0, 1), (1, 0), (1, 1)],
            lambda a, b: a[0] <= b[0] and a[1] <= b[1],
            lambda a, b: (min(a[0], b[0]), min(a[1], b[1])),
            (1, 1),
            d,
            name="square-meet",
        )
        out["divisors6"] = PosetAlgebra([1, 2, 3, 6], lambda a, b: b % a == 0, gcd, 6, d, name="divisors6")
        out["powers2"] = PowerAlgebra(2, 2, name="powers2")
    return out

