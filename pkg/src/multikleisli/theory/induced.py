"""The monad on finite sets induced by a one-sorted theory.

``T(X)`` is the coend of ``M(n) x X^n`` over the word category: triples
``(bs, f, xs)`` with ``(bs', f·u, x') ~ (bs, f, u_* x')`` where
``(u_* x')[j] = x'[u.index[j]]``.  Planar theories give no identifications,
symmetric ones identify simultaneous permutations and cartesian ones also
copy and delete.  Iterates ``T(T(X))`` are computed on the weight-bounded
part (total number of leaves at most K), which is the safe region where
multiplication stays inside the bound.
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, List, Optional, Sequence, Tuple

from .._order import UnionFind, canon_sorted
from ..doctrine import identity_map
from ..fincat import Violation, sorted_report
from .multicategory import Multicategory


class Coend:
    """Classes of ``(bs, f, xs)`` over a finite leaf set with weights."""

    def __init__(self, m: Multicategory, leaves: Sequence[Hashable], weight: Callable[[Hashable], int], cap: int):
        self.m = m
        (a,) = m.sorts.objects
        self.sort = a
        self.leaves = canon_sorted(leaves)
        self.weight = weight
        self.cap = cap
        K = m.bound
        raw = []
        for n in range(K + 1):
            bs = (a,) * n
            fs = m.elements(bs, a)
            if not fs:
                continue
            for xs in self._tuples(n):
                for f in fs:
                    raw.append((bs, f, xs))
        uf = UnionFind(raw)
        S, C, d = m.S, m.sorts, m.doctrine
        for n in range(K + 1):
            bs = (a,) * n
            for f in m.elements(bs, a):
                for n2 in range(K + 1):
                    bs2 = (a,) * n2
                    for u in S.hom(bs2, bs):
                        if n2 == n and u == identity_map(bs, d, C):
                            continue
                        f2 = m.act(u, a, f)
                        if f2 is None:
                            continue
                        for xs2 in self._tuples(n2):
                            pushed = tuple(xs2[i] for i in u.index)
                            s, t = (bs2, f2, xs2), (bs, f, pushed)
                            if s in uf and t in uf:
                                uf.union(s, t)
        self._canon = uf.canonical()
        cl: Dict = {}
        for t, r in self._canon.items():
            cl.setdefault(r, []).append(t)
        self._classes = {r: tuple(canon_sorted(ts)) for r, ts in cl.items()}
        self.elements = canon_sorted(self._classes)

    def _tuples(self, n) -> List[Tuple]:
        out = []

        def rec(i, used, acc):
            if i == n:
                out.append(tuple(acc))
                return
            for x in self.leaves:
                w = used + self.weight(x)
                if w <= self.cap:
                    acc.append(x)
                    rec(i + 1, w, acc)
                    acc.pop()

        rec(0, 0, [])
        return out

    def canon(self, t) -> Optional[Hashable]:
        return self._canon.get(t)

    def members(self, rep) -> Tuple:
        return self._classes.get(rep, ())

    def __len__(self):
        return len(self.elements)


class InducedMonad:
    """``T`` on a finite set ``X`` with unit and multiplication."""

    def __init__(self, m: Multicategory, X: Sequence[Hashable]):
        C = m.sorts
        if len(C.objects) != 1 or C.num_morphisms() != 1:
            raise ValueError("induced monad needs a one-sorted theory over the terminal category")
        self.m = m
        self.K = m.bound
        self.X = canon_sorted(X)
        self.sort = C.objects[0]
        self.TX = Coend(m, self.X, lambda x: 1, self.K)

    def leaves(self, t) -> int:
        return len(t[0])

    def eta(self, x) -> Hashable:
        m, a = self.m, self.sort
        return self.TX.canon(((a,), m.unit(a), (x,)))

    def mu(self, T) -> Optional[Hashable]:
        """Flatten a member ``(bs, f, ts)`` of T(T X) with ``ts`` in T X."""
        m, a = self.m, self.sort
        bs, f, ts = T
        r = m.gamma(bs, a, f, tuple((t[0], t[1]) for t in ts))
        if r is None:
            return None
        xs = tuple(x for t in ts for x in t[2])
        return self.TX.canon((tuple(c for t in ts for c in t[0]), r, xs))

    def ttx(self) -> Coend:
        if not hasattr(self, "_ttx"):
            self._ttx = Coend(self.m, self.TX.elements, self.leaves, self.K)
        return self._ttx

    def check_laws(self) -> List[Violation]:
        m, a = self.m, self.sort
        TX, TTX = self.TX, self.ttx()
        out = []
        # multiplication is constant on classes of T(T X)
        for rep in TTX.elements:
            vals = {self.mu(t) for t in TTX.members(rep)}
            vals.discard(None)
            if len(vals) > 1:
                out.append(Violation("monad-mult-well-defined", rep, f"{len(vals)} values"))
        for t in TX.elements:
            outer = TTX.canon(((a,), m.unit(a), (t,)))
            if outer is None or self.mu(outer) != t:
                out.append(Violation("monad-unit-left", t))
            bs, f, xs = t
            inner = TTX.canon((bs, f, tuple(self.eta(x) for x in xs)))
            if inner is None or self.mu(inner) != t:
                out.append(Violation("monad-unit-right", t))
        T3 = Coend(m, TTX.elements, lambda T: sum(self.leaves(t) for t in T[2]), self.K)
        for bs, f, Ts in T3.elements:
            # mu . T mu
            flat_inner = tuple(self.mu(T) for T in Ts)
            lhs = None
            if None not in flat_inner:
                tt = TTX.canon((bs, f, flat_inner))
                lhs = None if tt is None else self.mu(tt)
            # mu . mu T
            r = m.gamma(bs, a, f, tuple((T[0], T[1]) for T in Ts))
            rhs = None
            if r is not None:
                cat = tuple(c for T in Ts for c in T[0])
                tt = TTX.canon((cat, r, tuple(t for T in Ts for t in T[2])))
                rhs = None if tt is None else self.mu(tt)
            if lhs is None or rhs is None:
                continue
            if lhs != rhs:
                out.append(Violation("monad-associativity", (bs, f, Ts), f"{lhs!r} != {rhs!r}"))
        return sorted_report(out)


def induced_monad_on_set(m: Multicategory, X: Sequence[Hashable]) -> InducedMonad:
    return InducedMonad(m, X)
