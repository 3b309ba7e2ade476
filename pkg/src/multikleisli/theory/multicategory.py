"""Multicategories: monads ``M: A ⇸ S A`` presented operadically.

The carrier is a graded profunctor; an element ``x`` of ``M(bs, a)`` is an
operation with inputs ``bs`` and output ``a``.  Substitution is given in
gamma form: ``gamma(bs, a, x, inners)`` with ``inners[i] = (cs_i, y_i)`` and
``y_i`` in ``M(cs_i, bs[i])`` returns an element of ``M(concat cs_i, a)``.
This is the multiplication cell ``M ⊙ M => M`` evaluated on the
representative ``(bs, (blocks, id, ys), x)``; every other member of the
class is reached through the actions, which is what the equivariance
checks below quantify over.
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..doctrine import (
    ArityMap,
    WordCategory,
    block_reindex,
    identity_map,
    mult_flatten,
    tensor_maps,
    word_category,
)
from ..fincat import FinCategory, Violation, sorted_report
from ..kleisli import graded_info
from ..profunctor import ProfCell, Profunctor, check_profunctor

Inner = Tuple[Tuple[Hashable, ...], Hashable]
Gamma = Callable[[Tuple, Hashable, Hashable, Tuple[Inner, ...]], Optional[Hashable]]


class Multicategory:
    def __init__(
        self,
        carrier: Profunctor,
        unit: Mapping[Hashable, Hashable],
        gamma: Gamma,
        normal: bool = True,
        name: Optional[str] = None,
        partial: bool = False,
    ):
        base, d, K = graded_info(carrier)
        if carrier.source is not base and carrier.source != base:
            raise ValueError("carrier must be A ⇸ S A")
        self.carrier = carrier
        self.sorts: FinCategory = base
        self.doctrine = d
        self.bound = K
        self.S: WordCategory = word_category(base, d, K)
        self._unit = dict(unit)
        self._gamma = gamma
        self._gcache: Dict = {}
        self.normal = normal
        # gamma may be undefined when the composite needs a middle word past the bound
        self.partial = partial
        self.name = name
        self._by_sort: Optional[Dict[Hashable, List[Inner]]] = None
        self._inner_cache: Dict = {}

    # -- data access -------------------------------------------------

    def elements(self, bs, a) -> Tuple[Hashable, ...]:
        return self.carrier.elements(tuple(bs), a)

    def all_elements(self) -> Iterator[Tuple[Tuple, Hashable, Hashable]]:
        return self.carrier.all_elements()

    def unit(self, a) -> Hashable:
        return self._unit[a]

    def act(self, u: ArityMap, a, x) -> Optional[Hashable]:
        """x·u for u: bs' -> bs and x in M(bs, a)."""
        return self.carrier.left(u, a, x)

    def act_sort(self, alpha, bs, x) -> Optional[Hashable]:
        """alpha·x for alpha: a -> a' in the sort category."""
        return self.carrier.right(alpha, bs, x)

    def gamma(self, bs, a, x, inners: Sequence[Inner]) -> Optional[Hashable]:
        try:
            return self._gcache[(bs, a, x, inners)]
        except (KeyError, TypeError):
            pass
        bs = tuple(bs)
        inners = tuple((tuple(c), y) for c, y in inners)
        key = (bs, a, x, inners)
        if key in self._gcache:
            return self._gcache[key]
        if sum(len(c) for c, _ in inners) > self.bound:
            r = None
        else:
            r = self._gamma(bs, a, x, inners)
        self._gcache[key] = r
        return r

    def arity_counts(self) -> Dict[int, int]:
        """Element count per arity (meaningful for single-sorted theories)."""
        out: Dict[int, int] = {}
        for bs, a, x in self.all_elements():
            out[len(bs)] = out.get(len(bs), 0) + 1
        return {n: out.get(n, 0) for n in range(self.bound + 1)}

    def by_sort(self) -> Dict[Hashable, List[Inner]]:
        if self._by_sort is None:
            by: Dict[Hashable, List[Inner]] = {}
            for bs, a, x in self.all_elements():
                by.setdefault(a, []).append((bs, x))
            self._by_sort = by
        return self._by_sort

    def inner_tuples(self, bs, room: int) -> Tuple[Tuple[Inner, ...], ...]:
        """All ``((cs_i, y_i))_i`` over ``bs`` with total input length <= room."""
        bs = tuple(bs)
        key = (bs, room)
        hit = self._inner_cache.get(key)
        if hit is not None:
            return hit
        by = self.by_sort()
        out: List[Tuple[Inner, ...]] = []

        def rec(i, used, acc):
            if i == len(bs):
                out.append(tuple(acc))
                return
            for cs, y in by.get(bs[i], ()):
                if used + len(cs) <= room:
                    acc.append((cs, y))
                    rec(i + 1, used + len(cs), acc)
                    acc.pop()

        rec(0, 0, [])
        hit = self._inner_cache[key] = tuple(out)
        return hit

    def identity_inners(self, bs) -> Tuple[Inner, ...]:
        return tuple(((b,), self.unit(b)) for b in bs)

    def with_gamma(self, gamma: Gamma, name: Optional[str] = None) -> "Multicategory":
        """Same carrier and unit with a replaced substitution (for mutation tests)."""
        return Multicategory(self.carrier, self._unit, gamma, normal=self.normal, name=name or self.name, partial=self.partial)

    def __repr__(self):
        return f"<Multicategory {self.name or ''} {self.doctrine} K={self.bound}>"


# ---------------------------------------------------------------------
# law checking


def _wide(blocks, i, w, d, C) -> ArityMap:
    parts = [identity_map(bk, d, C) for bk in blocks]
    parts[i] = w
    return tensor_maps(parts, d)


def _undefined(m: Multicategory, lhs, rhs) -> bool:
    return m.partial and (lhs is None or rhs is None)


def check_theory(m: Multicategory, exhaustive: bool = False) -> List[Violation]:
    """Monad laws in gamma form, equivariance, and normality.

    Every quantifier ranges over the truncation-safe region: tuples whose
    total input length stays within the bound.  For total theories
    equivariance is tried on generating arity maps only, which suffices once
    the actions are functorial; ``exhaustive`` tries every arity map.
    """
    out: List[Violation] = list(check_profunctor(m.carrier))
    out += _check_unit_typing(m)
    if any(v.law.startswith("unit-") for v in out):
        return sorted_report(out)
    out += _check_gamma_typing(m)
    if any(v.law == "subst-typing" for v in out):
        return sorted_report(out)
    out += _check_unit_laws(m)
    out += _check_associativity(m)
    out += _check_equivariance(m, exhaustive or m.partial)
    if m.normal:
        out += check_normality(m)
    return sorted_report(out)


def _check_unit_typing(m: Multicategory) -> List[Violation]:
    out = []
    A = m.sorts
    for a in A.objects:
        try:
            e = m.unit(a)
        except KeyError:
            out.append(Violation("unit-missing", a))
            continue
        if e not in m.elements((a,), a):
            out.append(Violation("unit-typing", a, f"{e!r} not in M(({a!r},), {a!r})"))
    if out:
        return out
    for alpha in A.morphisms():
        a0, a1 = A.src(alpha), A.dst(alpha)
        e_alpha = ArityMap(m.doctrine, (a0,), (a1,), (0,), (alpha,))
        lhs = m.act_sort(alpha, (a0,), m.unit(a0))
        rhs = m.act(e_alpha, a1, m.unit(a1))
        if lhs != rhs:
            out.append(Violation("unit-naturality", alpha, f"{lhs!r} != {rhs!r}"))
    return out


def _check_gamma_typing(m: Multicategory) -> List[Violation]:
    out = []
    for bs, a, x in m.all_elements():
        for inners in m.inner_tuples(bs, m.bound):
            r = m.gamma(bs, a, x, inners)
            cat = mult_flatten(c for c, _ in inners)
            if r is None and m.partial:
                continue
            if r is None or r not in m.elements(cat, a):
                out.append(Violation("subst-typing", (bs, a, x, inners), f"got {r!r}"))
    return out


def _check_unit_laws(m: Multicategory) -> List[Violation]:
    out = []
    for bs, a, x in m.all_elements():
        r = m.gamma(bs, a, x, m.identity_inners(bs))
        if r != x:
            out.append(Violation("unit-right", (bs, a, x), f"got {r!r}"))
        r = m.gamma((a,), a, m.unit(a), ((bs, x),))
        if r != x:
            out.append(Violation("unit-left", (bs, a, x), f"got {r!r}"))
    return out


def _check_associativity(m: Multicategory) -> List[Violation]:
    out = []
    K = m.bound
    for bs, a, x in m.all_elements():
        for ys in m.inner_tuples(bs, K):
            r = m.gamma(bs, a, x, ys)
            if r is None:
                continue
            cat = mult_flatten(c for c, _ in ys)
            spans = []
            off = 0
            for cs, _ in ys:
                spans.append((off, off + len(cs)))
                off += len(cs)
            for zs in m.inner_tuples(cat, K):
                lhs = m.gamma(cat, a, r, zs)
                grouped = []
                for i, (lo, hi) in enumerate(spans):
                    blk = zs[lo:hi]
                    g = m.gamma(ys[i][0], bs[i], ys[i][1], blk)
                    if g is None:
                        break
                    grouped.append((sum((c for c, _ in blk), ()), g))
                rhs = m.gamma(bs, a, x, tuple(grouped)) if len(grouped) == len(ys) else None
                if _undefined(m, lhs, rhs):
                    continue
                if lhs != rhs:
                    out.append(Violation("associativity", (bs, a, x, ys, zs), f"{lhs!r} != {rhs!r}"))
    return out


def _check_equivariance(m: Multicategory, exhaustive: bool = True) -> List[Violation]:
    """Substitution is constant on coend classes of M ⊙ M.

    Three generating moves: an arity map acting inside one inner block, an
    arity map moved from the outer element onto the inner tuple (which
    reorders, copies or drops whole blocks), and a sort morphism acting on
    the output.  Without ``exhaustive`` the arity maps range over the
    generators of the word category: their factorizations delete before
    they duplicate, so intermediate tuples stay within the bound.
    """
    out = []
    S, C, d, K = m.S, m.sorts, m.doctrine, m.bound
    into: Dict[Tuple, List[Tuple[Tuple, ArityMap]]] = {}
    if exhaustive:
        for w in S.objects:
            ident = identity_map(w, d, C)
            into[w] = [(src, u) for src in S.objects for u in S.hom(src, w) if u != ident]
    else:
        for u in S.generators():
            into.setdefault(u.dst, []).append((u.src, u))

    def arrows_into(w):
        return into.get(w, ())

    for bs, a, x in m.all_elements():
        for ys in m.inner_tuples(bs, K):
            r = m.gamma(bs, a, x, ys)
            blocks = tuple(c for c, _ in ys)
            total = len(mult_flatten(blocks))
            # inner block move
            for i, (cs, y) in enumerate(ys):
                room = K - (total - len(cs))
                for src, w in arrows_into(cs):
                    if len(src) > room:
                        continue
                    y2 = m.act(w, bs[i], y)
                    if y2 is None:
                        continue
                    ys2 = ys[:i] + ((src, y2),) + ys[i + 1:]
                    lhs = m.gamma(bs, a, x, ys2)
                    rhs = None if r is None else m.act(_wide(blocks, i, w, d, C), a, r)
                    if _undefined(m, lhs, rhs):
                        continue
                    if lhs != rhs:
                        out.append(Violation("equivariance-inner", (bs, a, x, ys, i, w), f"{lhs!r} != {rhs!r}"))
            # output move
            for alpha in C.hom_from(a):
                if alpha == C.identity(a):
                    continue
                lhs = m.gamma(bs, C.dst(alpha), m.act_sort(alpha, bs, x), ys)
                rhs = None if r is None else m.act_sort(alpha, mult_flatten(blocks), r)
                if _undefined(m, lhs, rhs):
                    continue
                if lhs != rhs:
                    out.append(Violation("equivariance-output", (bs, a, x, ys, alpha), f"{lhs!r} != {rhs!r}"))
    # outer move: x'·u with u: bs -> bs', against u pushed onto the inner tuple
    for bs2, a, x2 in m.all_elements():
        for bs, u in arrows_into(bs2):
            x = m.act(u, a, x2)
            if x is None:
                continue
            for ys in m.inner_tuples(bs, K):
                blocks = tuple(c for c, _ in ys)
                new_blocks = tuple(blocks[i] for i in u.index)
                if len(mult_flatten(new_blocks)) > K:
                    continue
                ys2 = []
                for j, i in enumerate(u.index):
                    ys2.append((blocks[i], m.act_sort(u.arrows[j], blocks[i], ys[i][1])))
                R = block_reindex(blocks, u.index, d, C)
                lhs = m.gamma(bs, a, x, ys)
                inner = m.gamma(bs2, a, x2, tuple(ys2))
                rhs = None if inner is None else m.act(R, a, inner)
                if _undefined(m, lhs, rhs):
                    continue
                if lhs != rhs:
                    out.append(Violation("equivariance-outer", (bs2, a, x2, u, ys), f"{lhs!r} != {rhs!r}"))
    return out


def check_normality(m: Multicategory) -> List[Violation]:
    """alpha |-> 1_a·e(alpha) is a bijection A(a', a) -> M((a'), a)."""
    out = []
    A, d = m.sorts, m.doctrine
    for a in A.objects:
        for a2 in A.objects:
            image = []
            for alpha in A.hom(a2, a):
                e_alpha = ArityMap(d, (a2,), (a,), (0,), (alpha,))
                image.append(m.act(e_alpha, a, m.unit(a)))
            target = set(m.elements((a2,), a))
            if len(set(image)) != len(image) or set(image) != target:
                out.append(
                    Violation("normality", (a2, a), f"{len(set(image))} unary images vs {len(target)} unary elements")
                )
    return out


# ---------------------------------------------------------------------
# the same structure as 2-cells over the substitution composite


def unit_cell(m: Multicategory, unit_prof: Profunctor) -> ProfCell:
    """kleisli_unit => M, u: bs -> (a) |-> 1_a·u."""
    return ProfCell(unit_prof, m.carrier, lambda bs, a, u: m.act(u, a, m.unit(a)), name="unit")


def subst_cell(m: Multicategory, mm) -> ProfCell:
    """M ⊙ M => M on class representatives ``(bs, (blocks, v, ys), x)``."""

    def comp(cs, a, t):
        bs, s, x = t
        blocks, v, ys = s
        r = m.gamma(bs, a, x, tuple(zip(blocks, ys)))
        return None if r is None else m.act(v, a, r)

    return ProfCell(mm, m.carrier, comp, name="subst")


def truncate_theory(m: Multicategory, K: int) -> Multicategory:
    """The same theory seen only on words of length at most ``K``."""
    if K > m.bound:
        raise ValueError(f"theory only has data up to bound {m.bound}, asked for {K}")
    if K == m.bound:
        return m
    A, d = m.sorts, m.doctrine
    elements = {(bs, a): m.elements(bs, a) for bs, a in m.carrier.cells() if len(bs) <= K}
    carrier = Profunctor(A, word_category(A, d, K), elements, m.act, m.act_sort, name=m.carrier.name)
    out = Multicategory(carrier, m._unit, m._gamma, normal=m.normal, name=m.name, partial=m.partial)
    if hasattr(m, "labels"):
        out.labels = m.labels
    return out
