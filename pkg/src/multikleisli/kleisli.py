"""Graded profunctors ``A ⇸ S B`` and substitution composition.

A graded profunctor is an ordinary :class:`~multikleisli.profunctor.Profunctor`
whose target is a bounded :class:`~multikleisli.doctrine.WordCategory`; an
element of ``F(bs, a)`` is a formal operation with input word ``bs`` and
output sort ``a``.

``G ⊙ F`` is computed in two coend steps.  First :func:`day_extend` turns
``G: B ⇸ S C`` into ``S̃G: S B ⇸ S C`` whose elements at ``(cs, bs)`` are
classes of triples ``(blocks, v, ys)``: a block word ``blocks[i]`` for each
letter of ``bs``, an arity map ``v: cs -> concat(blocks)`` and elements
``ys[i]`` of ``G(blocks[i], bs[i])``, identified along arity maps applied to
one block at a time.  Then ``G ⊙ F = S̃G ∘ F`` by ordinary coend composition.
Everything longer than the bound is absent; actions that would leave the
bound return ``None``.
"""

from __future__ import annotations

from typing import Dict, Hashable, List, Optional, Tuple

from ._order import UnionFind, canon_sorted
from .doctrine import (
    ArityMap,
    WordCategory,
    block_reindex,
    compose_maps,
    identity_map,
    mult_flatten,
    s_functor,
    tensor_maps,
    unit_functor,
    word_category,
)
from .fincat import FinCategory, Functor, Violation, sorted_report
from .profunctor import (
    Composite,
    ProfCell,
    Profunctor,
    check_cell,
    compose_prof,
    costar,
    elements_factorization,
    is_bijective,
    star,
)


def graded_info(p: Profunctor) -> Tuple[FinCategory, str, int]:
    t = p.target
    if not isinstance(t, WordCategory):
        raise TypeError("not a graded profunctor: target is not a word category")
    return t.base, t.doctrine, t.bound


def graded_profunctor(source, base, doctrine, bound, elements, left, right, name=None) -> Profunctor:
    """Convenience constructor; ``elements`` keyed by (word, a)."""
    return Profunctor(source, word_category(base, doctrine, bound), elements, left, right, name=name)


class DayExtension(Profunctor):
    """``S̃G: S B ⇸ S C`` for ``G: B ⇸ S C``, with its block-coend presentation."""

    def __init__(self, g: Profunctor):
        C, d, K = graded_info(g)
        B = g.source
        self.g = g
        self.doctrine = d
        self.bound = K
        SB = word_category(B, d, K)
        SC = word_category(C, d, K)
        self.SB, self.SC = SB, SC
        # blocks available per output sort, with their elements
        by_sort: Dict[Hashable, List[Tuple]] = {}
        for w, b, y in g.all_elements():
            by_sort.setdefault(b, []).append((w, y))
        self._by_sort = by_sort
        canon: Dict = {}
        classes: Dict = {}
        for bs in SB.objects:
            configs = self._configs(bs)
            if not configs:
                continue
            by_concat: Dict = {}
            for blocks, ys in configs:
                by_concat.setdefault(mult_flatten(blocks), []).append((blocks, ys))
            for cs in SC.objects:
                raw = []
                for cat, cfgs in by_concat.items():
                    vs = SC.hom(cs, cat)
                    if not vs:
                        continue
                    for blocks, ys in cfgs:
                        for v in vs:
                            raw.append((blocks, v, ys))
                if not raw:
                    continue
                uf = UnionFind(raw)
                self._block_moves(uf, cs, bs, configs)
                can = uf.canonical()
                canon[(cs, bs)] = can
                cl: Dict = {}
                for t, r in can.items():
                    cl.setdefault(r, []).append(t)
                classes[(cs, bs)] = cl
        self._canon = canon
        self._classes = classes

        def left(z, bs, t):
            blocks, v, ys = t
            return self.canon(z.src, bs, (blocks, compose_maps(v, z, C), ys))

        def right(u, cs, t):
            raw = self.push_raw(u, t)
            return None if raw is None else self.canon(cs, u.dst, raw)

        super().__init__(SB, SC, {k: list(v) for k, v in classes.items()}, left, right, name="day", partial=True)

    def _configs(self, bs) -> List[Tuple[Tuple, Tuple]]:
        K = self.bound
        out = []

        def rec(i, blocks, ys, used):
            if i == len(bs):
                out.append((tuple(blocks), tuple(ys)))
                return
            for w, y in self._by_sort.get(bs[i], ()):
                if used + len(w) <= K:
                    blocks.append(w)
                    ys.append(y)
                    rec(i + 1, blocks, ys, used + len(w))
                    blocks.pop()
                    ys.pop()

        rec(0, [], [], 0)
        return out

    def _block_arrows(self, bi, room) -> List[ArityMap]:
        """Non-identity arrows into block ``bi`` from words that fit ``room``.

        For total G the generators suffice: a composite block move is the
        chain of its generator moves, and no intermediate block outgrows
        either end.
        """
        SC, C, d = self.SC, self.SC.base, self.doctrine
        if not self.g.partial:
            into = getattr(self, "_gens_into", None)
            if into is None:
                into = self._gens_into = {}
                for w in SC.generators():
                    into.setdefault(w.dst, []).append(w)
            return [w for w in into.get(bi, ()) if len(w.src) <= room]
        ident = identity_map(bi, d, C)
        return [w for wsrc in SC.objects if len(wsrc) <= room for w in SC.hom(wsrc, bi) if w != ident]

    def _block_moves(self, uf: UnionFind, cs, bs, configs):
        # (v, ys·w at block i) ~ ((id ⊗ w ⊗ id)∘v, ys)
        SC, C, d, K, g = self.SC, self.SC.base, self.doctrine, self.bound, self.g
        for blocks, ys in configs:
            total = len(mult_flatten(blocks))
            for i, bi in enumerate(blocks):
                room = K - (total - len(bi))
                for w in self._block_arrows(bi, room):
                    new_blocks = blocks[:i] + (w.src,) + blocks[i + 1:]
                    vs = SC.hom(cs, mult_flatten(new_blocks))
                    if not vs:
                        continue
                    y2 = g.left(w, bs[i], ys[i])
                    if y2 is None:
                        continue
                    new_ys = ys[:i] + (y2,) + ys[i + 1:]
                    wide = tensor_maps(
                        [identity_map(bk, d, C) for bk in blocks[:i]] + [w] + [identity_map(bk, d, C) for bk in blocks[i + 1:]],
                        d,
                    )
                    for v in vs:
                        a = (new_blocks, v, new_ys)
                        b = (blocks, compose_maps(wide, v, C), ys)
                        if a in uf and b in uf:
                            uf.union(a, b)

    def canon(self, cs, bs, t) -> Optional[Hashable]:
        return self._canon.get((cs, bs), {}).get(t)

    def members(self, cs, bs, rep):
        return tuple(canon_sorted(self._classes.get((cs, bs), {}).get(rep, ())))

    def push_raw(self, u: ArityMap, t) -> Optional[Tuple]:
        """Covariant action of ``u: bs -> bs'`` on a raw triple (no re-canonicalization)."""
        blocks, v, ys = t
        new_blocks = tuple(blocks[i] for i in u.index)
        if len(mult_flatten(new_blocks)) > self.bound:
            return None
        new_ys = []
        for j, i in enumerate(u.index):
            y = self.g.right(u.arrows[j], blocks[i], ys[i])
            if y is None:
                return None
            new_ys.append(y)
        R = block_reindex(blocks, u.index, self.doctrine, self.SC.base)
        return new_blocks, compose_maps(R, v, self.SC.base), tuple(new_ys)


def day_extend(g: Profunctor) -> DayExtension:
    return DayExtension(g)


def subst_compose(g: Profunctor, f: Profunctor, day: Optional[DayExtension] = None) -> Composite:
    """G ⊙ F for F: A ⇸ S B and G: B ⇸ S C (same doctrine and bound).

    Elements are representatives ``(bs, s, x)`` with ``x`` in F(bs, a) and
    ``s`` a class of the day extension at ``(cs, bs)``.
    """
    Bf, df, Kf = graded_info(f)
    Cg, dg, Kg = graded_info(g)
    if df != dg:
        raise ValueError(f"doctrine mismatch: {df} vs {dg}")
    if Kf != Kg:
        raise ValueError(f"bound mismatch: {Kf} vs {Kg}")
    if g.source is not Bf and g.source != Bf:
        raise ValueError("boundary mismatch")
    day = day or day_extend(g)
    comp = compose_prof(day, f)
    comp.day = day
    comp.doctrine = df
    comp.bound = Kf
    return comp


def kleisli_unit(a: FinCategory, d: str, bound: int) -> Profunctor:
    """(e_A)_*: elements at (bs, a) are the arity maps bs -> (a)."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    p = star(unit_functor(a, d, bound))
    p.name = "unit"
    return p


# ---------------------------------------------------------------------
# unit and associativity witnesses


def unit_witness_right(g: Profunctor, comp: Optional[Composite] = None):
    """G ⊙ unit ≅ G; returns (composite, forward, backward)."""
    C, d, K = graded_info(g)
    B = g.source
    comp = comp or subst_compose(g, kleisli_unit(B, d, K))
    day = comp.day

    def fwd(cs, b, t):
        bs, s, x = t
        raw = day.push_raw(x, s)
        if raw is None:
            return None
        blocks, v, ys = raw
        return g.left(v, b, ys[0])

    def bwd(cs, b, y):
        s = day.canon(cs, (b,), ((cs,), identity_map(cs, d, C), (y,)))
        return None if s is None else comp.canon(cs, b, ((b,), s, identity_map((b,), d, B)))

    return comp, ProfCell(comp, g, fwd, name="unit-right"), ProfCell(g, comp, bwd, name="unit-right^-1")


def unit_witness_left(f: Profunctor, comp: Optional[Composite] = None):
    """unit ⊙ F ≅ F; returns (composite, forward, backward)."""
    B, d, K = graded_info(f)
    comp = comp or subst_compose(kleisli_unit(B, d, K), f)
    day = comp.day

    def fwd(cs, a, t):
        bs, s, x = t
        blocks, v, ys = s
        Y = tensor_maps(ys, d)
        return f.left(compose_maps(Y, v, B), a, x)

    def bwd(cs, a, x):
        singles = tuple((c,) for c in cs)
        ids = tuple(identity_map((c,), d, B) for c in cs)
        s = day.canon(cs, cs, (singles, identity_map(cs, d, B), ids))
        return None if s is None else comp.canon(cs, a, (cs, s, x))

    return comp, ProfCell(comp, f, fwd, name="unit-left"), ProfCell(f, comp, bwd, name="unit-left^-1")


class AssocWitness:
    """Canonical comparison between (H ⊙ G) ⊙ F and H ⊙ (G ⊙ F)."""

    def __init__(self, h: Profunctor, g: Profunctor, f: Profunctor):
        D, d, K = graded_info(h)
        C = g.target.base
        self.d, self.K = d, K
        self.gf = subst_compose(g, f)
        self.hg = subst_compose(h, g)
        day_h = self.hg.day
        self.left = subst_compose(self.hg, f)
        self.right = subst_compose(h, self.gf, day=day_h)
        gf, hg, left, right = self.gf, self.hg, self.left, self.right
        day_g = gf.day

        def fwd(ds, a, t):
            bs, s, x = t
            blocks, v, zs = s
            cws, inner_blocks, inner_vs, hs = [], [], [], []
            for z in zs:
                cw, si, yi = z
                bl_i, v_i, hs_i = si
                cws.append(cw)
                inner_blocks.extend(bl_i)
                inner_vs.append(v_i)
                hs.extend(hs_i)
            cs = mult_flatten(cws)
            if len(cs) > K:
                return None
            tg = day_g.canon(cs, bs, (tuple(cws), identity_map(cs, d, C), tuple(z[2] for z in zs)))
            if tg is None:
                return None
            w = gf.canon(cs, a, (bs, tg, x))
            if w is None:
                return None
            vv = compose_maps(tensor_maps(inner_vs, d), v, D)
            sh = day_h.canon(ds, cs, (tuple(inner_blocks), vv, tuple(hs)))
            if sh is None:
                return None
            return right.canon(ds, a, (cs, sh, w))

        def bwd(ds, a, t):
            cs, sh, w = t
            bs, tg, x = w
            cblocks, u, ys = tg
            pushed = day_h.push_raw(u, sh)
            if pushed is None:
                return None
            blocks2, v2, hs2 = pushed
            zs, dblocks = [], []
            off = 0
            for i, cw in enumerate(cblocks):
                bl_i = blocks2[off:off + len(cw)]
                hs_i = hs2[off:off + len(cw)]
                off += len(cw)
                d_i = mult_flatten(bl_i)
                si = day_h.canon(d_i, cw, (bl_i, identity_map(d_i, d, D), hs_i))
                if si is None:
                    return None
                z = hg.canon(d_i, bs[i], (cw, si, ys[i]))
                if z is None:
                    return None
                zs.append(z)
                dblocks.append(d_i)
            s = left.day.canon(ds, bs, (tuple(dblocks), v2, tuple(zs)))
            if s is None:
                return None
            return left.canon(ds, a, (bs, s, x))

        self.forward = ProfCell(left, right, fwd, name="assoc")
        self.backward = ProfCell(right, left, bwd, name="assoc^-1")

    def check(self) -> List[Violation]:
        """Mutual inverse on the truncation-safe region, and naturality."""
        out = []
        for ds, a, t in self.left.all_elements():
            y = self.forward(ds, a, t)
            if y is not None and self.backward(ds, a, y) != t:
                out.append(Violation("assoc-not-left-inverse", (ds, a, t)))
        for ds, a, t in self.right.all_elements():
            y = self.backward(ds, a, t)
            if y is not None and self.forward(ds, a, y) != t:
                out.append(Violation("assoc-not-right-inverse", (ds, a, t)))
        out += check_cell(self.forward) + check_cell(self.backward)
        return sorted_report(out)

    def safe_counts(self) -> Tuple[int, int]:
        """Number of elements on each side whose image is defined."""
        lf = sum(1 for ds, a, t in self.left.all_elements() if self.forward(ds, a, t) is not None)
        rb = sum(1 for ds, a, t in self.right.all_elements() if self.backward(ds, a, t) is not None)
        return lf, rb


def assoc_witness(h: Profunctor, g: Profunctor, f: Profunctor) -> AssocWitness:
    return AssocWitness(h, g, f)


def unit_laws_graded(f: Profunctor) -> List[Violation]:
    """Both ⊙ unit laws for F as mutually inverse natural cells."""
    B, d, K = graded_info(f)
    out = []
    for label, (comp, fw, bw) in (
        ("unit-left", unit_witness_left(f)),
        ("unit-right", unit_witness_right(f)),
    ):
        for v in _safe_inverse(fw, bw) + check_cell(fw) + check_cell(bw):
            out.append(Violation(f"{label}:{v.law}", v.witness, v.detail))
    return sorted_report(out)


def _safe_inverse(f: ProfCell, g: ProfCell) -> List[Violation]:
    out = []
    for b, a, x in f.source.all_elements():
        y = f(b, a, x)
        if y is not None and g(b, a, y) != x:
            out.append(Violation("not-left-inverse", (b, a, x)))
    for b, a, y in g.source.all_elements():
        x = g(b, a, y)
        if x is not None and f(b, a, x) != y:
            out.append(Violation("not-right-inverse", (b, a, y)))
    return out


# ---------------------------------------------------------------------
# S_P on plain profunctors


def s_extend(m: Profunctor, d: str, bound: int):
    """S_P(M): S A ⇸ S B as (S q)_* ∘ (S p)^* over the elements factorization.

    Returns (composite, E, p, q).
    """
    E, p, q, *_ = elements_factorization(m)
    Sq = s_functor(q, d, bound)
    Sp = s_functor(p, d, bound)
    comp = compose_prof(star(Sq), costar(Sp))
    return comp, E, p, q


def s_extend_star_comparison(f: Functor, d: str, bound: int):
    """Cell S_P(f_*) => (S f)_* and the target, for checking the canonical iso.

    A class ``(es, y, x)`` goes to ``Sf(x) ∘ g(es) ∘ y`` where ``g(es)`` is
    the letterwise arrow made of the elements ``e = (b, a, g: b -> f a)``.
    """
    ext, E, p, q = s_extend(star(f), d, bound)
    Sf = s_functor(f, d, bound)
    target = star(Sf)
    B = f.target

    def comp(bs, as_, t):
        es, y, x = t
        mid = ArityMap(d, tuple(e[0] for e in es), tuple(f.ob(e[1]) for e in es), tuple(range(len(es))), tuple(e[2] for e in es))
        return compose_maps(Sf.mor(x), compose_maps(mid, y, B), B)

    return ext, target, ProfCell(ext, target, comp, name="S_P(f_*) -> (Sf)_*")


def check_s_extend_star(f: Functor, d: str, bound: int) -> List[Violation]:
    ext, target, cell = s_extend_star_comparison(f, d, bound)
    out = list(check_cell(cell))
    if not is_bijective(cell):
        out.append(Violation("not-bijective", (d, bound)))
    return sorted_report(out)
