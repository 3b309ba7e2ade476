"""The free strict algebra C(M) on a theory: Lawvere theories and PROPs.

Objects of C(M) are words over the sorts.  A morphism ``bs -> as`` is a
class of the day extension of the carrier at ``(bs, as)``: one block of
inputs for every letter of ``as``, an operation from each block to its
letter, and an arity map from ``bs`` onto the concatenated blocks.  So
``hom(bs, (a,))`` is ``M(bs, a)``, composition substitutes, and tensor
juxtaposes.  Morphism ids are ``(source, target, representative)``.
"""

from __future__ import annotations

from typing import Dict, Hashable, List, Optional, Tuple

from ._order import canon_sorted
from .doctrine import (
    CARTESIAN,
    PLANAR,
    SYMMETRIC,
    ArityMap,
    block_reindex,
    compose_maps,
    identity_map,
    mult_flatten,
    tensor_maps,
)
from .fincat import FinCategory, Functor, Violation, sorted_report, validate_category
from .kleisli import DayExtension
from .theory.algebras import FiniteAlgebra
from .theory.endomorphism import endomorphism_theory
from .theory.maps import TheoryMap, check_theory_map
from .theory.multicategory import Multicategory, check_theory


class EnvelopeError(ValueError):
    pass


class Envelope(FinCategory):
    def __init__(self, m: Multicategory):
        self.theory = m
        self.doctrine = m.doctrine
        self.bound = m.bound
        self.sorts = m.sorts
        self.S = m.S
        self.day = DayExtension(m.carrier)
        self.objects = tuple(self.S.objects)
        self._objset = set(self.objects)
        self.name = f"C({m.name or 'M'})"
        self.overrides: Dict[Tuple[Hashable, Hashable], Hashable] = {}
        self._ccache: Dict = {}

    # -- category structure ------------------------------------------

    def src(self, f):
        return f[0]

    def dst(self, f):
        return f[1]

    def hom(self, x, y):
        return tuple((x, y, r) for r in canon_sorted(self.day._classes.get((x, y), {})))

    def has_object(self, x):
        return x in self._objset

    def has_morphism(self, f):
        return isinstance(f, tuple) and len(f) == 3 and f[2] in self.day._classes.get((f[0], f[1]), {})

    def identity(self, x):
        m = self.theory
        singles = tuple((a,) for a in x)
        rep = self.day.canon(x, x, (singles, identity_map(x, self.doctrine, self.sorts), tuple(m.unit(a) for a in x)))
        return (x, x, rep)

    def compose(self, g, f):
        key = (g, f)
        if key in self.overrides:
            return self.overrides[key]
        if f[1] != g[0]:
            return None
        try:
            return self._ccache[key]
        except KeyError:
            r = self._ccache[key] = self._compose(g, f)
            return r

    def _compose(self, g, f):
        m, day = self.theory, self.day
        bs, as_, rf = f
        _, cs, rg = g
        blocks_g, v_g, ns = rg
        pushed = day.push_raw(v_g, rf)
        if pushed is None:
            return None
        blocks, v, ms = pushed
        out_blocks, out_elems = [], []
        off = 0
        for k, c in enumerate(cs):
            width = len(blocks_g[k])
            sub_b = blocks[off:off + width]
            sub_m = ms[off:off + width]
            off += width
            r = m.gamma(blocks_g[k], c, ns[k], tuple(zip(sub_b, sub_m)))
            if r is None:
                return None
            out_blocks.append(mult_flatten(sub_b))
            out_elems.append(r)
        rep = day.canon(bs, cs, (tuple(out_blocks), v, tuple(out_elems)))
        return None if rep is None else (bs, cs, rep)

    # -- monoidal structure ------------------------------------------

    def tensor_objects(self, x, y):
        w = tuple(x) + tuple(y)
        return w if len(w) <= self.bound else None

    def tensor(self, f, g) -> Optional[Hashable]:
        src, dst = self.tensor_objects(f[0], g[0]), self.tensor_objects(f[1], g[1])
        if src is None or dst is None:
            return None
        bf, vf, yf = f[2]
        bg, vg, yg = g[2]
        rep = self.day.canon(src, dst, (bf + bg, tensor_maps([vf, vg], self.doctrine), yf + yg))
        return None if rep is None else (src, dst, rep)

    def embed(self, u: ArityMap) -> Optional[Hashable]:
        """h: the identity-on-objects functor from the word category."""
        m, day = self.theory, self.day
        singles = tuple((a,) for a in u.src)
        ident = (singles, identity_map(u.src, self.doctrine, self.sorts), tuple(m.unit(a) for a in u.src))
        pushed = day.push_raw(u, ident)
        if pushed is None:
            return None
        rep = day.canon(u.src, u.dst, pushed)
        return None if rep is None else (u.src, u.dst, rep)

    def embedding(self) -> Functor:
        return Functor(self.S, self, lambda w: w, self.embed, name="h")

    # -- restriction law ---------------------------------------------

    def restrict(self, f) -> Optional[Hashable]:
        """hom(bs, (a,)) -> M(bs, a)."""
        bs, (a,), (blocks, v, ys) = f
        return self.theory.act(v, a, ys[0])

    def extend(self, bs, a, x) -> Optional[Hashable]:
        """M(bs, a) -> hom(bs, (a,))."""
        rep = self.day.canon(bs, (a,), ((bs,), identity_map(bs, self.doctrine, self.sorts), (x,)))
        return None if rep is None else (bs, (a,), rep)

    def hom_counts(self) -> Dict[Tuple[int, int], int]:
        """|hom(m-word, n-word)| for a one-sorted theory."""
        (a,) = self.sorts.objects
        K = self.bound
        return {(i, j): len(self.hom((a,) * i, (a,) * j)) for i in range(K + 1) for j in range(K + 1)}

    def __eq__(self, other):
        return self is other

    __hash__ = object.__hash__

    def __repr__(self):
        return f"<Envelope {self.name} {self.doctrine} K={self.bound}>"


def free_algebra_envelope(m: Multicategory, check: bool = True) -> Envelope:
    if check:
        report = check_theory(m)
        if report:
            raise EnvelopeError(f"theory fails its law check ({len(report)} violations); first: {report[0]}")
    return Envelope(m)


def _guarded(m: Multicategory, d: str, check: bool) -> Envelope:
    if m.doctrine != d:
        raise EnvelopeError(f"expected a {d} theory, got {m.doctrine}")
    return free_algebra_envelope(m, check=check)


def lawvere_theory(m: Multicategory, check: bool = True) -> Envelope:
    return _guarded(m, CARTESIAN, check)


def prop(m: Multicategory, check: bool = True) -> Envelope:
    return _guarded(m, SYMMETRIC, check)


def planar_prop(m: Multicategory, check: bool = True) -> Envelope:
    return _guarded(m, PLANAR, check)


# ---------------------------------------------------------------------
# checks


def check_envelope(e: Envelope) -> List[Violation]:
    # only copying can push an intermediate word past the bound
    out = list(validate_category(e, partial=e.doctrine == CARTESIAN))
    out += _check_restriction(e)
    out += _check_tensor(e)
    out += _check_embedding(e)
    return sorted_report(out)


def _check_restriction(e: Envelope) -> List[Violation]:
    out = []
    m = e.theory
    for bs in e.objects:
        for a in e.sorts.objects:
            homs = e.hom(bs, (a,))
            img = [e.restrict(f) for f in homs]
            elems = set(m.elements(bs, a))
            if len(set(img)) != len(img) or set(img) != elems:
                out.append(Violation("restriction-law", (bs, a), f"{len(homs)} morphisms vs {len(elems)} elements"))
                continue
            for x in elems:
                if e.restrict(e.extend(bs, a, x)) != x:
                    out.append(Violation("restriction-inverse", (bs, a, x)))
    return out


def _check_tensor(e: Envelope) -> List[Violation]:
    out = []
    K = e.bound
    unit = ()
    arrows = list(e.morphisms())
    for f in arrows:
        if e.tensor(e.identity(unit), f) != f or e.tensor(f, e.identity(unit)) != f:
            out.append(Violation("tensor-unit", f))
    for x in e.objects:
        for y in e.objects:
            if len(x) + len(y) <= K and e.tensor(e.identity(x), e.identity(y)) != e.identity(x + y):
                out.append(Violation("tensor-identity", (x, y)))
    short = [f for f in arrows if max(len(f[0]), len(f[1])) <= K - 1]
    for f in short:
        for g in short:
            fg = e.tensor(f, g)
            if fg is None:
                continue
            for h in short:
                lhs = e.tensor(fg, h)
                gh = e.tensor(g, h)
                rhs = None if gh is None else e.tensor(f, gh)
                if lhs != rhs:
                    out.append(Violation("tensor-associativity", (f, g, h)))
    # interchange: (g ⊗ g2)∘(f ⊗ f2) = (g∘f) ⊗ (g2∘f2)
    pairs = [(f, g) for f in arrows for g in e.hom_from(f[1])]
    for f, g in pairs:
        for f2, g2 in pairs:
            if len(f[0]) + len(f2[0]) > K or len(f[1]) + len(f2[1]) > K or len(g[1]) + len(g2[1]) > K:
                continue
            a, b = e.tensor(f, f2), e.tensor(g, g2)
            lhs = None if a is None or b is None else e.compose(b, a)
            gf, gf2 = e.compose(g, f), e.compose(g2, f2)
            rhs = None if gf is None or gf2 is None else e.tensor(gf, gf2)
            if lhs is None or rhs is None:
                continue
            if lhs != rhs:
                out.append(Violation("tensor-interchange", (f, g, f2, g2)))
    return out


def _check_embedding(e: Envelope) -> List[Violation]:
    out = []
    S, d, C = e.S, e.doctrine, e.sorts
    for x in S.objects:
        if e.embed(S.identity(x)) != e.identity(x):
            out.append(Violation("embedding-identity", x))
    maps = [u for x in S.objects for y in S.objects for u in S.hom(x, y)]
    for u in maps:
        hu = e.embed(u)
        if hu is None or (hu[0], hu[1]) != (u.src, u.dst):
            out.append(Violation("embedding-typing", u))
            continue
        for w in S.objects:
            for v in S.hom(u.dst, w):
                hv = e.embed(v)
                if e.embed(compose_maps(v, u, C)) != e.compose(hv, hu):
                    out.append(Violation("embedding-composition", (v, u)))
    for u in maps:
        for v in maps:
            if len(u.src) + len(v.src) > e.bound or len(u.dst) + len(v.dst) > e.bound:
                continue
            if e.embed(tensor_maps([u, v], d)) != e.tensor(e.embed(u), e.embed(v)):
                out.append(Violation("embedding-tensor", (u, v)))
    return out


# ---------------------------------------------------------------------
# C(M) as a strict algebra, and the unit M -> its endomorphism theory


class EnvelopeAlgebra(FiniteAlgebra):
    """C(M) with concatenation as its (strict) structure map."""

    def __init__(self, e: Envelope):
        self.envelope = e
        self.doctrine = e.doctrine
        self.category = e
        self.name = e.name
        self.sorts = tuple((a,) for a in e.sorts.objects)

    def ob(self, word):
        if any(w is None for w in word):
            return None
        w = mult_flatten(word)
        return w if len(w) <= self.envelope.bound else None

    def act(self, u: ArityMap):
        e = self.envelope
        src, dst = self.ob(u.src), self.ob(u.dst)
        if src is None or dst is None:
            return None
        R = block_reindex(u.src, u.index, self.doctrine, e.sorts)
        hR = e.embed(R)
        parts = list(u.arrows)
        if not parts:
            body = e.identity(())
        else:
            body = parts[0]
            for p in parts[1:]:
                body = e.tensor(body, p)
                if body is None:
                    return None
        return None if hR is None else e.compose(body, hR)


def envelope_unit(m: Multicategory, e: Optional[Envelope] = None) -> TheoryMap:
    """M -> End(C(M)) on singleton words, x |-> the morphism it names."""
    e = e or Envelope(m)
    alg = EnvelopeAlgebra(e)
    end = endomorphism_theory(alg, m.bound, sorts=alg.sorts)
    d = m.doctrine

    def mor(alpha):
        a0, a1 = m.sorts.src(alpha), m.sorts.dst(alpha)
        return e.embed(ArityMap(d, (a0,), (a1,), (0,), (alpha,)))

    f = Functor(m.sorts, end.sorts, lambda a: (a,), mor, name="singleton")
    comps = {(bs, a, x): e.extend(bs, a, x) for bs, a, x in m.all_elements()}
    return TheoryMap(m, end, f, comps, name="envelope-unit")


def unit_is_bijective(t: TheoryMap) -> bool:
    """Every component M(bs, a) -> hom(bs, (a,)) is a bijection."""
    M, N, f = t.source, t.target, t.functor
    cells: Dict = {}
    for (bs, a, x), y in t.components.items():
        cells.setdefault((bs, a), []).append(y)
    for bs in M.S.objects:
        for a in M.sorts.objects:
            img = cells.get((bs, a), [])
            target = N.elements(tuple(f.ob(b) for b in bs), f.ob(a))
            if len(set(img)) != len(img) or set(img) != set(target):
                return False
    return True


def check_envelope_unit(m: Multicategory) -> List[Violation]:
    return check_theory_map(envelope_unit(m))
