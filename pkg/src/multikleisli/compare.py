"""Changing doctrine along planar <= symmetric <= cartesian.

``pushforward_theory`` freely adds the arity maps of the larger doctrine:
its elements at ``(as, a)`` are classes of ``(bs, y, x)`` with ``y: as -> bs``
an arity map of the larger doctrine and ``x`` in ``M(bs, a)``, identified
along arity maps of the smaller one.  ``pullback_theory`` keeps the same
elements and forgets the extra actions.  ``adjunction_check`` enumerates
both sides of the hom-set bijection and the explicit transposes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from .doctrine import (
    CARTESIAN,
    DOCTRINES,
    block_reindex,
    check_doctrine,
    compose_maps,
    doctrine_leq,
    identity_map,
    include_map,
    inclusion_functor,
    map_arity,
    map_word,
    s_objects_upto,
    tensor_maps,
    unit_functor,
    word_category,
)
from .fincat import FinCategory, Functor, Violation, check_functor, enumerate_functors, sorted_report
from .profunctor import Profunctor, compose_prof, star
from .theory.maps import TheoryMap, check_theory_map, compose_theory_maps, enumerate_theory_maps, identity_theory_map
from .theory.multicategory import Multicategory, check_normality


@dataclass(frozen=True)
class DoctrineMap:
    source: str
    target: str

    def __post_init__(self):
        check_doctrine(self.source)
        check_doctrine(self.target)
        if not doctrine_leq(self.source, self.target):
            raise ValueError(f"no doctrine map {self.source} -> {self.target}")

    def functor(self, a: FinCategory, K: int) -> Functor:
        return inclusion_functor(a, self.source, self.target, K)

    def then(self, other: "DoctrineMap") -> "DoctrineMap":
        if other.source != self.target:
            raise ValueError("doctrine maps not composable")
        return DoctrineMap(self.source, other.target)

    def __str__(self):
        return f"{self.source}->{self.target}"


SYMMETRIZE = DoctrineMap("planar", "symmetric")
CARTESIANIZE = DoctrineMap("symmetric", "cartesian")
PLANAR_TO_CARTESIAN = DoctrineMap("planar", "cartesian")


def check_doctrine_map(k: DoctrineMap, a: FinCategory, K: int) -> List[Violation]:
    """The inclusion is a functor commuting with the unit and with flattening."""
    F = k.functor(a, K)
    out = list(check_functor(F))
    eT, eS = unit_functor(a, k.source, K), unit_functor(a, k.target, K)
    for f in a.morphisms():
        if F.mor(eT.mor(f)) != eS.mor(f):
            out.append(Violation("doctrine-map-unit", f))
    words = s_objects_upto(a, k.source, K)
    for n in range(1, K + 1):
        for ws in _splits(words, n, K):
            for u in _block_maps(ws, k.source):
                lhs = include_map(block_reindex(ws, u, k.source, a), k.target)
                rhs = block_reindex(ws, u, k.target, a)
                if lhs != rhs:
                    out.append(Violation("doctrine-map-flatten", (ws, u)))
    return sorted_report(out)


def _splits(words, n, K):
    from itertools import product

    for ws in product(words, repeat=n):
        if sum(len(w) for w in ws) <= K:
            yield ws


def _block_maps(ws, d):
    from .doctrine import index_candidates

    return index_candidates(d, len(ws), len(ws))


# ---------------------------------------------------------------------
# pushforward and pullback


def pushforward_theory(k: DoctrineMap, m: Multicategory) -> Multicategory:
    if m.doctrine != k.source:
        raise ValueError(f"expected a {k.source} theory, got {m.doctrine}")
    A, K, d = m.sorts, m.bound, k.target
    comp = compose_prof(star(k.functor(A, K)), m.carrier)
    comp.name = f"{k.target}({m.name})"

    def gamma(as_, a, f, inners):
        bs, u, x = f
        phi = u.index
        mids = tuple(t[0] for _, t in inners)
        xs = tuple(t[2] for _, t in inners)
        us = tuple(t[1] for _, t in inners)
        pulled = []
        for i, j in enumerate(phi):
            y = m.act_sort(u.arrows[i], mids[j], xs[j])
            if y is None:
                return None
            pulled.append((mids[j], y))
        r = m.gamma(bs, a, x, tuple(pulled))
        if r is None:
            return None
        R = block_reindex(mids, phi, d, A)
        v = compose_maps(R, tensor_maps(us, d), A)
        return comp.canon(v.src, a, (v.dst, v, r))

    unit = {a: comp.canon((a,), a, ((a,), identity_map((a,), d, A), m.unit(a))) for a in A.objects}
    # copying can need a middle word longer than the bound
    partial = m.partial or (k.target == CARTESIAN and k.source != CARTESIAN)
    out = Multicategory(comp, unit, gamma, name=f"{k.target}({m.name})", partial=partial)
    out.normal = not check_normality(out)
    return out


def pullback_theory(k: DoctrineMap, n: Multicategory) -> Multicategory:
    if n.doctrine != k.target:
        raise ValueError(f"expected a {k.target} theory, got {n.doctrine}")
    A, K = n.sorts, n.bound
    TA = word_category(A, k.source, K)
    elements = {(bs, a): n.elements(bs, a) for (bs, a) in n.carrier.cells()}

    def left(u, a, x):
        return n.act(include_map(u, k.target), a, x)

    carrier = Profunctor(A, TA, elements, left, lambda alpha, bs, x: n.act_sort(alpha, bs, x), name=f"{k.source}({n.name})")
    unit = {a: n.unit(a) for a in A.objects}
    out = Multicategory(
        carrier, unit, lambda bs, a, x, inners: n.gamma(bs, a, x, inners), normal=n.normal, name=f"{k.source}({n.name})", partial=n.partial
    )
    return out


def pushforward_map(k: DoctrineMap, t: TheoryMap, source: Optional[Multicategory] = None, target: Optional[Multicategory] = None) -> TheoryMap:
    """k_*(t): class (bs, y, x) |-> class (Sf bs, Sf y, t(x))."""
    km = source or pushforward_theory(k, t.source)
    km2 = target or pushforward_theory(k, t.target)
    f = t.functor
    comps = {}
    for as_, a, rep in km.all_elements():
        bs, y, x = rep
        img = t(bs, a, x)
        comps[(as_, a, rep)] = km2.carrier.canon(map_word(f, as_), f.ob(a), (map_word(f, bs), map_arity(f, y), img))
    return TheoryMap(km, km2, f, comps, name=f"{k.target}({t.name})")


def pullback_map(k: DoctrineMap, t: TheoryMap, source: Optional[Multicategory] = None, target: Optional[Multicategory] = None) -> TheoryMap:
    kn = source or pullback_theory(k, t.source)
    kn2 = target or pullback_theory(k, t.target)
    return TheoryMap(kn, kn2, t.functor, dict(t.components), name=f"{k.source}({t.name})")


# ---------------------------------------------------------------------
# transposes


def flat(k: DoctrineMap, s: TheoryMap, m: Multicategory, kn: Multicategory) -> TheoryMap:
    """k_*m -> n  gives  m -> k^*n:  x |-> s(class (bs, id, x))."""
    km = s.source
    d = k.target
    comps = {}
    for bs, a, x in m.all_elements():
        rep = km.carrier.canon(bs, a, (bs, identity_map(bs, d, m.sorts), x))
        comps[(bs, a, x)] = s(bs, a, rep)
    return TheoryMap(m, kn, s.functor, comps, name="flat")


def sharp(k: DoctrineMap, t: TheoryMap, km: Multicategory, n: Multicategory) -> TheoryMap:
    """m -> k^*n  gives  k_*m -> n:  class (bs, y, x) |-> t(x)·(Sf y)."""
    f = t.functor
    comps = {}
    for as_, a, rep in km.all_elements():
        bs, y, x = rep
        comps[(as_, a, rep)] = n.act(map_arity(f, y), f.ob(a), t(bs, a, x))
    return TheoryMap(km, n, f, comps, name="sharp")


def _same(t1: TheoryMap, t2: TheoryMap) -> bool:
    return t1.functor == t2.functor and t1.components == t2.components


@dataclass
class AdjunctionReport:
    doctrine_map: str
    left_count: int
    right_count: int
    pairing: List[Tuple[int, int]]
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and self.left_count == self.right_count

    def as_dict(self) -> Dict:
        return {
            "doctrine_map": self.doctrine_map,
            "left_count": self.left_count,
            "right_count": self.right_count,
            "pairing": [list(p) for p in self.pairing],
            "violations": [str(v) for v in self.violations],
            "ok": self.ok,
        }


def adjunction_check(
    k: DoctrineMap,
    m: Multicategory,
    n: Multicategory,
    functors: Optional[Sequence[Functor]] = None,
    ceiling: Optional[int] = None,
) -> AdjunctionReport:
    """Enumerate TheoryMap(k_*m, n) and TheoryMap(m, k^*n) and pair them."""
    km = pushforward_theory(k, m)
    kn = pullback_theory(k, n)
    if functors is None:
        functors = enumerate_functors(m.sorts, n.sorts)
    left = enumerate_theory_maps(km, n, functors=functors, ceiling=ceiling)
    right = enumerate_theory_maps(m, kn, functors=functors, ceiling=ceiling)
    out: List[Violation] = []
    pairing = []
    used = set()
    for i, s in enumerate(left):
        s_flat = flat(k, s, m, kn)
        js = [j for j, t in enumerate(right) if _same(s_flat, t)]
        if len(js) != 1:
            out.append(Violation("adjunction-flat-not-matched", i, f"{len(js)} matches"))
            continue
        pairing.append((i, js[0]))
        used.add(js[0])
        if not _same(sharp(k, s_flat, km, n), s):
            out.append(Violation("adjunction-sharp-flat", i))
    for j, t in enumerate(right):
        if j not in used:
            out.append(Violation("adjunction-not-surjective", j))
        t_sharp = sharp(k, t, km, n)
        bad = check_theory_map(t_sharp)
        if bad:
            out.append(Violation("adjunction-sharp-invalid", j, str(bad[0])))
            continue
        if not _same(flat(k, t_sharp, m, kn), t):
            out.append(Violation("adjunction-flat-sharp", j))
    return AdjunctionReport(str(k), len(left), len(right), pairing, sorted_report(out))


def adjunction_unit(k: DoctrineMap, m: Multicategory, km: Optional[Multicategory] = None) -> TheoryMap:
    """m -> k^* k_* m, the transpose of the identity of k_* m."""
    km = km or pushforward_theory(k, m)
    return flat(k, identity_theory_map(km), m, pullback_theory(k, km))


def adjunction_counit(k: DoctrineMap, n: Multicategory, kn: Optional[Multicategory] = None) -> TheoryMap:
    """k_* k^* n -> n, the transpose of the identity of k^* n."""
    kn = kn or pullback_theory(k, n)
    return sharp(k, identity_theory_map(kn), pushforward_theory(k, kn), n)


def triangle_identities(k: DoctrineMap, m: Multicategory, n: Multicategory, validate: bool = True) -> List[Violation]:
    """counit_{k_* m} . k_*(unit_m) = id  and  k^*(counit_n) . unit_{k^* n} = id.

    ``validate`` also law-checks the unit and counit maps, which costs far
    more than the two equations on large targets.
    """
    out: List[Violation] = []
    km = pushforward_theory(k, m)
    eta_m = adjunction_unit(k, m, km)
    if validate:
        out += [Violation("unit-" + v.law, v.witness, v.detail) for v in check_theory_map(eta_m)]
    k_eta = pushforward_map(k, eta_m, source=km)
    eps_km = adjunction_counit(k, km, kn=eta_m.target)
    eps_km = TheoryMap(k_eta.target, km, eps_km.functor, eps_km.components)
    first = compose_theory_maps(eps_km, k_eta)
    if not _same(first, identity_theory_map(km)):
        out.append(Violation("triangle-left", m.name))
    kn = pullback_theory(k, n)
    eps_n = adjunction_counit(k, n, kn)
    if validate:
        out += [Violation("counit-" + v.law, v.witness, v.detail) for v in check_theory_map(eps_n)]
    eta_kn = adjunction_unit(k, kn)
    k_eps = pullback_map(k, eps_n, source=eta_kn.target, target=kn)
    second = compose_theory_maps(k_eps, eta_kn)
    if not _same(second, identity_theory_map(kn)):
        out.append(Violation("triangle-right", n.name))
    return sorted_report(out)


DOCTRINE_MAPS = [DoctrineMap(a, b) for a in DOCTRINES for b in DOCTRINES if a != b and doctrine_leq(a, b)]


def composite_comparison(m: Multicategory, first: DoctrineMap, second: DoctrineMap) -> Tuple[TheoryMap, List[Violation]]:
    """The canonical map (second . first)_* m -> second_* first_* m and its defects.

    The map sends the class of ``(bs, y, x)`` to the class of
    ``(bs, y, class (bs, id, x))``; it should be a bijective theory map.
    """
    direct = pushforward_theory(first.then(second), m)
    mid = pushforward_theory(first, m)
    two = pushforward_theory(second, mid)
    A = m.sorts
    comps = {}
    for as_, a, rep in direct.all_elements():
        bs, y, x = rep
        inner = mid.carrier.canon(bs, a, (bs, identity_map(bs, first.target, A), x))
        comps[(as_, a, rep)] = two.carrier.canon(as_, a, (bs, y, inner))
    t = TheoryMap(direct, two, identity_theory_map(m).functor, comps, name="comparison")
    out = list(check_theory_map(t))
    for (as_, a) in direct.carrier.cells():
        image = [comps[(as_, a, r)] for r in direct.elements(as_, a)]
        if len(set(image)) != len(image) or set(image) != set(two.elements(as_, a)):
            out.append(Violation("comparison-not-bijective", (as_, a), f"{len(set(image))} images vs {len(two.elements(as_, a))}"))
    return t, sorted_report(out)
