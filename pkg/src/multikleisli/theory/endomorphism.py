"""The endomorphism theory of a strict algebra, and models as maps into it."""

from __future__ import annotations

from itertools import product
from typing import List, Optional, Sequence

from ..doctrine import ArityMap, word_category
from ..fincat import FinCategory, Functor, Violation
from ..profunctor import Profunctor
from .algebras import FiniteAlgebra
from .maps import TheoryMap, check_theory_map, enumerate_theory_maps
from .multicategory import Multicategory


def full_subcategory(c: FinCategory, objects: Sequence) -> FinCategory:
    objs = list(objects)
    mor = {}
    for a in objs:
        for b in objs:
            for f in c.hom(a, b):
                mor[f] = (a, b)
    comp = {}
    for g, (b, c2) in mor.items():
        for a in objs:
            for f in c.hom(a, b):
                comp[(g, f)] = c.compose(g, f)
    return FinCategory(objs, mor, {a: c.identity(a) for a in objs}, comp, name=f"full({c.name})")


def endomorphism_theory(x: FiniteAlgebra, K: int, sorts: Optional[Sequence] = None) -> Multicategory:
    """Elements at (bs, a) are the arrows x(bs) -> a.

    ``sorts`` restricts the sort category to a full subcategory (needed for
    algebras with many objects, such as powers of a set).
    """
    C = x.category
    if sorts is None:
        sorts = getattr(x, "sorts", None) or C.objects
    A = full_subcategory(C, sorts)
    d = x.doctrine
    SA = word_category(A, d, K)
    elements = {}
    for n in range(K + 1):
        for bs in product(A.objects, repeat=n):
            o = x.ob(bs)
            if o is None:
                continue
            for a in A.objects:
                hs = C.hom(o, a)
                if hs:
                    elements[(bs, a)] = hs

    def left(u, a, f):
        g = x.act(u)
        return None if g is None else C.compose(f, g)

    def right(alpha, bs, f):
        return C.compose(alpha, f)

    carrier = Profunctor(A, SA, elements, left, right, name=f"End({x.name})")

    def gamma(bs, a, f, inners):
        mids = tuple(x.ob(cs) for cs, _ in inners)
        if any(o is None for o in mids):
            return None
        g = ArityMap(d, mids, bs, tuple(range(len(bs))), tuple(y for _, y in inners))
        h = x.act(g)
        return None if h is None else C.compose(f, h)

    return Multicategory(carrier, {a: A.identity(a) for a in A.objects}, gamma, name=f"End({x.name})")


def check_model(m: Multicategory, x: FiniteAlgebra, t: TheoryMap) -> List[Violation]:
    if t.source is not m:
        return [Violation("model-source", m.name, "assignment is not a map out of this theory")]
    if t.target.doctrine != x.doctrine:
        return [Violation("model-doctrine", (m.doctrine, x.doctrine))]
    return check_theory_map(t)


def enumerate_models(
    m: Multicategory,
    x: FiniteAlgebra,
    sorts: Optional[Sequence] = None,
    functors: Optional[Sequence[Functor]] = None,
    ceiling: Optional[int] = None,
    target: Optional[Multicategory] = None,
) -> List[TheoryMap]:
    """All models of ``m`` in ``x``, ordered by component encoding."""
    if m.doctrine != x.doctrine:
        raise ValueError(f"doctrine mismatch: {m.doctrine} vs {x.doctrine}")
    n = target or endomorphism_theory(x, m.bound, sorts)
    return enumerate_theory_maps(m, n, functors=functors, ceiling=ceiling)
