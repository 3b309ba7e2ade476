"""Random small categories, profunctors and graded profunctors for property tests.

Categories come from a few shapes (random finite posets, small monoids, a
parallel pair, discrete sets).  Profunctors are subfunctors of sums of
representables, optionally quotiented by a congruence, so the actions are
functorial by construction and cells stay small.
"""

from __future__ import annotations

import random
from typing import Hashable, List, Sequence, Tuple

from multikleisli._order import canon_key, canon_sorted
from multikleisli.doctrine import word_category
from multikleisli.fincat import FinCategory, Functor, chain, discrete, enumerate_functors, monoid_category, poset_category, terminal
from multikleisli.profunctor import Profunctor


def random_poset(rng: random.Random, n: int) -> FinCategory:
    edges = {(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.45}
    reach = {(i, i) for i in range(n)} | edges
    changed = True
    while changed:
        changed = False
        for (i, j) in list(reach):
            for (k, l) in list(reach):
                if j == k and (i, l) not in reach:
                    reach.add((i, l))
                    changed = True
    return poset_category(list(range(n)), lambda a, b: (a, b) in reach, name=f"poset{n}")


SMALL_MONOIDS = {
    "Z/2": ([0, 1], lambda a, b: (a + b) % 2, 0),
    "Z/3": ([0, 1, 2], lambda a, b: (a + b) % 3, 0),
    "and": ([0, 1], lambda a, b: a & b, 1),
    "left-zero": (["e", "p", "q"], lambda a, b: b if a == "e" else a, "e"),
}


def parallel_pair() -> FinCategory:
    mor = {"1a": ("a", "a"), "1b": ("b", "b"), "f": ("a", "b"), "g": ("a", "b")}
    comp = {("1a", "1a"): "1a", ("1b", "1b"): "1b", ("f", "1a"): "f", ("g", "1a"): "g", ("1b", "f"): "f", ("1b", "g"): "g"}
    return FinCategory(["a", "b"], mor, {"a": "1a", "b": "1b"}, comp, name="parallel")


def random_category(rng: random.Random, max_objects: int = 4) -> FinCategory:
    kind = rng.choice(["poset", "poset", "monoid", "parallel", "discrete"])
    if kind == "poset":
        return random_poset(rng, rng.randint(1, max_objects))
    if kind == "monoid":
        name = rng.choice(sorted(SMALL_MONOIDS))
        els, mult, unit = SMALL_MONOIDS[name]
        return monoid_category(els, mult, unit)
    if kind == "parallel":
        return parallel_pair()
    return discrete(list(range(rng.randint(1, max_objects))))


def small_category(rng: random.Random) -> FinCategory:
    """Categories small enough for word-level constructions at K=3."""
    return rng.choice([terminal(), chain(2), discrete(["x", "y"]), monoid_category([0, 1], lambda a, b: (a + b) % 2, 0)])


# ---------------------------------------------------------------------
# profunctors


def representable_sum(A: FinCategory, B: FinCategory, gens: Sequence[Tuple[Hashable, Hashable]]) -> Profunctor:
    """sum_i B(b, b_i) x A(a_i, a) with elements (i, beta, alpha)."""
    elements = {}
    for b in B.objects:
        for a in A.objects:
            xs = [(i, beta, alpha) for i, (b0, a0) in enumerate(gens) for beta in B.hom(b, b0) for alpha in A.hom(a0, a)]
            if xs:
                elements[(b, a)] = xs

    def left(beta2, a, x):
        i, beta, alpha = x
        return (i, B.compose(beta, beta2), alpha)

    def right(alpha2, b, x):
        i, beta, alpha = x
        return (i, beta, A.compose(alpha2, alpha))

    return Profunctor(A, B, elements, left, right, name="sum")


def generated_sub(p: Profunctor, seeds: Sequence[Tuple[Hashable, Hashable, Hashable]]) -> Profunctor:
    """Smallest subprofunctor containing the seeds."""
    A, B = p.source, p.target
    keep = set()
    todo = list(seeds)
    while todo:
        b, a, x = todo.pop()
        if (b, a, x) in keep:
            continue
        keep.add((b, a, x))
        for beta in B.hom_into(b):
            todo.append((B.src(beta), a, p.left(beta, a, x)))
        for alpha in A.hom_from(a):
            todo.append((b, A.dst(alpha), p.right(alpha, b, x)))
    elements = {}
    for b, a, x in keep:
        elements.setdefault((b, a), []).append(x)
    return Profunctor(A, B, elements, p.left, p.right, name="sub")


def quotient(p: Profunctor, pairs: Sequence[Tuple[Hashable, Hashable, Hashable, Hashable]]) -> Profunctor:
    """Quotient by the congruence generated by ``(b, a, x, y)`` pairs."""
    A, B = p.source, p.target
    parent = {t: t for t in p.all_elements()}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    def union(s, t):
        rs, rt = find(s), find(t)
        if rs != rt:
            lo, hi = sorted((rs, rt), key=canon_key)
            parent[hi] = lo
            return True
        return False

    for b, a, x, y in pairs:
        union((b, a, x), (b, a, y))
    changed = True
    while changed:
        changed = False
        triples = list(parent)
        for s in triples:
            t = find(s)
            if s == t:
                continue
            b, a, x = s
            y = t[2]
            for beta in B.hom_into(b):
                b2 = B.src(beta)
                changed |= union((b2, a, p.left(beta, a, x)), (b2, a, p.left(beta, a, y)))
            for alpha in A.hom_from(a):
                a2 = A.dst(alpha)
                changed |= union((b, a2, p.right(alpha, b, x)), (b, a2, p.right(alpha, b, y)))
    elements = {}
    for t in parent:
        if find(t) == t:
            elements.setdefault((t[0], t[1]), []).append(t[2])

    def left(beta, a, x):
        return find((B.src(beta), a, p.left(beta, a, x)))[2]

    def right(alpha, b, x):
        return find((b, A.dst(alpha), p.right(alpha, b, x)))[2]

    return Profunctor(A, B, elements, left, right, name="quotient")


def _max_cell(p: Profunctor) -> int:
    return max((len(p.elements(b, a)) for b, a in p.cells()), default=0)


def random_profunctor(rng: random.Random, A: FinCategory, B: FinCategory, max_cell: int = 3) -> Profunctor:
    for _ in range(40):
        gens = [(rng.choice(B.objects), rng.choice(A.objects)) for _ in range(rng.randint(1, 2))]
        full = representable_sum(A, B, gens)
        triples = list(full.all_elements())
        if not triples:
            continue
        p = generated_sub(full, rng.sample(triples, min(len(triples), rng.randint(1, 2))))
        if rng.random() < 0.4:
            cells = [c for c in p.cells() if len(p.elements(*c)) >= 2]
            if cells:
                b, a = rng.choice(cells)
                x, y = rng.sample(list(p.elements(b, a)), 2)
                p = quotient(p, [(b, a, x, y)])
        if _max_cell(p) <= max_cell:
            return p
    return Profunctor(A, B, {}, lambda *t: None, lambda *t: None, name="empty")


def random_chain_of_categories(rng: random.Random, n: int, max_objects: int = 3) -> List[FinCategory]:
    return [random_category(rng, max_objects) for _ in range(n)]


def random_functor(rng: random.Random, A: FinCategory, B: FinCategory) -> Functor:
    fs = enumerate_functors(A, B)
    return rng.choice(fs) if fs else None


# ---------------------------------------------------------------------
# graded profunctors A ⇸ S_K B


def random_graded(rng: random.Random, A: FinCategory, B: FinCategory, d: str, K: int, max_len: int = 2, max_count: int = 12) -> Profunctor:
    """A small subprofunctor of sum S_K B(bs, w_i) x A(a_i, a), one or two generators."""
    SB = word_category(B, d, K)
    words = [w for w in SB.objects if len(w) <= max_len]
    for _ in range(40):
        gens = [(rng.choice(words), rng.choice(A.objects)) for _ in range(rng.randint(1, 2))]
        full = representable_sum(A, SB, gens)
        triples = [t for t in full.all_elements() if len(t[0]) <= max_len]
        if not triples:
            continue
        p = generated_sub(full, rng.sample(triples, min(len(triples), len(gens))))
        if p.count() <= max_count:
            return p
    return Profunctor(A, SB, {}, lambda *t: None, lambda *t: None, name="empty")


def sorted_elements(p: Profunctor) -> List:
    return canon_sorted(p.all_elements())
