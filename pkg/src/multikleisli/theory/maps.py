"""Maps of theories, 2-cells between them, and exhaustive map search.

A :class:`TheoryMap` sends ``x`` in ``M(bs, a)`` to an element of
``N(Sf bs, f a)``.  Its laws are one list of *constraints*, each saying
"the component at some output element equals a function of the components
at some input elements".  Checking a map evaluates every constraint; the
search assigns components one element at a time and lets constraints whose
inputs are all known force (or refute) their output.
"""

from __future__ import annotations

import os
import sys
from typing import Callable, Dict, Hashable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from .._order import canon_key
from ..doctrine import ArityMap, identity_map, map_arity, map_word, mult_flatten
from ..fincat import (
    Functor,
    NatTransformation,
    Violation,
    check_functor,
    check_nat,
    compose_functors,
    enumerate_functors,
    identity_functor,
    sorted_report,
)
from .multicategory import Multicategory

DEFAULT_CEILING = 10**6
Key = Tuple[Tuple, Hashable, Hashable]


class CeilingExceeded(RuntimeError):
    """Raised instead of silently truncating an enumeration."""


def ceiling_from_env(default: int = DEFAULT_CEILING) -> int:
    raw = os.environ.get("MULTIKLEISLI_CEILING")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"MULTIKLEISLI_CEILING must be an integer, got {raw!r}") from None


class TheoryMap:
    def __init__(self, source: Multicategory, target: Multicategory, functor: Functor, components: Mapping[Key, Hashable], name=None):
        self.source = source
        self.target = target
        self.functor = functor
        self.components: Dict[Key, Hashable] = dict(components)
        self.name = name

    def __call__(self, bs, a, x) -> Optional[Hashable]:
        return self.components.get((tuple(bs), a, x))

    def encoding(self) -> tuple:
        """Lexicographic sort key: sort functor first, then components."""
        f = self.functor
        obs = tuple(canon_key(f.ob(a)) for a in sorted(self.source.sorts.objects, key=canon_key))
        comps = tuple(canon_key(self.components.get(k)) for k in sorted(self.components, key=canon_key))
        return obs, comps

    def __eq__(self, other):
        if not isinstance(other, TheoryMap):
            return NotImplemented
        return self.functor == other.functor and self.components == other.components

    __hash__ = object.__hash__

    def __repr__(self):
        return f"<TheoryMap {self.name or ''} with {len(self.components)} components>"


class _Constraint(NamedTuple):
    law: str
    witness: Hashable
    inputs: Tuple[Key, ...]
    output: Key
    fn: Callable[..., Optional[Hashable]]


def _constraints(M: Multicategory, N: Multicategory, f: Functor) -> List[_Constraint]:
    S, C, d, K = M.S, M.sorts, M.doctrine, M.bound
    out: List[_Constraint] = []
    for a in C.objects:
        fa = f.ob(a)
        out.append(_Constraint("map-unit", a, (), ((a,), a, M.unit(a)), lambda fa=fa: N.unit(fa)))
    for bs, a, x in M.all_elements():
        k = (bs, a, x)
        fa = f.ob(a)
        for src in S.objects:
            for u in S.hom(src, bs):
                if u == identity_map(bs, d, C):
                    continue
                x2 = M.act(u, a, x)
                if x2 is None:
                    continue
                Su = map_arity(f, u)
                out.append(_Constraint("map-left-action", (u, a, x), (k,), (src, a, x2), lambda v, Su=Su, fa=fa: N.act(Su, fa, v)))
        Sbs = map_word(f, bs)
        for alpha in C.hom_from(a):
            if alpha == C.identity(a):
                continue
            x2 = M.act_sort(alpha, bs, x)
            if x2 is None:
                continue
            fal = f.mor(alpha)
            out.append(_Constraint("map-right-action", (alpha, bs, x), (k,), (bs, C.dst(alpha), x2), lambda v, fal=fal, Sbs=Sbs: N.act_sort(fal, Sbs, v)))
        for ys in M.inner_tuples(bs, K):
            r = M.gamma(bs, a, x, ys)
            if r is None:
                continue
            cat = mult_flatten(c for c, _ in ys)
            inputs = (k,) + tuple((cs, bs[i], y) for i, (cs, y) in enumerate(ys))
            Scs = tuple(map_word(f, cs) for cs, _ in ys)

            def fn(v, *ws, Sbs=Sbs, fa=fa, Scs=Scs):
                return N.gamma(Sbs, fa, v, tuple(zip(Scs, ws)))

            out.append(_Constraint("map-subst", (bs, a, x, ys), inputs, (cat, a, r), fn))
    return out


def _domains(M: Multicategory, N: Multicategory, f: Functor) -> Dict[Key, Tuple[Hashable, ...]]:
    return {(bs, a, x): N.elements(map_word(f, bs), f.ob(a)) for bs, a, x in M.all_elements()}


def check_theory_map(t: TheoryMap) -> List[Violation]:
    M, N, f = t.source, t.target, t.functor
    out = list(check_functor(f))
    if M.doctrine != N.doctrine:
        out.append(Violation("map-doctrine", (M.doctrine, N.doctrine)))
    if out:
        return sorted_report(out)
    domains = _domains(M, N, f)
    for key, dom in domains.items():
        y = t.components.get(key)
        if y is None:
            out.append(Violation("map-component-missing", key))
        elif y not in dom:
            out.append(Violation("map-typing", key, f"{y!r} not in N{(map_word(f, key[0]), f.ob(key[1]))!r}"))
    if out:
        return sorted_report(out)
    comp = t.components
    for c in _constraints(M, N, f):
        val = c.fn(*(comp[i] for i in c.inputs))
        if val is None:
            continue
        if comp[c.output] != val:
            out.append(Violation(c.law, c.witness, f"component {comp[c.output]!r} but law forces {val!r}"))
    return sorted_report(out)


class TheoryCell:
    """A 2-cell ``t1 => t2`` given by a natural transformation between sort functors."""

    def __init__(self, source: TheoryMap, target: TheoryMap, nat: NatTransformation):
        self.source = source
        self.target = target
        self.nat = nat


def check_theory_cell(c: TheoryCell) -> List[Violation]:
    t1, t2 = c.source, c.target
    M, N = t1.source, t1.target
    out = list(check_nat(c.nat))
    if out:
        return sorted_report(out)
    theta = c.nat.components
    d = M.doctrine
    f1, f2 = t1.functor, t2.functor
    for bs, a, x in M.all_elements():
        y1, y2 = t1(bs, a, x), t2(bs, a, x)
        if y1 is None or y2 is None:
            out.append(Violation("cell-component-missing", (bs, a, x)))
            continue
        sth = ArityMap(d, map_word(f1, bs), map_word(f2, bs), tuple(range(len(bs))), tuple(theta[b] for b in bs))
        lhs = N.act_sort(theta[a], map_word(f1, bs), y1)
        rhs = N.act(sth, f2.ob(a), y2)
        if lhs != rhs:
            out.append(Violation("cell-compatibility", (bs, a, x), f"{lhs!r} != {rhs!r}"))
    return sorted_report(out)


# ---------------------------------------------------------------------
# search


def enumerate_theory_maps(
    M: Multicategory,
    N: Multicategory,
    functors: Optional[Sequence[Functor]] = None,
    ceiling: Optional[int] = None,
) -> List[TheoryMap]:
    """Every valid map M -> N, over the given sort functors (default: all).

    ``ceiling`` bounds the number of search nodes; exceeding it raises
    :class:`CeilingExceeded`.
    """
    if M.doctrine != N.doctrine:
        raise ValueError(f"doctrine mismatch: {M.doctrine} vs {N.doctrine}")
    ceiling = ceiling_from_env() if ceiling is None else ceiling
    if functors is None:
        functors = enumerate_functors(M.sorts, N.sorts)
    budget = [ceiling]
    results: List[TheoryMap] = []
    for f in functors:
        results.extend(_search(M, N, f, budget))
    results.sort(key=TheoryMap.encoding)
    return results


def _search(M: Multicategory, N: Multicategory, f: Functor, budget: List[int]) -> List[TheoryMap]:
    domains = _domains(M, N, f)
    if any(not dom for dom in domains.values()):
        return []
    domset = {k: set(v) for k, v in domains.items()}
    cons = _constraints(M, N, f)
    watch: Dict[Key, List[int]] = {}
    seeds = []
    for i, c in enumerate(cons):
        if not c.inputs:
            seeds.append(i)
        for k in set(c.inputs):
            watch.setdefault(k, []).append(i)
    assign: Dict[Key, Hashable] = {}
    trail: List[Key] = []

    def fire(i) -> bool:
        c = cons[i]
        if any(k not in assign for k in c.inputs):
            return True
        val = c.fn(*(assign[k] for k in c.inputs))
        if val is None:
            return True
        out = c.output
        if out in assign:
            return assign[out] == val
        if val not in domset[out]:
            return False
        assign[out] = val
        trail.append(out)
        queue.append(out)
        return True

    queue: List[Key] = []

    def propagate() -> bool:
        while queue:
            k = queue.pop()
            for i in watch.get(k, ()):
                if not fire(i):
                    queue.clear()
                    return False
        return True

    def undo(mark):
        while len(trail) > mark:
            del assign[trail.pop()]

    for i in seeds:
        if not fire(i) or not propagate():
            return []
    order = sorted(domains, key=canon_key)
    found: List[TheoryMap] = []

    def search():
        budget[0] -= 1
        if budget[0] < 0:
            raise CeilingExceeded("theory-map search exceeded its node ceiling")
        free = [k for k in order if k not in assign]
        if not free:
            found.append(TheoryMap(M, N, f, dict(assign)))
            return
        key = min(free, key=lambda k: len(domains[k]))
        for val in domains[key]:
            mark = len(trail)
            assign[key] = val
            trail.append(key)
            queue.append(key)
            if propagate():
                search()
            undo(mark)

    limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(limit, 10 * len(order) + 1000))
    try:
        search()
    finally:
        sys.setrecursionlimit(limit)
    return found


def identity_theory_map(M: Multicategory) -> TheoryMap:
    return TheoryMap(M, M, identity_functor(M.sorts), {(bs, a, x): x for bs, a, x in M.all_elements()}, name="id")


def compose_theory_maps(t2: TheoryMap, t1: TheoryMap) -> TheoryMap:
    f1 = t1.functor
    comps = {}
    for (bs, a, x), y in t1.components.items():
        comps[(bs, a, x)] = t2(map_word(f1, bs), f1.ob(a), y)
    return TheoryMap(t1.source, t2.target, compose_functors(t2.functor, f1), comps)
