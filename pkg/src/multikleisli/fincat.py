"""Finite categories, functors and natural transformations.

Categories are given by tables keyed by hashable ids.  Composition follows
the usual convention: ``compose(g, f)`` is "g after f" and is defined when
``dst(f) == src(g)``.  Large derived categories (bounded word categories,
power algebras) subclass :class:`FinCategory` and compute homs on demand.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Any, Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from ._order import canon_key, canon_sorted


class MalformedError(ValueError):
    """Input tables do not even describe a graph (dangling ids, bad shapes)."""


@dataclass(frozen=True)
class Violation:
    law: str
    witness: Tuple[Any, ...]
    detail: str = ""

    def sort_key(self):
        return (self.law, canon_key(self.witness))

    def __str__(self):
        w = ", ".join(map(repr, self.witness))
        return f"{self.law}: ({w}){' ' + self.detail if self.detail else ''}"


def sorted_report(vs: Iterable[Violation]) -> List[Violation]:
    return sorted(vs, key=Violation.sort_key)


class FinCategory:
    """A finite category stored as tables.

    ``morphisms`` maps id -> (src, dst); ``identity`` maps object -> id;
    ``compose`` maps (g, f) -> id of g∘f.
    """

    def __init__(
        self,
        objects: Iterable[Hashable],
        morphisms: Mapping[Hashable, Tuple[Hashable, Hashable]],
        identity: Mapping[Hashable, Hashable],
        compose: Mapping[Tuple[Hashable, Hashable], Hashable],
        name: Optional[str] = None,
    ):
        objs = list(objects)
        if len(set(objs)) != len(objs):
            raise MalformedError("duplicate object ids")
        self.objects: Tuple[Hashable, ...] = tuple(canon_sorted(objs))
        self.name = name
        obset = set(objs)
        self._mor: Dict[Hashable, Tuple[Hashable, Hashable]] = {}
        for m, sd in morphisms.items():
            if len(sd) != 2:
                raise MalformedError(f"morphism {m!r} needs (src, dst)")
            s, d = sd
            if s not in obset or d not in obset:
                raise MalformedError(f"morphism {m!r} has dangling endpoint")
            self._mor[m] = (s, d)
        self._id: Dict[Hashable, Hashable] = {}
        for x in objs:
            if x not in identity:
                raise MalformedError(f"object {x!r} has no identity")
            i = identity[x]
            if i not in self._mor:
                raise MalformedError(f"identity {i!r} of {x!r} is not a morphism")
            self._id[x] = i
        if set(identity) - obset:
            raise MalformedError("identity given for unknown object")
        self._comp: Dict[Tuple[Hashable, Hashable], Hashable] = {}
        for (g, f), gf in compose.items():
            for m in (g, f, gf):
                if m not in self._mor:
                    raise MalformedError(f"composition table mentions unknown morphism {m!r}")
            self._comp[(g, f)] = gf
        self._hom: Dict[Tuple[Hashable, Hashable], List[Hashable]] = {}
        for m, (s, d) in self._mor.items():
            self._hom.setdefault((s, d), []).append(m)
        for k in self._hom:
            self._hom[k] = tuple(canon_sorted(self._hom[k]))

    # -- basic interface (overridden by lazy subclasses) --------------
    def src(self, f: Hashable) -> Hashable:
        return self._mor[f][0]

    def dst(self, f: Hashable) -> Hashable:
        return self._mor[f][1]

    def identity(self, x: Hashable) -> Hashable:
        return self._id[x]

    def compose(self, g: Hashable, f: Hashable) -> Optional[Hashable]:
        return self._comp.get((g, f))

    def hom(self, x: Hashable, y: Hashable) -> Tuple[Hashable, ...]:
        return self._hom.get((x, y), ())

    def morphisms(self) -> Iterator[Hashable]:
        for x in self.objects:
            for y in self.objects:
                yield from self.hom(x, y)

    def has_object(self, x: Hashable) -> bool:
        return x in self._id

    def has_morphism(self, f: Hashable) -> bool:
        return f in self._mor

    # -- conveniences -------------------------------------------------
    def compose_path(self, *fs: Hashable) -> Hashable:
        """compose_path(h, g, f) = h∘g∘f."""
        out = fs[-1]
        for g in reversed(fs[:-1]):
            out = self.compose(g, out)
        return out

    def num_morphisms(self) -> int:
        return sum(1 for _ in self.morphisms())

    def is_discrete(self) -> bool:
        return all(len(self.hom(x, y)) == (1 if x == y else 0) for x in self.objects for y in self.objects)

    def tables(self):
        mor = {m: (self.src(m), self.dst(m)) for m in self.morphisms()}
        ident = {x: self.identity(x) for x in self.objects}
        comp = {}
        for g in mor:
            for f in self.hom_into(mor[g][0]):
                comp[(g, f)] = self.compose(g, f)
        return mor, ident, comp

    def generators(self) -> Tuple[Hashable, ...]:
        """A set of non-identity morphisms whose composites give every
        non-identity morphism.  Chosen greedily in canonical order; cached."""
        gens = getattr(self, "_generators", None)
        if gens is not None:
            return gens
        mors = list(self.morphisms())
        idents = {self.identity(x) for x in self.objects}
        reached = set(idents)
        into: Dict[Hashable, List[Hashable]] = {x: [] for x in self.objects}
        out_of: Dict[Hashable, List[Hashable]] = {x: [] for x in self.objects}
        chosen = []
        for g in mors:
            if g in reached:
                continue
            chosen.append(g)
            queue = [g]
            reached.add(g)
            into[self.dst(g)].append(g)
            out_of[self.src(g)].append(g)
            while queue:
                e = queue.pop()
                s, d = self.src(e), self.dst(e)
                products = [self.compose(h, e) for h in list(out_of[d])]
                products += [self.compose(e, h) for h in list(into[s])]
                for p in products:
                    if p is not None and p not in reached:
                        reached.add(p)
                        queue.append(p)
                        into[self.dst(p)].append(p)
                        out_of[self.src(p)].append(p)
        self._generators = tuple(chosen)
        return self._generators

    def hom_into(self, y: Hashable) -> Iterator[Hashable]:
        for x in self.objects:
            yield from self.hom(x, y)

    def hom_from(self, x: Hashable) -> Iterator[Hashable]:
        for y in self.objects:
            yield from self.hom(x, y)

    def __eq__(self, other):
        if not isinstance(other, FinCategory):
            return NotImplemented
        return set(self.objects) == set(other.objects) and self.tables() == other.tables()

    __hash__ = object.__hash__

    def __repr__(self):
        label = self.name or "FinCategory"
        return f"<{label}: {len(self.objects)} objects, {self.num_morphisms()} morphisms>"


# ---------------------------------------------------------------------
# validation


def validate_category(c: FinCategory, partial: bool = False) -> List[Violation]:
    """All violated law instances of ``c``; empty iff ``c`` is a category.

    With ``partial=True`` missing composites are allowed (bounded fragments)
    and associativity is checked wherever both sides are defined.
    """
    out: List[Violation] = []
    for x in c.objects:
        i = c.identity(x)
        if (c.src(i), c.dst(i)) != (x, x):
            out.append(Violation("identity-typing", (x, i)))
    for f in c.morphisms():
        a, b = c.src(f), c.dst(f)
        if c.compose(c.identity(b), f) != f:
            out.append(Violation("left-identity", (f,)))
        if c.compose(f, c.identity(a)) != f:
            out.append(Violation("right-identity", (f,)))
        for g in c.hom_from(b):
            gf = c.compose(g, f)
            if gf is None:
                if not partial:
                    out.append(Violation("composition-total", (g, f)))
                continue
            if not c.has_morphism(gf) or (c.src(gf), c.dst(gf)) != (a, c.dst(g)):
                out.append(Violation("composition-typing", (g, f), f"got {gf!r}"))
    if any(v.law in ("composition-total", "composition-typing") for v in out):
        return sorted_report(out)
    for f in c.morphisms():
        for g in c.hom_from(c.dst(f)):
            gf = c.compose(g, f)
            for h in c.hom_from(c.dst(g)):
                hg = c.compose(h, g)
                lhs = None if gf is None else c.compose(h, gf)
                rhs = None if hg is None else c.compose(hg, f)
                if partial and (lhs is None or rhs is None):
                    continue
                if lhs != rhs:
                    out.append(Violation("associativity", (h, g, f)))
    return sorted_report(out)


# ---------------------------------------------------------------------
# constructors


def discrete(objects: Iterable[Hashable], name: Optional[str] = None) -> FinCategory:
    objs = list(objects)
    ids = {x: ("id", x) for x in objs}
    return FinCategory(
        objs,
        {ids[x]: (x, x) for x in objs},
        ids,
        {(ids[x], ids[x]): ids[x] for x in objs},
        name=name or "discrete",
    )


def terminal() -> FinCategory:
    return discrete(["*"], name="terminal")


def empty_category() -> FinCategory:
    return FinCategory([], {}, {}, {}, name="empty")


def poset_category(elements: Sequence[Hashable], leq: Callable[[Any, Any], bool], name=None) -> FinCategory:
    """Thin category with an arrow x -> y iff leq(x, y)."""
    mor = {}
    for x in elements:
        for y in elements:
            if leq(x, y):
                mor[(x, y)] = (x, y)
    comp = {}
    for (x, y) in mor:
        for (y2, z) in mor:
            if y2 == y:
                if (x, z) not in mor:
                    raise MalformedError("order relation is not transitive")
                comp[((y, z), (x, y))] = (x, z)
    return FinCategory(elements, mor, {x: (x, x) for x in elements}, comp, name=name or "poset")


def chain(n: int) -> FinCategory:
    """The ordinal 0 < 1 < ... < n-1 as a category; chain(2) is the arrow a -> b."""
    names = [chr(ord("a") + i) for i in range(n)]
    pos = {x: i for i, x in enumerate(names)}
    return poset_category(names, lambda x, y: pos[x] <= pos[y], name=f"chain{n}")


def monoid_category(elements: Sequence[Hashable], mult: Callable[[Any, Any], Any], unit: Hashable, obj="*") -> FinCategory:
    """One-object category; compose(g, f) = mult(g, f)."""
    mor = {m: (obj, obj) for m in elements}
    comp = {(g, f): mult(g, f) for g in elements for f in elements}
    return FinCategory([obj], mor, {obj: unit}, comp, name="monoid")


def opposite(c: FinCategory) -> FinCategory:
    mor, ident, comp = c.tables()
    return FinCategory(
        c.objects,
        {m: (d, s) for m, (s, d) in mor.items()},
        ident,
        {(f, g): gf for (g, f), gf in comp.items()},
        name=f"op({c.name})" if c.name else None,
    )


def product_category(a: FinCategory, b: FinCategory) -> FinCategory:
    objs = [(x, y) for x in a.objects for y in b.objects]
    amor = {m: (a.src(m), a.dst(m)) for m in a.morphisms()}
    bmor = {m: (b.src(m), b.dst(m)) for m in b.morphisms()}
    mor = {(f, g): ((amor[f][0], bmor[g][0]), (amor[f][1], bmor[g][1])) for f in amor for g in bmor}
    comp = {}
    for (f, g), (s, d) in mor.items():
        for f2 in a.hom_from(d[0]):
            for g2 in b.hom_from(d[1]):
                comp[((f2, g2), (f, g))] = (a.compose(f2, f), b.compose(g2, g))
    ident = {(x, y): (a.identity(x), b.identity(y)) for (x, y) in objs}
    return FinCategory(objs, mor, ident, comp, name="product")


# ---------------------------------------------------------------------
# functors and natural transformations


def _as_callable(m: Union[Mapping, Callable]) -> Callable:
    if callable(m) and not isinstance(m, Mapping):
        return m
    return m.__getitem__


class Functor:
    """A functor given by object and morphism maps (mappings or callables)."""

    def __init__(self, source: FinCategory, target: FinCategory, ob, mor, name: Optional[str] = None):
        self.source = source
        self.target = target
        self._ob = _as_callable(ob)
        self._mor = _as_callable(mor)
        self.name = name

    def ob(self, x):
        return self._ob(x)

    def mor(self, f):
        return self._mor(f)

    def object_map(self) -> Dict:
        return {x: self.ob(x) for x in self.source.objects}

    def morphism_map(self) -> Dict:
        return {f: self.mor(f) for f in self.source.morphisms()}

    def __eq__(self, other):
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and self.object_map() == other.object_map()
            and self.morphism_map() == other.morphism_map()
        )

    __hash__ = object.__hash__

    def __repr__(self):
        return f"<Functor {self.name or ''}>"


def identity_functor(c: FinCategory) -> Functor:
    return Functor(c, c, lambda x: x, lambda f: f, name="id")


def constant_functor(source: FinCategory, target: FinCategory, obj) -> Functor:
    i = target.identity(obj)
    return Functor(source, target, lambda x: obj, lambda f: i, name=f"const({obj!r})")


def compose_functors(g: Functor, f: Functor) -> Functor:
    return Functor(f.source, g.target, lambda x: g.ob(f.ob(x)), lambda m: g.mor(f.mor(m)))


def check_functor(f: Functor) -> List[Violation]:
    A, B = f.source, f.target
    out = []
    for x in A.objects:
        if not B.has_object(f.ob(x)):
            out.append(Violation("object-map", (x,), f"{f.ob(x)!r} not an object of target"))
    if out:
        return sorted_report(out)
    for m in A.morphisms():
        fm = f.mor(m)
        if not B.has_morphism(fm) or (B.src(fm), B.dst(fm)) != (f.ob(A.src(m)), f.ob(A.dst(m))):
            out.append(Violation("morphism-typing", (m,), f"image {fm!r}"))
    if out:
        return sorted_report(out)
    for x in A.objects:
        if f.mor(A.identity(x)) != B.identity(f.ob(x)):
            out.append(Violation("preserves-identity", (x,)))
    for m in A.morphisms():
        for g in A.hom_from(A.dst(m)):
            if f.mor(A.compose(g, m)) != B.compose(f.mor(g), f.mor(m)):
                out.append(Violation("preserves-composition", (g, m)))
    return sorted_report(out)


@dataclass
class NatTransformation:
    source: Functor
    target: Functor
    components: Mapping[Hashable, Hashable]


def check_nat(n: NatTransformation) -> List[Violation]:
    F, G = n.source, n.target
    A, B = F.source, F.target
    out = []
    for x in A.objects:
        c = n.components.get(x)
        if c is None or not B.has_morphism(c) or (B.src(c), B.dst(c)) != (F.ob(x), G.ob(x)):
            out.append(Violation("component-typing", (x,), f"got {c!r}"))
    if out:
        return sorted_report(out)
    for m in A.morphisms():
        a, b = A.src(m), A.dst(m)
        if B.compose(G.mor(m), n.components[a]) != B.compose(n.components[b], F.mor(m)):
            out.append(Violation("naturality", (m,)))
    return sorted_report(out)


def enumerate_functors(a: FinCategory, b: FinCategory, limit: Optional[int] = None) -> List[Functor]:
    """All functors a -> b, by backtracking over object then morphism images."""
    objs = list(a.objects)
    mors = [m for m in a.morphisms() if m not in {a.identity(x) for x in objs}]
    results: List[Functor] = []

    def extend_mor(obmap, mormap, i):
        if limit is not None and len(results) >= limit:
            return
        if i == len(mors):
            full = dict(mormap)
            for x in objs:
                full[a.identity(x)] = b.identity(obmap[x])
            f = Functor(a, b, dict(obmap), full)
            if not check_functor(f):
                results.append(f)
            return
        m = mors[i]
        for cand in b.hom(obmap[a.src(m)], obmap[a.dst(m)]):
            mormap[m] = cand
            if _partial_ok(a, b, obmap, mormap, m):
                extend_mor(obmap, mormap, i + 1)
            del mormap[m]

    for images in product(b.objects, repeat=len(objs)):
        obmap = dict(zip(objs, images))
        extend_mor(obmap, {}, 0)
        if limit is not None and len(results) >= limit:
            break
    return results


def _partial_ok(a, b, obmap, mormap, m) -> bool:
    def img(x):
        if x in mormap:
            return mormap[x]
        for o in a.objects:
            if a.identity(o) == x:
                return b.identity(obmap[o])
        return None

    for g in a.hom_from(a.dst(m)):
        for f, gg in ((m, g),):
            ig, i_f, igf = img(gg), img(f), img(a.compose(gg, f))
            if None not in (ig, i_f, igf) and b.compose(ig, i_f) != igf:
                return False
    for f in a.hom_into(a.src(m)):
        i_f, im, imf = img(f), img(m), img(a.compose(m, f))
        if None not in (i_f, im, imf) and b.compose(im, i_f) != imf:
            return False
    return True
