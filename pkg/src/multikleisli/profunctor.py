"""Finite-set-valued profunctors and their coend calculus.

Convention, fixed once for the whole package: a profunctor ``M: A ⇸ B`` has
element sets ``M(b, a)`` for ``b`` in B and ``a`` in A.  The left action
takes ``β: b' -> b`` in B to a map ``M(b, a) -> M(b', a)``; the right action
takes ``α: a -> a'`` in A to a map ``M(b, a) -> M(b, a')``.  For an
endo-profunctor on A, an element of ``M(b, a)`` reads as an arrow b -> a.

Composition ``compose_prof(n, m)`` is "n after m" and computes the coend
by union-find over the single-step moves ``(y·β, x) ~ (y, β·x)``; every
class is represented by its least member ``(middle, y, x)`` under the
global id order.

Profunctors over bounded word categories may be *partial*: an action that
would leave the bound returns ``None``.  Such moves are simply skipped.
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Mapping, Optional, Tuple

from ._order import canon_key, canon_sorted
from .fincat import FinCategory, Functor, MalformedError, Violation, sorted_report


class Profunctor:
    def __init__(
        self,
        source: FinCategory,
        target: FinCategory,
        elements: Mapping[Tuple[Hashable, Hashable], Iterable[Hashable]],
        left: Callable[[Hashable, Hashable, Hashable], Optional[Hashable]],
        right: Callable[[Hashable, Hashable, Hashable], Optional[Hashable]],
        name: Optional[str] = None,
        partial: bool = False,
    ):
        self.source = source
        self.target = target
        self._el: Dict[Tuple[Hashable, Hashable], Tuple[Hashable, ...]] = {}
        for key, xs in elements.items():
            xs = tuple(canon_sorted(set(xs)))
            if xs:
                self._el[key] = xs
        self._left = left
        self._right = right
        self._lcache: Dict = {}
        self._rcache: Dict = {}
        self.name = name
        self.partial = partial

    def elements(self, b: Hashable, a: Hashable) -> Tuple[Hashable, ...]:
        return self._el.get((b, a), ())

    def cells(self) -> List[Tuple[Hashable, Hashable]]:
        return canon_sorted(self._el)

    def all_elements(self) -> Iterator[Tuple[Hashable, Hashable, Hashable]]:
        for b, a in self.cells():
            for x in self._el[(b, a)]:
                yield b, a, x

    def count(self) -> int:
        return sum(len(v) for v in self._el.values())

    def left(self, beta: Hashable, a: Hashable, x: Hashable) -> Optional[Hashable]:
        key = (beta, a, x)
        try:
            return self._lcache[key]
        except KeyError:
            r = self._lcache[key] = self._left(beta, a, x)
            return r

    def right(self, alpha: Hashable, b: Hashable, x: Hashable) -> Optional[Hashable]:
        key = (alpha, b, x)
        try:
            return self._rcache[key]
        except KeyError:
            r = self._rcache[key] = self._right(alpha, b, x)
            return r

    def __repr__(self):
        return f"<Profunctor {self.name or ''} with {self.count()} elements>"


def from_tables(source, target, elements, left_table, right_table, name=None) -> Profunctor:
    """Build a profunctor from explicit action tables.

    ``left_table[(beta, a, x)]`` and ``right_table[(alpha, b, x)]``; entries
    for identity morphisms may be omitted.
    """
    tid = {target.identity(o) for o in target.objects}
    sid = {source.identity(o) for o in source.objects}

    def left(beta, a, x):
        if (beta, a, x) in left_table:
            return left_table[(beta, a, x)]
        if beta in tid:
            return x
        raise MalformedError(f"missing left action entry {(beta, a, x)!r}")

    def right(alpha, b, x):
        if (alpha, b, x) in right_table:
            return right_table[(alpha, b, x)]
        if alpha in sid:
            return x
        raise MalformedError(f"missing right action entry {(alpha, b, x)!r}")

    return Profunctor(source, target, elements, left, right, name=name)


def check_profunctor(p: Profunctor, exhaustive: bool = False) -> List[Violation]:
    """Typing, functoriality of both actions, and commutation of the actions.

    Typing is checked for every morphism.  For total profunctors the
    composition and commutation laws are checked with one factor a generator,
    which implies them for all pairs; ``exhaustive`` checks every pair.
    """
    A, B = p.source, p.target
    out: List[Violation] = []
    member = {key: set(xs) for key, xs in p._el.items()}
    full = exhaustive or p.partial
    b_gens = set(B.morphisms()) if full else set(B.generators())
    a_gens = set(A.morphisms()) if full else set(A.generators())
    a_gens_from = {a: [alpha for alpha in A.hom_from(a) if alpha in a_gens] for a in A.objects}

    def inside(b, a, y):
        return y in member.get((b, a), ())

    for b, a, x in p.all_elements():
        if p.left(B.identity(b), a, x) != x:
            out.append(Violation("left-identity", (b, a, x)))
        if p.right(A.identity(a), b, x) != x:
            out.append(Violation("right-identity", (b, a, x)))
        for beta in B.hom_into(b):
            y = p.left(beta, a, x)
            if y is None:
                if not p.partial:
                    out.append(Violation("left-undefined", (beta, a, x)))
                continue
            b2 = B.src(beta)
            if not inside(b2, a, y):
                out.append(Violation("left-typing", (beta, a, x), f"got {y!r}"))
                continue
            if beta not in b_gens:
                continue
            for beta2 in B.hom_into(b2):
                z = p.left(beta2, a, y)
                w = p.left(B.compose(beta, beta2), a, x)
                if z is not None and w is not None and z != w:
                    out.append(Violation("left-composition", (beta, beta2, a, x)))
            for alpha in a_gens_from[a]:
                u = p.right(alpha, b2, y)
                r = p.right(alpha, b, x)
                v = p.left(beta, A.dst(alpha), r) if r is not None else None
                if u is not None and v is not None and u != v:
                    out.append(Violation("actions-commute", (beta, alpha, x)))
        for alpha in A.hom_from(a):
            y = p.right(alpha, b, x)
            if y is None:
                if not p.partial:
                    out.append(Violation("right-undefined", (alpha, b, x)))
                continue
            a2 = A.dst(alpha)
            if not inside(b, a2, y):
                out.append(Violation("right-typing", (alpha, b, x), f"got {y!r}"))
                continue
            for alpha2 in a_gens_from[a2]:
                z = p.right(alpha2, b, y)
                w = p.right(A.compose(alpha2, alpha), b, x)
                if z is not None and w is not None and z != w:
                    out.append(Violation("right-composition", (alpha2, alpha, b, x)))
    return sorted_report(out)


# ---------------------------------------------------------------------
# cells


class ProfCell:
    """A 2-cell between parallel profunctors, given elementwise."""

    def __init__(self, source: Profunctor, target: Profunctor, component: Callable[[Hashable, Hashable, Hashable], Optional[Hashable]], name=None):
        self.source = source
        self.target = target
        self._component = component
        self._cache: Dict = {}
        self.name = name

    def __call__(self, b, a, x):
        key = (b, a, x)
        if key not in self._cache:
            self._cache[key] = self._component(b, a, x)
        return self._cache[key]

    def table(self) -> Dict[Tuple, Hashable]:
        return {(b, a, x): self(b, a, x) for b, a, x in self.source.all_elements()}

    def __repr__(self):
        return f"<ProfCell {self.name or ''}>"


def check_cell(c: ProfCell, exhaustive: bool = False) -> List[Violation]:
    """Typing and naturality with respect to both actions.

    When both sides are total and functorial, naturality along generators
    implies it along every composite, so only generators are tried unless
    ``exhaustive`` is set.
    """
    P, Q = c.source, c.target
    A, B = P.source, P.target
    if exhaustive or P.partial or Q.partial:
        into = {b: list(B.hom_into(b)) for b in B.objects}
        out_of = {a: list(A.hom_from(a)) for a in A.objects}
    else:
        into = {b: [] for b in B.objects}
        for beta in B.generators():
            into[B.dst(beta)].append(beta)
        out_of = {a: [] for a in A.objects}
        for alpha in A.generators():
            out_of[A.src(alpha)].append(alpha)
    out = []
    for b, a, x in P.all_elements():
        y = c(b, a, x)
        if y is None:
            continue
        if y not in Q.elements(b, a):
            out.append(Violation("cell-typing", (b, a, x), f"got {y!r}"))
            continue
        for beta in into[b]:
            lx = P.left(beta, a, x)
            ly = Q.left(beta, a, y)
            if lx is None or ly is None:
                continue
            if c(B.src(beta), a, lx) != ly:
                out.append(Violation("cell-left-naturality", (beta, a, x)))
        for alpha in out_of[a]:
            rx = P.right(alpha, b, x)
            ry = Q.right(alpha, b, y)
            if rx is None or ry is None:
                continue
            if c(b, A.dst(alpha), rx) != ry:
                out.append(Violation("cell-right-naturality", (alpha, b, x)))
    return sorted_report(out)


def identity_cell(p: Profunctor) -> ProfCell:
    return ProfCell(p, p, lambda b, a, x: x, name="id")


def vcompose(g: ProfCell, f: ProfCell) -> ProfCell:
    """Vertical composite g·f."""

    def comp(b, a, x):
        y = f(b, a, x)
        return None if y is None else g(b, a, y)

    return ProfCell(f.source, g.target, comp)


def cells_equal(f: ProfCell, g: ProfCell) -> List[Violation]:
    out = []
    for b, a, x in f.source.all_elements():
        if f(b, a, x) != g(b, a, x):
            out.append(Violation("cells-differ", (b, a, x), f"{f(b, a, x)!r} != {g(b, a, x)!r}"))
    return out


def check_inverse(f: ProfCell, g: ProfCell) -> List[Violation]:
    """f: P => Q and g: Q => P are mutually inverse (where defined)."""
    out = []
    for b, a, x in f.source.all_elements():
        y = f(b, a, x)
        if y is None or g(b, a, y) != x:
            out.append(Violation("not-left-inverse", (b, a, x)))
    for b, a, y in g.source.all_elements():
        x = g(b, a, y)
        if x is None or f(b, a, x) != y:
            out.append(Violation("not-right-inverse", (b, a, y)))
    return sorted_report(out)


def is_bijective(c: ProfCell) -> bool:
    for b, a in set(c.source.cells()) | set(c.target.cells()):
        img = [c(b, a, x) for x in c.source.elements(b, a)]
        if None in img or len(set(img)) != len(img) or set(img) != set(c.target.elements(b, a)):
            return False
    return True


# ---------------------------------------------------------------------
# basic profunctors


def identity_prof(a: FinCategory) -> Profunctor:
    """The hom profunctor: E(b, a) = hom(b, a)."""
    els = {(x, y): a.hom(x, y) for x in a.objects for y in a.objects}
    return Profunctor(
        a,
        a,
        els,
        lambda beta, y, h: a.compose(h, beta),
        lambda alpha, x, h: a.compose(alpha, h),
        name="id",
    )


def star(f: Functor) -> Profunctor:
    """f_*: A ⇸ B with f_*(b, a) = B(b, f a)."""
    A, B = f.source, f.target
    els = {(b, a): B.hom(b, f.ob(a)) for b in B.objects for a in A.objects}
    return Profunctor(
        A,
        B,
        els,
        lambda beta, a, g: B.compose(g, beta),
        lambda alpha, b, g: B.compose(f.mor(alpha), g),
        name="star",
    )


def costar(f: Functor) -> Profunctor:
    """f^*: B ⇸ A with f^*(a, b) = B(f a, b)."""
    A, B = f.source, f.target
    els = {(a, b): B.hom(f.ob(a), b) for a in A.objects for b in B.objects}
    return Profunctor(
        B,
        A,
        els,
        lambda alpha, b, g: B.compose(g, f.mor(alpha)),
        lambda beta, a, g: B.compose(beta, g),
        name="costar",
    )


# ---------------------------------------------------------------------
# composition by coends


class Composite(Profunctor):
    """``outer ∘ inner`` with its coend presentation.

    Elements are class representatives ``(b, y, x)`` with ``y`` in
    outer(c, b) and ``x`` in inner(b, a).  :meth:`canon` maps any member of
    a class (not only representatives) to its representative.
    """

    def __init__(self, outer: Profunctor, inner: Profunctor, canon_table, classes, partial):
        self.outer = outer
        self.inner = inner
        self._canon = canon_table
        self._classes = classes
        n, m = outer, inner

        def left(gamma, a, rep):
            b, y, x = rep
            y2 = n.left(gamma, b, y)
            if y2 is None:
                return None
            return self.canon(n.target.src(gamma), a, (b, y2, x))

        def right(alpha, c, rep):
            b, y, x = rep
            x2 = m.right(alpha, b, x)
            if x2 is None:
                return None
            return self.canon(c, m.source.dst(alpha), (b, y, x2))

        elements = {key: list(reps) for key, reps in classes.items()}
        super().__init__(inner.source, outer.target, elements, left, right, name="composite", partial=partial)

    def canon(self, c, a, triple) -> Optional[Hashable]:
        return self._canon.get((c, a), {}).get(triple)

    def members(self, c, a, rep) -> Tuple:
        return self._classes.get((c, a), {}).get(rep, ())


def compose_prof(n: Profunctor, m: Profunctor) -> Composite:
    """n ∘ m for m: A ⇸ B and n: B ⇸ C."""
    if n.source is not m.target and n.source != m.target:
        raise ValueError("boundary mismatch: source of outer must be target of inner")
    B = m.target
    # group elements by the middle object for fast enumeration
    n_by: Dict = {}
    for c, b, y in n.all_elements():
        n_by.setdefault(c, {}).setdefault(b, []).append(y)
    m_by: Dict = {}
    for b, a, x in m.all_elements():
        m_by.setdefault(a, {}).setdefault(b, []).append(x)
    # total actions: generator moves already imply every composite move
    betas = B.morphisms() if (n.partial or m.partial) else B.generators()
    middle = [(beta, B.src(beta), B.dst(beta)) for beta in betas]
    middle = [t for t in middle if not (t[1] == t[2] and t[0] == B.identity(t[1]))]
    mids = list(B.objects)
    y_pos = {c: {b: {y: i for i, y in enumerate(ys)} for b, ys in nb.items()} for c, nb in n_by.items()}
    x_pos = {a: {b: {x: i for i, x in enumerate(xs)} for b, xs in mb.items()} for a, mb in m_by.items()}
    y_moves: Dict = {}
    x_moves: Dict = {}

    def moves_y(c, beta, b0, b1):
        # y in N(c, b0) |-> y·beta in N(c, b1), as position pairs
        key = (c, beta)
        if key not in y_moves:
            into = y_pos[c].get(b1, {})
            out = []
            for i, y in enumerate(n_by[c].get(b0, ())):
                y2 = n.right(beta, c, y)
                if y2 is not None and y2 in into:
                    out.append((i, into[y2]))
            y_moves[key] = out
        return y_moves[key]

    def moves_x(a, beta, b0, b1):
        # x in M(b1, a) |-> beta·x in M(b0, a)
        key = (a, beta)
        if key not in x_moves:
            into = x_pos[a].get(b0, {})
            out = []
            for i, x in enumerate(m_by[a].get(b1, ())):
                x2 = m.left(beta, a, x)
                if x2 is not None and x2 in into:
                    out.append((i, into[x2]))
            x_moves[key] = out
        return x_moves[key]

    canon_table: Dict = {}
    classes: Dict = {}
    for c in canon_sorted(n_by):
        nc = n_by[c]
        for a in canon_sorted(m_by):
            ma = m_by[a]
            common = [b for b in mids if b in nc and b in ma]
            if not common:
                continue
            offset = {}
            total = 0
            for b in common:
                offset[b] = total
                total += len(nc[b]) * len(ma[b])
            parent = list(range(total))
            size = [1] * total
            for beta, b0, b1 in middle:
                if b0 not in offset or b1 not in offset:
                    continue
                ym = moves_y(c, beta, b0, b1)
                if not ym:
                    continue
                xm = moves_x(a, beta, b0, b1)
                if not xm:
                    continue
                off0, w0 = offset[b0], len(ma[b0])
                off1, w1 = offset[b1], len(ma[b1])
                for iy0, iy2 in ym:
                    base1 = off1 + iy2 * w1
                    base0 = off0 + iy0 * w0
                    for ix1, ix2 in xm:
                        # join (b1, y·beta, x) with (b0, y, beta·x)
                        i, j = base1 + ix1, base0 + ix2
                        while parent[i] != i:
                            parent[i] = parent[parent[i]]
                            i = parent[i]
                        while parent[j] != j:
                            parent[j] = parent[parent[j]]
                            j = parent[j]
                        if i != j:
                            if size[i] < size[j]:
                                i, j = j, i
                            parent[j] = i
                            size[i] += size[j]
            groups: Dict[int, List] = {}
            slot = 0
            for b in common:
                kb = canon_key(b)
                xs = ma[b]
                xk = [canon_key(x) for x in xs]
                for y in nc[b]:
                    ky = canon_key(y)
                    for x, kx in zip(xs, xk):
                        r = slot
                        while parent[r] != r:
                            r = parent[r]
                        groups.setdefault(r, []).append(((kb, ky, kx), (b, y, x)))
                        slot += 1
            can: Dict = {}
            cl: Dict = {}
            for members in groups.values():
                members.sort(key=lambda kt: kt[0])
                ts = tuple(t for _, t in members)
                rep = ts[0]
                cl[rep] = ts
                for t in ts:
                    can[t] = rep
            canon_table[(c, a)] = can
            classes[(c, a)] = cl
    return Composite(n, m, canon_table, classes, partial=n.partial or m.partial)



def closure_classes(n: Profunctor, m: Profunctor, c, a) -> List[frozenset]:
    """Independent coend oracle: connected components of the one-step
    relation by breadth-first search over an explicit adjacency list."""
    B = m.target
    nodes = [(b, y, x) for b in B.objects for y in n.elements(c, b) for x in m.elements(b, a)]
    adj = {t: set() for t in nodes}
    for beta in B.morphisms():
        b0, b1 = B.src(beta), B.dst(beta)
        for y in n.elements(c, b0):
            for x in m.elements(b1, a):
                s, t = (b1, n.right(beta, c, y), x), (b0, y, m.left(beta, a, x))
                if s in adj and t in adj:
                    adj[s].add(t)
                    adj[t].add(s)
    seen, comps = set(), []
    for t in nodes:
        if t in seen:
            continue
        comp, frontier = {t}, [t]
        while frontier:
            u = frontier.pop()
            for v in adj[u]:
                if v not in comp:
                    comp.add(v)
                    frontier.append(v)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


# ---------------------------------------------------------------------
# structural bijections


def left_unitor(m: Profunctor, comp: Optional[Composite] = None) -> Tuple[Composite, ProfCell, ProfCell]:
    """id_B ∘ m ≅ m; returns (composite, forward, backward)."""
    B = m.target
    comp = comp or compose_prof(identity_prof(B), m)
    fwd = ProfCell(comp, m, lambda b2, a, t: m.left(t[1], a, t[2]), name="lambda")
    bwd = ProfCell(m, comp, lambda b2, a, x: comp.canon(b2, a, (b2, B.identity(b2), x)), name="lambda^-1")
    return comp, fwd, bwd


def right_unitor(m: Profunctor, comp: Optional[Composite] = None) -> Tuple[Composite, ProfCell, ProfCell]:
    """m ∘ id_A ≅ m; returns (composite, forward, backward)."""
    A = m.source
    comp = comp or compose_prof(m, identity_prof(A))
    fwd = ProfCell(comp, m, lambda b, a, t: m.right(t[2], b, t[1]), name="rho")
    bwd = ProfCell(m, comp, lambda b, a, x: comp.canon(b, a, (a, x, A.identity(a))), name="rho^-1")
    return comp, fwd, bwd


def associator(p: Profunctor, n: Profunctor, m: Profunctor):
    """(p∘n)∘m ≅ p∘(n∘m), built on representatives.

    Returns ``(left, right, fwd, bwd)`` where ``left = (p∘n)∘m`` and
    ``right = p∘(n∘m)``.
    """
    pn = compose_prof(p, n)
    nm = compose_prof(n, m)
    left = compose_prof(pn, m)
    right = compose_prof(p, nm)

    def fwd(d, a, t):
        b, z, x = t
        c, w, y = z
        inner = nm.canon(c, a, (b, y, x))
        return None if inner is None else right.canon(d, a, (c, w, inner))

    def bwd(d, a, t):
        c, w, v = t
        b, y, x = v
        outer = pn.canon(d, b, (c, w, y))
        return None if outer is None else left.canon(d, a, (b, outer, x))

    return left, right, ProfCell(left, right, fwd, name="alpha"), ProfCell(right, left, bwd, name="alpha^-1")


def whisker_left(n: Profunctor, cell: ProfCell, src: Optional[Composite] = None, dst: Optional[Composite] = None):
    """n ∘ cell : n∘m => n∘m'."""
    src = src or compose_prof(n, cell.source)
    dst = dst or compose_prof(n, cell.target)

    def comp(c, a, t):
        b, y, x = t
        x2 = cell(b, a, x)
        return None if x2 is None else dst.canon(c, a, (b, y, x2))

    return ProfCell(src, dst, comp)


def whisker_right(cell: ProfCell, m: Profunctor, src: Optional[Composite] = None, dst: Optional[Composite] = None):
    """cell ∘ m : n∘m => n'∘m."""
    src = src or compose_prof(cell.source, m)
    dst = dst or compose_prof(cell.target, m)

    def comp(c, a, t):
        b, y, x = t
        y2 = cell(c, b, y)
        return None if y2 is None else dst.canon(c, a, (b, y2, x))

    return ProfCell(src, dst, comp)


def unit_laws(m: Profunctor) -> List[Violation]:
    """Both unitors are mutually inverse cells commuting with the actions."""
    out = []
    for label, (comp, f, g) in (("left-unitor", left_unitor(m)), ("right-unitor", right_unitor(m))):
        for v in check_inverse(f, g) + check_cell(f) + check_cell(g):
            out.append(Violation(f"{label}:{v.law}", v.witness, v.detail))
    return sorted_report(out)


def associativity_law(p: Profunctor, n: Profunctor, m: Profunctor) -> List[Violation]:
    left, right, f, g = associator(p, n, m)
    return sorted_report(check_inverse(f, g) + check_cell(f) + check_cell(g))


# ---------------------------------------------------------------------
# adjunction f_* ⊣ f^*


def adjunction_cells(f: Functor):
    """Unit id_A => f^*∘f_* and counit f_*∘f^* => id_B, with the composites."""
    A, B = f.source, f.target
    fs, fu = star(f), costar(f)
    ufs = compose_prof(fu, fs)
    fsu = compose_prof(fs, fu)
    idA, idB = identity_prof(A), identity_prof(B)
    unit = ProfCell(idA, ufs, lambda a2, a, alpha: ufs.canon(a2, a, (f.ob(a), f.mor(alpha), B.identity(f.ob(a)))), name="unit")
    counit = ProfCell(fsu, idB, lambda b2, b, t: B.compose(t[2], t[1]), name="counit")
    return fs, fu, ufs, fsu, unit, counit


def triangle_identities(f: Functor) -> List[Violation]:
    fs, fu, ufs, fsu, unit, counit = adjunction_cells(f)
    out = []
    # f_* => f_*∘id => f_*∘(f^*∘f_*) => (f_*∘f^*)∘f_* => id∘f_* => f_*
    c_r, _, rho_inv = right_unitor(fs)
    w1 = whisker_left(fs, unit, src=c_r)
    left, right, alpha, alpha_inv = associator(fs, fu, fs)
    w1 = whisker_left(fs, unit, src=c_r, dst=right)
    c_l, lam, _ = left_unitor(fs)
    w2 = whisker_right(counit, fs, src=left, dst=c_l)
    tri1 = vcompose(lam, vcompose(w2, vcompose(alpha_inv, vcompose(w1, rho_inv))))
    for v in cells_equal(tri1, identity_cell(fs)):
        out.append(Violation("triangle-star", v.witness, v.detail))
    # f^* => id∘f^* => (f^*∘f_*)∘f^* => f^*∘(f_*∘f^*) => f^*∘id => f^*
    c_l2, _, lam_inv = left_unitor(fu)
    left2, right2, alpha2, _ = associator(fu, fs, fu)
    w3 = whisker_right(unit, fu, src=c_l2, dst=left2)
    c_r2, rho2, _ = right_unitor(fu)
    w4 = whisker_left(fu, counit, src=right2, dst=c_r2)
    tri2 = vcompose(rho2, vcompose(w4, vcompose(alpha2, vcompose(w3, lam_inv))))
    for v in cells_equal(tri2, identity_cell(fu)):
        out.append(Violation("triangle-costar", v.witness, v.detail))
    for v in check_cell(unit) + check_cell(counit):
        out.append(v)
    return sorted_report(out)


# ---------------------------------------------------------------------
# elements factorization


def elements_factorization(m: Profunctor):
    """Category of elements E(M) with p: E -> A, q: E -> B and the
    mutually inverse cells q_*∘p^* => M and M => q_*∘p^*.

    A morphism (b0, a0, x0) -> (b1, a1, x1) is a pair (β: b0 -> b1,
    α: a0 -> a1) with right(α)(x0) == left(β)(x1).
    """
    A, B = m.source, m.target
    objs = [(b, a, x) for b, a, x in m.all_elements()]
    mor = {}
    for e0 in objs:
        b0, a0, x0 = e0
        for e1 in objs:
            b1, a1, x1 = e1
            for beta in B.hom(b0, b1):
                lx = m.left(beta, a1, x1)
                for alpha in A.hom(a0, a1):
                    if m.right(alpha, b0, x0) == lx:
                        mor[(e0, beta, alpha, e1)] = (e0, e1)
    comp = {}
    by_src: Dict = {}
    for k in mor:
        by_src.setdefault(k[0], []).append(k)
    for f in mor:
        for g in by_src.get(f[3], ()):
            comp[(g, f)] = (f[0], B.compose(g[1], f[1]), A.compose(g[2], f[2]), g[3])
    ident = {e: (e, B.identity(e[0]), A.identity(e[1]), e) for e in objs}
    E = FinCategory(objs, mor, ident, comp, name="elements")
    p = Functor(E, A, lambda e: e[1], lambda f: f[2], name="p")
    q = Functor(E, B, lambda e: e[0], lambda f: f[1], name="q")
    qp = compose_prof(star(q), costar(p))

    def fwd(b, a, t):
        e, y, x = t
        return m.right(x, b, m.left(y, e[1], e[2]))

    def bwd(b, a, z):
        return qp.canon(b, a, ((b, a, z), B.identity(b), A.identity(a)))

    return E, p, q, qp, ProfCell(qp, m, fwd, name="iso"), ProfCell(m, qp, bwd, name="iso^-1")


# ---------------------------------------------------------------------
# monads in Prof and Kleisli objects


class MonadLawError(ValueError):
    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(map(str, report[:5])))


def check_prof_monad(m: Profunctor, unit: ProfCell, mult: ProfCell, mm: Optional[Composite] = None) -> List[Violation]:
    """Unit and associativity squares for (m, unit: id => m, mult: m∘m => m)."""
    A = m.source
    if m.target is not A and m.target != A:
        raise ValueError("monad needs an endo-profunctor")
    out = [Violation(f"unit-cell:{v.law}", v.witness) for v in check_cell(unit)]
    mm = mm or mult.source
    out += [Violation(f"mult-cell:{v.law}", v.witness) for v in check_cell(mult)]
    # mult ∘ (unit ∘ m) = lambda
    c_l, lam, _ = left_unitor(m)
    lhs = vcompose(mult, whisker_right(unit, m, src=c_l, dst=mm))
    out += [Violation("left-unit", v.witness, v.detail) for v in cells_equal(lhs, lam)]
    c_r, rho, _ = right_unitor(m)
    rhs = vcompose(mult, whisker_left(m, unit, src=c_r, dst=mm))
    out += [Violation("right-unit", v.witness, v.detail) for v in cells_equal(rhs, rho)]
    left, right, alpha, _ = associator(m, m, m)
    # left = (m∘m)∘m, right = m∘(m∘m)
    via_left = vcompose(mult, whisker_right(mult, m, src=left, dst=mm))
    via_right = vcompose(mult, vcompose(whisker_left(m, mult, src=right, dst=mm), alpha))
    out += [Violation("associativity", v.witness, v.detail) for v in cells_equal(via_left, via_right)]
    return sorted_report(out)


def kleisli_object(m: Profunctor, unit: ProfCell, mult: ProfCell, check: bool = True):
    """C(M): same objects as A, arrows b -> a are the elements of M(b, a).

    Returns (C(M), k) with k: A -> C(M) identity on objects.
    """
    A = m.source
    mm = mult.source
    if check:
        report = check_prof_monad(m, unit, mult)
        if report:
            raise MonadLawError(report)
    mor = {(b, a, x): (b, a) for b, a, x in m.all_elements()}
    comp = {}
    for (c, b, y) in mor:
        for a in A.objects:
            for x in m.elements(b, a):
                t = mm.canon(c, a, (b, y, x))
                comp[((b, a, x), (c, b, y))] = (c, a, mult(c, a, t))
    ident = {a: (a, a, unit(a, a, A.identity(a))) for a in A.objects}
    C = FinCategory(A.objects, mor, ident, comp, name="kleisli")
    k = Functor(A, C, lambda a: a, lambda f: (A.src(f), A.dst(f), unit(A.src(f), A.dst(f), f)), name="k")
    return C, k


def monad_of_functor(f: Functor):
    """The monad f^*∘f_* on A with unit and counit-induced multiplication."""
    A, B = f.source, f.target
    M = compose_prof(costar(f), star(f))

    def arrow(t):
        b, y, x = t
        return B.compose(x, y)

    unit = ProfCell(identity_prof(A), M, lambda a2, a, alpha: M.canon(a2, a, (f.ob(a), f.mor(alpha), B.identity(f.ob(a)))))
    MM = compose_prof(M, M)

    def mult(a2, a, t):
        mid, w1, w2 = t
        g = B.compose(arrow(w2), arrow(w1))
        return M.canon(a2, a, (f.ob(a), g, B.identity(f.ob(a))))

    return M, unit, ProfCell(MM, M, mult), arrow


def io_ff_factorize(f: Functor):
    """f = ff ∘ io with io identity on objects and ff full and faithful."""
    M, unit, mult, arrow = monad_of_functor(f)
    C, io = kleisli_object(M, unit, mult)
    ff = Functor(C, f.target, lambda a: f.ob(a), lambda h: arrow(h[2]), name="ff")
    return io, ff


def is_full_and_faithful(f: Functor) -> bool:
    A, B = f.source, f.target
    for x in A.objects:
        for y in A.objects:
            img = [f.mor(h) for h in A.hom(x, y)]
            if len(set(img)) != len(img) or set(img) != set(B.hom(f.ob(x), f.ob(y))):
                return False
    return True


def is_bijective_on_objects(f: Functor) -> bool:
    imgs = [f.ob(x) for x in f.source.objects]
    return len(set(imgs)) == len(imgs) and set(imgs) == set(f.target.objects)
