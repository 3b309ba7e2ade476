"""The three arity doctrines as bounded free constructions.

A word is a tuple of objects of the base category.  An :class:`ArityMap`
``x -> y`` carries, for every target position ``j``, the source position
``index[j]`` it reads from and an arrow ``arrows[j]: x[index[j]] -> y[j]``
of the base.  The doctrine restricts ``index``:

* planar: ``index`` is the identity (so ``len(x) == len(y)``);
* symmetric: ``index`` is a permutation;
* cartesian: ``index`` is any function, so duplication and deletion are maps.

``WordCategory(base, doctrine, K)`` is the full subcategory of S(base) on
words of length at most ``K``; homs are enumerated on demand.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Dict, Hashable, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .fincat import FinCategory, Functor

PLANAR = "planar"
SYMMETRIC = "symmetric"
CARTESIAN = "cartesian"
DOCTRINES = (PLANAR, SYMMETRIC, CARTESIAN)
_RANK = {d: i for i, d in enumerate(DOCTRINES)}

Word = Tuple[Hashable, ...]


def check_doctrine(d: str) -> str:
    if d not in _RANK:
        raise ValueError(f"unknown doctrine {d!r}; expected one of {DOCTRINES}")
    return d


def doctrine_leq(d1: str, d2: str) -> bool:
    """planar <= symmetric <= cartesian (inclusion of arity shapes)."""
    return _RANK[check_doctrine(d1)] <= _RANK[check_doctrine(d2)]


class ArityMap(NamedTuple):
    doctrine: str
    src: Word
    dst: Word
    index: Tuple[int, ...]
    arrows: Tuple[Hashable, ...]


def index_valid(d: str, m: int, n: int, index: Sequence[int]) -> bool:
    if len(index) != n or any(not 0 <= i < m for i in index):
        return False
    if d == PLANAR:
        return m == n and tuple(index) == tuple(range(n))
    if d == SYMMETRIC:
        return m == n and sorted(index) == list(range(n))
    return True


def index_candidates(d: str, m: int, n: int) -> Iterator[Tuple[int, ...]]:
    if d == PLANAR:
        if m == n:
            yield tuple(range(n))
    elif d == SYMMETRIC:
        if m == n:
            yield from permutations(range(n))
    else:
        yield from product(range(m), repeat=n)


def s_hom(x: Word, y: Word, d: str, base: FinCategory) -> List[ArityMap]:
    """All arity maps x -> y of doctrine d over ``base``."""
    out = []
    for index in index_candidates(d, len(x), len(y)):
        choices = [base.hom(x[index[j]], y[j]) for j in range(len(y))]
        for arrows in product(*choices):
            out.append(ArityMap(d, tuple(x), tuple(y), index, tuple(arrows)))
    return out


def s_objects_upto(a: FinCategory, d: str, k: int) -> List[Word]:
    """Words of length <= k over the objects of ``a``, shortest first."""
    check_doctrine(d)
    words: List[Word] = []
    for n in range(k + 1):
        words.extend(product(a.objects, repeat=n))
    return words


def identity_map(word: Word, d: str, base: FinCategory) -> ArityMap:
    return ArityMap(d, tuple(word), tuple(word), tuple(range(len(word))), tuple(base.identity(x) for x in word))


def compose_maps(g: ArityMap, f: ArityMap, base: FinCategory) -> ArityMap:
    """g∘f for f: x -> y and g: y -> z."""
    if f.dst != g.src:
        raise ValueError("arity maps not composable")
    index = tuple(f.index[g.index[k]] for k in range(len(g.dst)))
    arrows = tuple(base.compose(g.arrows[k], f.arrows[g.index[k]]) for k in range(len(g.dst)))
    return ArityMap(g.doctrine, f.src, g.dst, index, arrows)


def tensor_maps(maps: Sequence[ArityMap], d: str) -> ArityMap:
    """Blockwise juxtaposition u_1 ⊗ ... ⊗ u_n."""
    src: List = []
    dst: List = []
    index: List[int] = []
    arrows: List = []
    for u in maps:
        off = len(src)
        src.extend(u.src)
        dst.extend(u.dst)
        index.extend(off + i for i in u.index)
        arrows.extend(u.arrows)
    return ArityMap(d, tuple(src), tuple(dst), tuple(index), tuple(arrows))


def block_reindex(blocks: Sequence[Word], phi: Sequence[int], d: str, base: FinCategory) -> ArityMap:
    """concat(blocks) -> concat(blocks[phi[j]] for j), moving whole blocks."""
    offsets = []
    off = 0
    for w in blocks:
        offsets.append(off)
        off += len(w)
    src = tuple(x for w in blocks for x in w)
    dst: List = []
    index: List[int] = []
    for j in phi:
        for p, x in enumerate(blocks[j]):
            dst.append(x)
            index.append(offsets[j] + p)
    return ArityMap(d, src, tuple(dst), tuple(index), tuple(base.identity(x) for x in dst))


def include_map(u: ArityMap, d: str) -> ArityMap:
    """The doctrine-map inclusion: the same data read in a larger doctrine."""
    if not doctrine_leq(u.doctrine, d):
        raise ValueError(f"{u.doctrine} map is not a {d} map")
    return u._replace(doctrine=d)


def restrict_map(u: ArityMap, d: str) -> Optional[ArityMap]:
    """Inverse of :func:`include_map` when ``u`` already has shape ``d``."""
    if index_valid(d, len(u.src), len(u.dst), u.index):
        return u._replace(doctrine=d)
    return None


def unit_embed(a: Hashable) -> Word:
    return (a,)


def mult_flatten(ws: Iterable[Word]) -> Word:
    return tuple(x for w in ws for x in w)


def map_word(f: Functor, w: Word) -> Word:
    return tuple(f.ob(x) for x in w)


def map_arity(f: Functor, u: ArityMap) -> ArityMap:
    return ArityMap(u.doctrine, map_word(f, u.src), map_word(f, u.dst), u.index, tuple(f.mor(a) for a in u.arrows))


class WordCategory(FinCategory):
    """Bounded fragment of the free doctrine category on ``base``."""

    def __init__(self, base: FinCategory, doctrine: str, bound: int):
        self.base = base
        self.doctrine = check_doctrine(doctrine)
        self.bound = bound
        self.objects = tuple(s_objects_upto(base, doctrine, bound))
        self._objset = set(self.objects)
        self._homs: Dict[Tuple[Word, Word], Tuple[ArityMap, ...]] = {}
        self.name = f"S_{doctrine}^{bound}"

    def src(self, f):
        return f.src

    def dst(self, f):
        return f.dst

    def identity(self, x):
        return identity_map(x, self.doctrine, self.base)

    def compose(self, g, f):
        if f.dst != g.src:
            return None
        return compose_maps(g, f, self.base)

    def hom(self, x, y):
        key = (x, y)
        h = self._homs.get(key)
        if h is None:
            if x in self._objset and y in self._objset:
                h = tuple(s_hom(x, y, self.doctrine, self.base))
            else:
                h = ()
            self._homs[key] = h
        return h

    def has_object(self, x):
        return x in self._objset

    def has_morphism(self, f):
        return (
            isinstance(f, ArityMap)
            and f.doctrine == self.doctrine
            and f.src in self._objset
            and f.dst in self._objset
            and index_valid(self.doctrine, len(f.src), len(f.dst), f.index)
            and all(
                self.base.has_morphism(a) and self.base.src(a) == f.src[f.index[j]] and self.base.dst(a) == f.dst[j]
                for j, a in enumerate(f.arrows)
            )
        )

    def generators(self) -> Tuple[ArityMap, ...]:
        """One base generator in one slot; adjacent swaps (symmetric and up);
        single deletions and duplications (cartesian).

        A cartesian map factors as deletions, then duplications, then swaps,
        then slotwise arrows, so no intermediate word is longer than either
        end and the set generates the truncated category too.
        """
        gens = getattr(self, "_generators", None)
        if gens is not None:
            return gens
        B, d, K = self.base, self.doctrine, self.bound
        base_gens = B.generators()
        out: List[ArityMap] = []
        for w in self.objects:
            n = len(w)
            ident = tuple(B.identity(x) for x in w)
            for i in range(n):
                for beta in base_gens:
                    if B.src(beta) == w[i]:
                        dst = w[:i] + (B.dst(beta),) + w[i + 1:]
                        out.append(ArityMap(d, w, dst, tuple(range(n)), ident[:i] + (beta,) + ident[i + 1:]))
            if d == PLANAR:
                continue
            for i in range(n - 1):
                idx = tuple(range(i)) + (i + 1, i) + tuple(range(i + 2, n))
                out.append(ArityMap(d, w, tuple(w[k] for k in idx), idx, tuple(ident[k] for k in idx)))
            if d != CARTESIAN:
                continue
            for i in range(n):
                idx = tuple(k for k in range(n) if k != i)
                out.append(ArityMap(d, w, tuple(w[k] for k in idx), idx, tuple(ident[k] for k in idx)))
                if n < K:
                    idx = tuple(range(i + 1)) + tuple(range(i, n))
                    out.append(ArityMap(d, w, tuple(w[k] for k in idx), idx, tuple(ident[k] for k in idx)))
        self._generators = tuple(out)
        return self._generators

    def identity_of(self, w: Word) -> ArityMap:
        return self.identity(w)

    def __eq__(self, other):
        if isinstance(other, WordCategory):
            return (self.base is other.base or self.base == other.base) and (self.doctrine, self.bound) == (
                other.doctrine,
                other.bound,
            )
        if isinstance(other, FinCategory):
            return False
        return NotImplemented

    __hash__ = object.__hash__

    def __repr__(self):
        return f"<WordCategory {self.doctrine} K={self.bound} over {self.base!r}>"


_CACHE: Dict[Tuple[int, str, int], WordCategory] = {}


def word_category(base: FinCategory, doctrine: str, bound: int) -> WordCategory:
    """Shared instance per (base, doctrine, bound)."""
    key = (id(base), doctrine, bound)
    wc = _CACHE.get(key)
    if wc is None or wc.base is not base:
        wc = _CACHE[key] = WordCategory(base, doctrine, bound)
    return wc


def s_functor(f: Functor, d: str, bound: int) -> Functor:
    """S f on the bounded fragments: letterwise on words and arrows."""
    sa = word_category(f.source, d, bound)
    sb = word_category(f.target, d, bound)
    return Functor(sa, sb, lambda w: map_word(f, w), lambda u: map_arity(f, u), name="S" + (f.name or "f"))


def unit_functor(a: FinCategory, d: str, bound: int) -> Functor:
    """e_A: A -> S A, a |-> (a)."""
    sa = word_category(a, d, bound)
    return Functor(
        a,
        sa,
        unit_embed,
        lambda f: ArityMap(d, (a.src(f),), (a.dst(f),), (0,), (f,)),
        name="e",
    )


def inclusion_functor(a: FinCategory, d_from: str, d_to: str, bound: int) -> Functor:
    """k_A: T A -> S A for doctrines T <= S."""
    if not doctrine_leq(d_from, d_to):
        raise ValueError(f"no doctrine map {d_from} -> {d_to}")
    return Functor(
        word_category(a, d_from, bound),
        word_category(a, d_to, bound),
        lambda w: w,
        lambda u: include_map(u, d_to),
        name="k",
    )


def serialize_map(u: ArityMap) -> dict:
    return {"doctrine": u.doctrine, "src": list(u.src), "dst": list(u.dst), "index": list(u.index), "arrows": list(u.arrows)}
