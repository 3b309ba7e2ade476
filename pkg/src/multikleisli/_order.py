"""Global id order and a small union-find used by every coend computation."""

from __future__ import annotations

from functools import lru_cache
from typing import Any, Dict, Hashable, Iterable, List


@lru_cache(maxsize=1 << 20)
def canon_key(x: Any) -> tuple:
    """Total order key over the nested ids used throughout the package.

    Strings, ints, None and (possibly nested) tuples are comparable with
    each other: the key tags each kind so mixed containers never raise.
    """
    if x is None:
        return (0,)
    if isinstance(x, bool):
        return (1, int(x))
    if isinstance(x, int):
        return (1, x)
    if isinstance(x, str):
        return (2, x)
    if isinstance(x, tuple):
        return (3, tuple(canon_key(e) for e in x))
    if isinstance(x, frozenset):
        return (4, tuple(sorted(canon_key(e) for e in x)))
    raise TypeError(f"unorderable id {x!r}")


def canon_sorted(xs: Iterable[Any]) -> List[Any]:
    return sorted(xs, key=canon_key)


def canon_min(xs: Iterable[Any]) -> Any:
    return min(xs, key=canon_key)


class UnionFind:
    """Disjoint sets over integer slots with union by size and path halving;
    representatives are resolved to the least member under :func:`canon_key`
    by :meth:`canonical`."""

    def __init__(self, items: Iterable[Hashable] = ()):
        self._slot: Dict[Hashable, int] = {}
        self._items: List[Hashable] = []
        self._parent: List[int] = []
        self._size: List[int] = []
        for x in items:
            self.add(x)

    def add(self, x: Hashable) -> None:
        if x not in self._slot:
            self._slot[x] = len(self._items)
            self._parent.append(len(self._items))
            self._size.append(1)
            self._items.append(x)

    def __contains__(self, x: Hashable) -> bool:
        return x in self._slot

    def _root(self, i: int) -> int:
        parent = self._parent
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def find(self, x: Hashable) -> Hashable:
        return self._items[self._root(self._slot[x])]

    def union(self, x: Hashable, y: Hashable) -> None:
        rx, ry = self._root(self._slot[x]), self._root(self._slot[y])
        if rx != ry:
            if self._size[rx] < self._size[ry]:
                rx, ry = ry, rx
            self._parent[ry] = rx
            self._size[rx] += self._size[ry]

    def canonical(self) -> Dict[Hashable, Hashable]:
        """Map every member to the least member of its class."""
        items = self._items
        roots = [self._root(i) for i in range(len(items))]
        best: Dict[int, Hashable] = {}
        for x, r in zip(items, roots):
            b = best.get(r)
            if b is None or canon_key(x) < canon_key(b):
                best[r] = x
        return {x: best[r] for x, r in zip(items, roots)}
