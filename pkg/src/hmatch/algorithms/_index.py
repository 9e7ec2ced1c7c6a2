from __future__ import annotations

from sortedcontainers import SortedList

from ..core import Bin

_SHIFT = 40
_MASK = (1 << _SHIFT) - 1


class LevelIndex:
    """Bins ordered by level for best-fit lookups.

    A bin is keyed by ``level << 40 | (mask - id)`` so that, among bins with
    the same level, the lowest id has the largest key and wins the lookup.
    Callers must :meth:`remove` a bin before changing its level.
    """

    __slots__ = ("_keys", "_bins", "capacity")

    def __init__(self, capacity: int):
        self.capacity = capacity
        self._keys = SortedList()
        self._bins: dict[int, Bin] = {}

    def __len__(self) -> int:
        return len(self._bins)

    def __bool__(self) -> bool:
        return bool(self._bins)

    def __contains__(self, b: Bin) -> bool:
        return ((b.level << _SHIFT) | (_MASK - b.id)) in self._bins

    def __iter__(self):
        return iter(self._bins.values())

    def add(self, b: Bin) -> None:
        k = (b.level << _SHIFT) | (_MASK - b.id)
        self._keys.add(k)
        self._bins[k] = b

    def remove(self, b: Bin) -> None:
        k = (b.level << _SHIFT) | (_MASK - b.id)
        del self._bins[k]
        self._keys.remove(k)

    def best_fit(self, x: int) -> Bin | None:
        """Highest-level bin that can still take ``x``; ties go to the lowest id."""
        keys = self._keys
        i = keys.bisect_right(((self.capacity - x) << _SHIFT) | _MASK)
        if i == 0:
            return None
        return self._bins[keys[i - 1]]

    def highest(self) -> Bin | None:
        if not self._keys:
            return None
        return self._bins[self._keys[-1]]

    def lowest(self) -> Bin | None:
        if not self._keys:
            return None
        return self._bins[self._keys[0]]


class FirstFitTree:
    """Max-segment tree over bin residual capacities, indexed by bin id."""

    __slots__ = ("size", "tree")

    def __init__(self, size: int = 1024):
        self.size = size
        self.tree = [0] * (2 * size)

    def _grow(self) -> None:
        old = self.tree[self.size:]
        self.size *= 2
        tree = [0] * (2 * self.size)
        tree[self.size:self.size + len(old)] = old
        for i in range(self.size - 1, 0, -1):
            a, b = tree[2 * i], tree[2 * i + 1]
            tree[i] = a if a > b else b
        self.tree = tree

    def set(self, pos: int, residual: int) -> None:
        if pos >= self.size:
            self._grow()
        tree = self.tree
        i = pos + self.size
        tree[i] = residual
        i >>= 1
        while i:
            a, b = tree[2 * i], tree[2 * i + 1]
            m = a if a > b else b
            if tree[i] == m:
                break
            tree[i] = m
            i >>= 1

    def first_fit(self, x: int) -> int:
        """Lowest position whose residual is at least ``x``, or -1."""
        tree = self.tree
        if tree[1] < x:
            return -1
        i = 1
        size = self.size
        while i < size:
            i *= 2
            if tree[i] < x:
                i += 1
        return i - size
