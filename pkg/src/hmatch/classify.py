"""Interval classification for the Harmonic family.

All intervals are half-open ``(lo, hi]`` and membership is decided by integer
cross-multiplication against the sequence denominator.
"""

from __future__ import annotations

from typing import NamedTuple

SMALL = "small"
LARGE = "large"

#: number of classes used by the refined algorithm for everything outside (1/3, 2/3]
RHM_K = 19


class HmClass(NamedTuple):
    index: int
    side: str


class RhmGroup(NamedTuple):
    group: str  # 'a' | 'b' | 'c' | 'd' | 'other'
    cls: HmClass | None = None


def hm_index(num: int, D: int, K: int) -> int:
    """Class index of a size under the paired Harmonic Match intervals."""
    if 2 * num > D:
        y = D - num
        if y == 0:
            return K
        # (i/(i+1), (i+1)/(i+2)]  <=>  i + 2 == ceil(D / y)
        i = -(-D // y) - 2
    else:
        # (1/(i+2), 1/(i+1)]  <=>  i + 1 == floor(D / num)
        i = D // num - 1
    return i if i < K else K


def hm_class(num: int, D: int, K: int) -> HmClass:
    return HmClass(hm_index(num, D, K), LARGE if 2 * num > D else SMALL)


def ha_class(num: int, D: int, K: int) -> int:
    """Harmonic class: i with size in (1/(i+1), 1/i] for i < K, else K."""
    i = D // num
    return i if i < K else K


def rhm_group(num: int, D: int) -> RhmGroup:
    if 3 * num > D and 3 * num <= 2 * D:
        if 2 * num <= D:
            return RhmGroup("a" if 96 * num <= 37 * D else "b")
        return RhmGroup("c" if 96 * num <= 59 * D else "d")
    return RhmGroup("other", hm_class(num, D, RHM_K))


def group_letter(num: int, D: int) -> str:
    """Fast path for items already known to lie in (1/3, 2/3]."""
    if 2 * num <= D:
        return "a" if 96 * num <= 37 * D else "b"
    return "c" if 96 * num <= 59 * D else "d"


def in_class_one(num: int, D: int) -> bool:
    return D < 3 * num <= 2 * D
