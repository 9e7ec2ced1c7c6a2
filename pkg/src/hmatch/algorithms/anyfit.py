"""Classical online packers: Next Fit, First Fit, Best Fit and the matching
variants Matching Best Fit and Online Match."""

from __future__ import annotations

from ..core import Bin, BinState, Packer
from ._index import FirstFitTree, LevelIndex


class NextFit(Packer):
    name = "nf"

    def __init__(self, denom: int):
        super().__init__(denom)
        self.current: Bin | None = None

    def step(self, x: int) -> Bin:
        b = self.current
        if b is not None and b.level + x <= self.denom:
            b.add(x)
        else:
            if b is not None:
                b.state = BinState.CLOSED
            b = self.current = self._open(x)
        self.t += 1
        return b


class FirstFit(Packer):
    name = "ff"

    def __init__(self, denom: int):
        super().__init__(denom)
        self.tree = FirstFitTree()

    def step(self, x: int) -> Bin:
        pos = self.tree.first_fit(x)
        if pos < 0:
            b = self._open(x)
        else:
            b = self.bins[pos]
            b.add(x)
        self.tree.set(b.id, self.denom - b.level)
        self.t += 1
        return b


class BestFit(Packer):
    name = "bf"

    def __init__(self, denom: int):
        super().__init__(denom)
        self.index = LevelIndex(denom)

    def step(self, x: int) -> Bin:
        index = self.index
        b = index.best_fit(x)
        if b is None:
            b = self._open(x)
        else:
            index.remove(b)
            b.add(x)
        if b.level < self.denom:
            index.add(b)
        self.t += 1
        return b


class MatchingBestFit(Packer):
    """Best Fit that closes a bin as soon as it receives its first small item.

    Open bins therefore each hold exactly one large item (size > 1/2).  A small
    item with no large partner gets a bin of its own, closed immediately.
    """

    name = "mbf"

    def __init__(self, denom: int):
        super().__init__(denom)
        self.singles = LevelIndex(denom)

    def step(self, x: int) -> Bin:
        if 2 * x > self.denom:
            b = self._open(x, "large")
            self.singles.add(b)
        else:
            b = self.singles.best_fit(x)
            if b is None:
                b = self._open(x, "small")
            else:
                self.singles.remove(b)
                b.add(x)
                b.tag = "matched"
            b.state = BinState.CLOSED
        self.t += 1
        return b

    def single_set(self) -> set[int]:
        """Input positions of large items still alone in their bins."""
        return {b.opener for b in self.singles}


class OnlineMatch(Packer):
    """Pairs a small item with a large companion when their sum lies in
    ``[1 - 1/K, 1]``; unmatched small items go to a separate Next Fit list."""

    name = "om"

    def __init__(self, denom: int, K: int = 20):
        if K < 2:
            raise ValueError("Online Match needs K >= 2")
        super().__init__(denom)
        self.K = K
        self.singles = LevelIndex(denom)
        self.small_bin: Bin | None = None

    def step(self, x: int) -> Bin:
        D, K = self.denom, self.K
        if 2 * x > D:
            b = self._open(x, "large")
            self.singles.add(b)
        else:
            b = self.singles.best_fit(x)
            # the best fit has the largest feasible sum, so it is the only candidate
            if b is not None and K * (b.level + x) >= (K - 1) * D:
                self.singles.remove(b)
                b.add(x)
                b.tag = "matched"
                b.state = BinState.CLOSED
            else:
                b = self.small_bin
                if b is not None and b.level + x <= D:
                    b.add(x)
                else:
                    if b is not None:
                        b.state = BinState.CLOSED
                    b = self.small_bin = self._open(x, "small")
        self.t += 1
        return b
