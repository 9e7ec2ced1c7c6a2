from __future__ import annotations

import heapq

import numpy as np

from ..core import Bin, BinState, Packer

SS_MAX_DENOM = 10_000


class SumOfSquares(Packer):
    """Sum-of-Squares packing for discrete sizes.

    Keeps ``counts[h]`` = number of open bins at level ``h`` (0 < h < D) and
    places each item where ``sum(counts**2)`` grows least.  Bins that become
    exactly full leave the histogram.  Ties prefer filling a bin exactly, then
    the highest level, then a new bin.
    """

    name = "ss"

    def __init__(self, denom: int, max_denom: int = SS_MAX_DENOM):
        if denom > max_denom:
            raise ValueError(f"SS needs D <= {max_denom}, got {denom}")
        super().__init__(denom)
        self.counts = np.zeros(denom + 1, dtype=np.int64)
        # 2*count + 1 is the cost of adding one more bin at a level; zero at D
        self.add_cost = np.ones(denom + 1, dtype=np.int64)
        self.add_cost[denom] = 0
        self.at_level: dict[int, list[int]] = {}

    def ss(self) -> int:
        return int((self.counts * self.counts).sum())

    def _inc(self, h: int, bin_id: int) -> None:
        if h == self.denom:
            return
        self.counts[h] += 1
        self.add_cost[h] += 2
        heapq.heappush(self.at_level.setdefault(h, []), bin_id)

    def _dec(self, h: int) -> int:
        self.counts[h] -= 1
        self.add_cost[h] -= 2
        heap = self.at_level[h]
        bin_id = heapq.heappop(heap)
        if not heap:
            del self.at_level[h]
        return bin_id

    def step(self, x: int) -> Bin:
        D = self.denom
        cap = D - x
        new_cost = int(self.add_cost[x])
        chosen = 0
        if cap >= 1:
            c = self.counts[1:cap + 1]
            delta = self.add_cost[1 + x:D + 1] - 2 * c + 1
            delta[c == 0] = np.iinfo(np.int64).max
            best = int(delta.min())
            if best <= new_cost and c.any():
                if delta[cap - 1] == best:
                    chosen = cap
                else:
                    chosen = int(np.flatnonzero(delta == best)[-1]) + 1
        if chosen:
            b = self.bins[self._dec(chosen)]
            b.add(x)
        else:
            b = self._open(x)
        if b.level == D:
            b.state = BinState.CLOSED
        self._inc(b.level, b.id)
        self.t += 1
        return b
