"""Refined Relaxed Online Match for items in (1/3, 2/3], and Refined
Harmonic Match, which routes those items through it and everything else
through Harmonic Match with 19 classes."""

from __future__ import annotations

from ..classify import RHM_K, group_letter
from ..core import Bin, BinState, DomainError, Packer
from ._index import LevelIndex
from .harmonic import HarmonicMatch


class RrmCore:
    """Bin registries and counters for the a/b/c/d groups.

    Groups: a = (1/3, 37/96], b = (37/96, 1/2], c = (1/2, 59/96],
    d = (59/96, 2/3].  A bin that ends up holding two of these items is
    passed to ``owner._mature``.  Red bins are aa- and a2-bins, blue bins
    are ac-, bc- and a1-bins.
    """

    def __init__(self, owner: Packer):
        self.owner = owner
        D = owner.denom
        self.d_bins = LevelIndex(D)
        self.c_bins = LevelIndex(D)
        self.a1_bins = LevelIndex(D)
        self.a2_bin: Bin | None = None
        self.b_bin: Bin | None = None
        self.N_aa = 0
        self.N_ab = 0  # no rule ever pairs a with b; stays zero
        self.N_ac = 0
        self.N_bc = 0
        self.N_bb = 0
        self.N_d = 0
        self.N_da = 0
        self.n_a = 0
        self.n_b = 0
        self.n_c = 0
        self.n_d = 0

    # counters that are registry sizes
    @property
    def N_a1(self) -> int:
        return len(self.a1_bins)

    @property
    def N_a2(self) -> int:
        return 0 if self.a2_bin is None else 1

    @property
    def N_b(self) -> int:
        return 0 if self.b_bin is None else 1

    @property
    def N_c(self) -> int:
        return len(self.c_bins)

    @property
    def N_red(self) -> int:
        return self.N_aa + self.N_a2

    @property
    def N_blue(self) -> int:
        return self.N_ac + self.N_bc + self.N_a1

    def counters(self) -> dict[str, int]:
        return {
            "N_a1": self.N_a1, "N_a2": self.N_a2, "N_aa": self.N_aa, "N_ab": self.N_ab,
            "N_ac": self.N_ac, "N_b": self.N_b, "N_bb": self.N_bb, "N_bc": self.N_bc,
            "N_c": self.N_c, "N_d": self.N_d, "N_da": self.N_da,
            "n_a": self.n_a, "n_b": self.n_b, "n_c": self.n_c, "n_d": self.n_d,
        }

    def single_set(self) -> set[int]:
        """Input positions of large (c or d) items alone in their bins."""
        return {b.opener for b in self.c_bins} | {b.opener for b in self.d_bins}

    def step(self, x: int) -> Bin:
        owner = self.owner
        D = owner.denom
        g = group_letter(x, D)
        if g == "d":
            self.n_d += 1
            self.N_d += 1
            b = owner._open(x, "d")
            self.d_bins.add(b)
            return b

        if g == "c":
            self.n_c += 1
            if self.a1_bins:
                b = self.a1_bins.best_fit(x)
                assert b is not None, "a c item always fits beside an a item"
                self.a1_bins.remove(b)
                b.add(x)
                b.tag = "ac"
                self.N_ac += 1
                owner._mature(b)
            else:
                b = owner._open(x, "c")
                self.c_bins.add(b)
            return b

        if g == "b":
            self.n_b += 1
            b = self.c_bins.best_fit(x)
            if b is not None:
                self.c_bins.remove(b)
                b.add(x)
                b.tag = "bc"
                self.N_bc += 1
                owner._mature(b)
            elif self.b_bin is not None:
                b = self.b_bin
                self.b_bin = None
                b.add(x)
                b.tag = "bb"
                self.N_bb += 1
                owner._mature(b)
            else:
                b = self.b_bin = owner._open(x, "b")
            return b

        # a item
        self.n_a += 1
        b = self.d_bins.best_fit(x)
        if b is not None:
            self.d_bins.remove(b)
            b.add(x)
            self.N_da += 1
            owner._mature(b)
        elif self.c_bins:
            # bin with the largest c item; a + c <= 1 always
            b = self.c_bins.highest()
            assert b.level + x <= D
            self.c_bins.remove(b)
            b.add(x)
            b.tag = "ac"
            self.N_ac += 1
            owner._mature(b)
        elif self.a2_bin is not None:
            b = self.a2_bin
            self.a2_bin = None
            b.add(x)
            b.tag = "aa"
            self.N_aa += 1
            owner._mature(b)
        else:
            b = owner._open(x)
            if self.N_aa < 3 * (self.N_ac + self.N_a1 + self.N_bc):
                b.tag = "a2"
                self.a2_bin = b
            else:
                b.tag = "a1"
                self.a1_bins.add(b)
        return b


class RefinedRelaxedMatch(Packer):
    """Stand-alone RRM; accepts only items in (1/3, 2/3]."""

    name = "rrm"

    def __init__(self, denom: int):
        super().__init__(denom)
        self.core = RrmCore(self)

    def _mature(self, b: Bin) -> None:
        b.state = BinState.MATURE

    def step(self, x: int) -> Bin:
        D = self.denom
        if not D < 3 * x <= 2 * D:
            raise DomainError(f"item {self.t} (size {x}/{D}) is outside (1/3, 2/3]", self.t)
        b = self.core.step(x)
        self.t += 1
        return b


class RefinedHarmonicMatch(HarmonicMatch):
    """Items in (1/3, 2/3] go to RRM without consulting the mature pool (no
    mature bin can take them: every mature bin is above 2/3 full).  Others
    follow Harmonic Match with K = 19 over the shared pool, which also holds
    the bins RRM matures."""

    name = "rhm"

    def __init__(self, denom: int):
        super().__init__(denom, RHM_K, keep_mature=True)
        self.rrm = RrmCore(self)

    def step(self, x: int) -> Bin:
        D = self.denom
        if D < 3 * x <= 2 * D:
            if __debug__:
                low = self.pool.lowest()
                assert low is None or 3 * low.level > 2 * D, "mature bin at or below 2/3"
            b = self.rrm.step(x)
        else:
            b = self._place_harmonic(x)
        self.t += 1
        return b
