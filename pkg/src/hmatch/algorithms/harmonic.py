"""Harmonic, Relaxed Online Match, Harmonic Match and its monotone variant."""

from __future__ import annotations

from ..classify import hm_index
from ..core import Bin, BinState, DomainError, Packer
from ._index import LevelIndex


class Harmonic(Packer):
    """Next Fit inside each class (1/2,1], (1/3,1/2], ..., (0,1/K]."""

    name = "ha"

    def __init__(self, denom: int, K: int = 20):
        if K < 1:
            raise ValueError("K must be at least 1")
        super().__init__(denom)
        self.K = K
        self.current: list[Bin | None] = [None] * (K + 1)

    def step(self, x: int) -> Bin:
        D = self.denom
        k = D // x
        if k > self.K:
            k = self.K
        b = self.current[k]
        if b is not None and b.level + x <= D:
            b.add(x)
        else:
            if b is not None:
                b.state = BinState.CLOSED
            b = self.current[k] = self._open(x, f"ha:{k}")
        self.t += 1
        return b


class RomClass:
    """Relaxed Online Match restricted to one class.

    Large items open bins of their own.  A small item best-fits into a bin
    holding a single large item, which then matures; failing that it goes to
    the class's Next Fit bin, which matures when it cannot take the item.
    Bins that mature are handed back to the owner through ``owner._mature``.
    """

    __slots__ = ("owner", "index", "singles", "nf")

    def __init__(self, owner: Packer, index: int):
        self.owner = owner
        self.index = index
        self.singles = LevelIndex(owner.denom)
        self.nf: Bin | None = None

    def place_large(self, x: int) -> Bin:
        b = self.owner._open(x, f"large:{self.index}")
        self.singles.add(b)
        return b

    def place_small(self, x: int) -> Bin:
        owner = self.owner
        b = self.singles.best_fit(x)
        if b is not None:
            self.singles.remove(b)
            b.add(x)
            b.tag = f"matched:{self.index}"
            owner._mature(b)
            return b
        b = self.nf
        if b is not None and b.level + x <= owner.denom:
            b.add(x)
            return b
        if b is not None:
            owner._mature(b)
        b = self.nf = owner._open(x, f"nf:{self.index}")
        return b


class RelaxedOnlineMatch(Packer):
    """ROM over the items of a single Harmonic Match class.

    The class is fixed by ``cls`` or, if omitted, by the first item; any item
    from another class raises :class:`DomainError`.
    """

    name = "rom"

    def __init__(self, denom: int, K: int = 20, cls: int | None = None):
        super().__init__(denom)
        self.K = K
        self.cls = cls
        self.sub: RomClass | None = None if cls is None else RomClass(self, cls)

    def _mature(self, b: Bin) -> None:
        b.state = BinState.CLOSED

    def single_set(self) -> set[int]:
        return set() if self.sub is None else {b.opener for b in self.sub.singles}

    def step(self, x: int) -> Bin:
        D = self.denom
        k = hm_index(x, D, self.K)
        if self.sub is None:
            self.cls = k
            self.sub = RomClass(self, k)
        elif k != self.cls:
            raise DomainError(
                f"item {self.t} (size {x}/{D}) is in class {k}, packer handles class {self.cls}",
                self.t,
            )
        b = self.sub.place_large(x) if 2 * x > D else self.sub.place_small(x)
        self.t += 1
        return b


class HarmonicMatch(Packer):
    """Harmonic Match with parameter K.

    Small items first try a best fit into the global pool of mature bins and
    otherwise fall through to their class's :class:`RomClass`.  With
    ``keep_mature=False`` the pool is never consulted: bins close as soon as
    they mature (the monotone variant).
    """

    name = "hm"

    def __init__(self, denom: int, K: int = 20, keep_mature: bool = True):
        if K < 1:
            raise ValueError("K must be at least 1")
        super().__init__(denom)
        self.K = K
        self.keep_mature = keep_mature
        self.pool = LevelIndex(denom)
        self.classes: dict[int, RomClass] = {}

    def _mature(self, b: Bin) -> None:
        if self.keep_mature:
            b.state = BinState.MATURE
            if b.level < self.denom:
                self.pool.add(b)
        else:
            b.state = BinState.CLOSED

    def _rom(self, k: int) -> RomClass:
        rc = self.classes.get(k)
        if rc is None:
            rc = self.classes[k] = RomClass(self, k)
        return rc

    def _place_harmonic(self, x: int) -> Bin:
        D = self.denom
        if 2 * x > D:
            return self._rom(hm_index(x, D, self.K)).place_large(x)
        if self.keep_mature:
            pool = self.pool
            b = pool.best_fit(x)
            if b is not None:
                pool.remove(b)
                b.add(x)
                if b.level < D:
                    pool.add(b)
                return b
        return self._rom(hm_index(x, D, self.K)).place_small(x)

    def step(self, x: int) -> Bin:
        b = self._place_harmonic(x)
        self.t += 1
        return b


class HarmonicMatchMonotone(HarmonicMatch):
    name = "hmm"

    def __init__(self, denom: int, K: int = 20):
        super().__init__(denom, K, keep_mature=False)
