"""Weighting functions for the refined algorithm, bin-weight maximisation,
the Harmonic limit series and an exact OPT oracle for small inputs."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .classify import RHM_K
from .core import Sequence, lower_bound

F = Fraction


@dataclass(frozen=True)
class Piece:
    """Items with size in (lo, hi] weigh ``weight``, or ``weight * size`` when
    ``per_size`` is set."""

    label: str
    lo: Fraction
    hi: Fraction
    weight: Fraction
    per_size: bool = False

    def contains(self, num: int, D: int) -> bool:
        return self.lo.numerator * D < num * self.lo.denominator and \
            num * self.hi.denominator <= self.hi.numerator * D

    def weigh(self, num: int, D: int) -> Fraction:
        return self.weight * F(num, D) if self.per_size else self.weight


@dataclass(frozen=True)
class Weighting:
    name: str
    pieces: tuple[Piece, ...]


def _refined_weighting(name: str, a: Fraction, b: Fraction, c: Fraction) -> Weighting:
    K = RHM_K
    pieces = [Piece(f"small{K}", F(0), F(1, K + 1), F(K + 1, K), per_size=True)]
    for k in range(K - 1, 1, -1):
        pieces.append(Piece(f"small{k}", F(1, k + 2), F(1, k + 1), F(1, k + 1)))
    pieces += [
        Piece("a", F(1, 3), F(37, 96), a),
        Piece("b", F(37, 96), F(1, 2), b),
        Piece("c", F(1, 2), F(59, 96), c),
        Piece("d", F(59, 96), F(2, 3), F(1)),
        Piece("large", F(2, 3), F(1), F(1)),
    ]
    return Weighting(name, tuple(pieces))


CASE1 = _refined_weighting("case1", F(4, 7), F(4, 7), F(0))
CASE2 = _refined_weighting("case2", F(3, 7), F(1, 2), F(1))
ZERO = Weighting("zero", tuple(
    Piece(p.label, p.lo, p.hi, F(0), p.per_size) for p in CASE1.pieces))

WEIGHTINGS = {"1": CASE1, "2": CASE2, "case1": CASE1, "case2": CASE2, "zero": ZERO}


def weight(w: Weighting, num: int, D: int) -> Fraction:
    for p in w.pieces:
        if p.contains(num, D):
            return p.weigh(num, D)
    raise ValueError(f"size {num}/{D} not covered by weighting {w.name}")


def total_weight(w: Weighting, s: Sequence) -> Fraction:
    return sum((weight(w, x, s.denom) for x in s.items), F(0))


@dataclass(frozen=True)
class WeightWitness:
    items: tuple[tuple[str, Fraction], ...]  # (piece label, size)
    filler: Fraction  # space filled by the per-size piece
    filler_label: str | None
    total_weight: Fraction
    total_size: Fraction
    limit_weight: Fraction  # same pieces with every size pushed to its left endpoint

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.items)


def max_bin_weight(w: Weighting, resolution: int = 9600 * 20) -> tuple[Fraction, WeightWitness]:
    """Largest total weight of a set of items that fits in one bin.

    Sizes live on the grid ``1/resolution``.  A constant-weight piece is best
    represented by its smallest grid size above ``lo``; leftover room is filled
    at the density of the per-size piece starting at 0.  The search is an
    exhaustive depth-first enumeration of multisets (largest sizes first)
    pruned by a density bound, so the result is the exact grid optimum.
    """
    R = resolution
    if R < 96 or R % 96:
        raise ValueError("resolution must be a positive multiple of 96")
    fillers = [p for p in w.pieces if p.per_size]
    for p in fillers:
        if p.lo != 0:
            raise ValueError(f"per-size piece {p.label} must start at 0")
    filler = max(fillers, key=lambda p: p.weight, default=None)
    fill_density = filler.weight if filler is not None else F(0)

    cands = []  # (units, weight, piece)
    for p in w.pieces:
        if p.per_size:
            continue
        units = math.floor(p.lo * R) + 1
        if units > p.hi * R:
            raise ValueError(f"resolution {R} has no grid point inside piece {p.label}")
        # zero or sub-filler density pieces can never beat filling the room
        if p.weight > fill_density * F(units, R):
            cands.append((units, p.weight, p))
    cands.sort(key=lambda c: (-c[0], c[2].label))

    # integer scale: value * R * L, with L clearing every weight denominator
    L = reduce(math.lcm, [c[1].denominator for c in cands] + [fill_density.denominator], 1)
    fill_unit = fill_density * L  # per grid unit, scaled by R*L / R
    assert fill_unit.denominator == 1
    fill_unit = int(fill_unit)
    scaled = [(u, int(wt * L * R)) for u, wt, _ in cands]
    # best density (scaled value per unit) among candidates from position i onward
    dens = [max(fill_unit, sv / u) for u, sv in scaled] + [fill_unit]
    suffix = list(dens)
    for i in range(len(scaled) - 1, -1, -1):
        suffix[i] = max(dens[i], suffix[i + 1])

    best_val = R * fill_unit  # bin filled with filler only
    best_pick: tuple[int, ...] = ()
    pick: list[int] = []

    def dfs(start: int, room: int, value: int) -> None:
        nonlocal best_val, best_pick
        total = value + room * fill_unit
        if total > best_val:
            best_val = total
            best_pick = tuple(pick)
        for j in range(start, len(scaled)):
            if value + room * suffix[j] * (1 + 1e-12) <= best_val:
                return
            u, sv = scaled[j]
            if u <= room:
                pick.append(j)
                dfs(j, room - u, value + sv)
                pick.pop()

    dfs(0, R, 0)

    value = F(best_val, R * L)
    items = tuple((cands[j][2].label, F(cands[j][0], R)) for j in best_pick)
    used = sum((s for _, s in items), F(0))
    lo_sum = sum((cands[j][2].lo for j in best_pick), F(0))
    weights = sum((cands[j][1] for j in best_pick), F(0))
    witness = WeightWitness(
        items=items,
        filler=1 - used,
        filler_label=filler.label if filler is not None else None,
        total_weight=value,
        total_size=F(1) if fill_density else used,
        limit_weight=weights + (1 - lo_sum) * fill_density,
    )
    return value, witness


def t_series(terms: int) -> list[int]:
    """t_1 = 2, t_{i+1} = t_i (t_i - 1) + 1."""
    t = [2]
    while len(t) < terms:
        t.append(t[-1] * (t[-1] - 1) + 1)
    return t


T_EXACT_TERMS = 16


def t_infinity_exact(terms: int) -> Fraction:
    """Partial sum of 1/(t_i - 1) as an exact fraction, for at most
    ``T_EXACT_TERMS`` terms (t_i has about 2**i digits)."""
    if not 1 <= terms <= T_EXACT_TERMS:
        raise ValueError(f"terms must be in [1, {T_EXACT_TERMS}]")
    return sum((F(1, t - 1) for t in t_series(terms)), F(0))


def t_infinity(terms: int) -> float:
    """Partial sum of 1/(t_i - 1) as a float.

    Past seven terms the increments fall below double precision.  Requests
    beyond ``T_EXACT_TERMS`` are answered with that many terms (see
    :func:`t_infinity_report`).
    """
    if terms < 1:
        raise ValueError("terms must be at least 1")
    return float(t_infinity_exact(min(terms, T_EXACT_TERMS)))


def t_infinity_report(terms: int) -> tuple[float, bool]:
    """Value plus a flag telling whether the request was truncated."""
    return t_infinity(terms), terms > T_EXACT_TERMS


OPT_MAX_N = 16


def opt_bruteforce(s: Sequence, max_n: int = OPT_MAX_N) -> int:
    """Exact optimum by bin completion with memoisation on the set of
    remaining items.

    Items are sorted decreasingly; each bin is built around the largest
    remaining item, and only maximal feasible completions are tried.
    """
    n = len(s)
    if n > max_n:
        raise ValueError(f"opt_bruteforce handles at most {max_n} items, got {n}")
    if n == 0:
        return 0
    D = s.denom
    sizes = sorted(s.items, reverse=True)
    full = (1 << n) - 1
    memo: dict[int, int] = {0: 0}

    def completions(mask: int):
        first = (mask & -mask).bit_length() - 1
        rest = [i for i in range(first + 1, n) if mask >> i & 1]

        def extend(k: int, room: int, chosen: int):
            grew = False
            for idx in range(k, len(rest)):
                i = rest[idx]
                if sizes[i] <= room:
                    grew = True
                    yield from extend(idx + 1, room - sizes[i], chosen | 1 << i)
            # keep only maximal sets: every unchosen remaining item overflows
            if not grew and all(chosen >> i & 1 or sizes[i] > room for i in rest):
                yield chosen

        yield from extend(0, D - sizes[first], 1 << first)

    def solve(mask: int) -> int:
        got = memo.get(mask)
        if got is not None:
            return got
        total = sum(sizes[i] for i in range(n) if mask >> i & 1)
        floor = -(-total // D)
        best = n + 1
        for sub in completions(mask):
            r = 1 + solve(mask & ~sub)
            if r < best:
                best = r
                if best == floor:
                    break
        memo[mask] = best
        return best

    result = solve(full)
    assert result >= lower_bound(s)
    return result
