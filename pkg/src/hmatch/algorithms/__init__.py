"""Online packers and the identifier registry used by the CLI and harness.

Identifiers: ``nf ff bf mbf om ha rom hm hmm rrm rhm ss``; ``om``, ``ha``,
``rom``, ``hm`` and ``hmm`` also take a class count, e.g. ``hm:20``.
"""

from __future__ import annotations

from typing import Callable

from ..core import Packer
from .anyfit import BestFit, FirstFit, MatchingBestFit, NextFit, OnlineMatch
from .harmonic import Harmonic, HarmonicMatch, HarmonicMatchMonotone, RelaxedOnlineMatch, RomClass
from .refined import RefinedHarmonicMatch, RefinedRelaxedMatch, RrmCore
from .sumsq import SS_MAX_DENOM, SumOfSquares

__all__ = [
    "ALGORITHMS", "BestFit", "FirstFit", "Harmonic", "HarmonicMatch", "HarmonicMatchMonotone",
    "MatchingBestFit", "NextFit", "OnlineMatch", "RefinedHarmonicMatch", "RefinedRelaxedMatch",
    "RelaxedOnlineMatch", "RomClass", "RrmCore", "SS_MAX_DENOM", "SumOfSquares",
    "make_packer", "parse_algorithm",
]

DEFAULT_K = 20

ALGORITHMS: dict[str, Callable[..., Packer]] = {
    "nf": NextFit,
    "ff": FirstFit,
    "bf": BestFit,
    "mbf": MatchingBestFit,
    "om": OnlineMatch,
    "ha": Harmonic,
    "rom": RelaxedOnlineMatch,
    "hm": HarmonicMatch,
    "hmm": HarmonicMatchMonotone,
    "rrm": RefinedRelaxedMatch,
    "rhm": RefinedHarmonicMatch,
    "ss": SumOfSquares,
}

_PARAMETERIZED = {"om", "ha", "rom", "hm", "hmm"}


def parse_algorithm(algo_id: str) -> tuple[str, int | None]:
    """Split ``'hm:20'`` into ``('hm', 20)``; raises ValueError on unknown ids."""
    name, sep, arg = algo_id.partition(":")
    if name not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algo_id!r}")
    if not sep:
        return name, (DEFAULT_K if name in _PARAMETERIZED else None)
    if name not in _PARAMETERIZED:
        raise ValueError(f"algorithm {name!r} takes no parameter")
    try:
        K = int(arg)
    except ValueError:
        raise ValueError(f"bad class count in {algo_id!r}") from None
    low = 2 if name == "om" else 1
    if K < low:
        raise ValueError(f"{name} needs K >= {low}")
    return name, K


def make_packer(algo_id: str, denom: int) -> Packer:
    name, K = parse_algorithm(algo_id)
    cls = ALGORITHMS[name]
    return cls(denom) if K is None else cls(denom, K)
