"""Exact-size sequences, bins, packings and the streaming packer contract.

Item sizes are integers over a per-sequence denominator ``D`` (the bin
capacity in units), so every placement decision is an integer comparison.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator


class DomainError(ValueError):
    """An item lies outside the size range a restricted packer accepts."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class SequenceFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


@dataclass(frozen=True)
class Sequence:
    denom: int
    items: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.denom, int) or self.denom < 1:
            raise ValueError(f"denominator must be a positive integer, got {self.denom!r}")
        if not isinstance(self.items, tuple):
            object.__setattr__(self, "items", tuple(int(v) for v in self.items))
        D = self.denom
        for i, x in enumerate(self.items):
            if not 1 <= x <= D:
                raise ValueError(f"item {i} has size {x}, outside [1, {D}]")

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[int]:
        return iter(self.items)

    @property
    def total(self) -> Fraction:
        return Fraction(sum(self.items), self.denom)

    def without(self, index: int) -> "Sequence":
        return Sequence(self.denom, self.items[:index] + self.items[index + 1:])

    @classmethod
    def from_floats(cls, sizes: Iterable[float], denom: int = 1 << 20) -> "Sequence":
        """Round each size to the nearest unit of ``1/denom`` (minimum one unit)."""
        return cls(denom, tuple(max(1, min(denom, round(s * denom))) for s in sizes))


class BinState(enum.Enum):
    OPEN = "open"
    MATURE = "mature"
    CLOSED = "closed"


@dataclass(eq=False, slots=True)
class Bin:
    id: int
    items: list[int] = field(default_factory=list)
    level: int = 0
    state: BinState = BinState.OPEN
    tag: str | None = None
    # position in the input of the item that opened the bin
    opener: int = -1

    def add(self, x: int) -> None:
        self.items.append(x)
        self.level += x


@dataclass
class Packing:
    denom: int
    bins: list[Bin]

    @property
    def cost(self) -> int:
        return len(self.bins)

    def signature(self) -> list[tuple[int, ...]]:
        """Bin-by-bin contents, for determinism comparisons."""
        return [tuple(b.items) for b in self.bins]


def fits(bin: Bin, x: int, D: int) -> bool:
    return bin.level + x <= D


def waste(p: Packing, s: Sequence) -> Fraction:
    packed = Counter(x for b in p.bins for x in b.items)
    if packed != Counter(s.items):
        raise ValueError("packing does not hold exactly the items of the sequence")
    return p.cost - s.total


def lower_bound(s: Sequence) -> int:
    """max(ceil(total size), number of items larger than one half)."""
    D = s.denom
    total = sum(s.items)
    large = sum(1 for x in s.items if 2 * x > D)
    return max(-(-total // D), large)


class Packer:
    """One-pass online packer.

    Subclasses implement :meth:`step`, which places a single item and returns
    the bin that received it.  Every bin ever opened counts toward the cost.
    """

    name = "packer"

    def __init__(self, denom: int):
        if denom < 1:
            raise ValueError("denominator must be positive")
        self.denom = denom
        self.bins: list[Bin] = []
        self.t = 0  # items consumed so far

    def _open(self, x: int, tag: str | None = None) -> Bin:
        b = Bin(len(self.bins), [x], x, BinState.OPEN, tag, self.t)
        self.bins.append(b)
        return b

    def step(self, x: int) -> Bin:
        raise NotImplementedError

    def feed(self, items: Iterable[int]) -> None:
        step = self.step
        for x in items:
            step(x)

    def finish(self) -> Packing:
        return Packing(self.denom, list(self.bins))

    @property
    def cost(self) -> int:
        return len(self.bins)


def run(packer: Packer, s: Sequence) -> Packing:
    if packer.t:
        raise ValueError("run() needs a fresh packer")
    if packer.denom != s.denom:
        raise ValueError(f"packer built for D={packer.denom}, sequence has D={s.denom}")
    packer.feed(s.items)
    return packer.finish()


def parse_sequence(text: str) -> Sequence:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise SequenceFormatError("empty file, expected 'D <denominator>' header", 1)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "D":
        raise SequenceFormatError("expected 'D <denominator>' header", 1)
    try:
        D = int(head[1])
    except ValueError:
        raise SequenceFormatError(f"bad denominator {head[1]!r}", 1) from None
    if D < 1:
        raise SequenceFormatError("denominator must be positive", 1)
    items = []
    for lineno, raw in enumerate(lines[1:], start=2):
        tok = raw.strip()
        try:
            x = int(tok)
        except ValueError:
            raise SequenceFormatError(f"expected an integer numerator, got {tok!r}", lineno) from None
        if not 1 <= x <= D:
            raise SequenceFormatError(f"numerator {x} outside [1, {D}]", lineno)
        items.append(x)
    return Sequence(D, tuple(items))


def format_sequence(s: Sequence) -> str:
    return "".join([f"D {s.denom}\n"] + [f"{x}\n" for x in s.items])


def read_sequence(path: str | Path) -> Sequence:
    return parse_sequence(Path(path).read_text(encoding="ascii"))


def write_sequence(path: str | Path, s: Sequence) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_sequence(s))
