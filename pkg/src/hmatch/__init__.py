"""Online bin packing with Harmonic Match and its refinements."""

from .core import (Bin, BinState, DomainError, Packer, Packing, Sequence, SequenceFormatError,
                   lower_bound, parse_sequence, read_sequence, run, waste, write_sequence)
from .algorithms import ALGORITHMS, make_packer, parse_algorithm

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS", "Bin", "BinState", "DomainError", "Packer", "Packing", "Sequence",
    "SequenceFormatError", "lower_bound", "make_packer", "parse_algorithm", "parse_sequence",
    "read_sequence", "run", "waste", "write_sequence",
]
