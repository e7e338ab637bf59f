"""Constants and shipped code tables of the reference installation.

A south wall of 4264 movable slats, three positions each (left, right,
middle), displays compressed text while keeping the average shadow cast
on the workspaces below at a third of the slot width. The numbers here
pin down that instance; the REPORTED_* values were measured on the
original text corpus, which is not distributed with the package.
"""
from __future__ import annotations

from importlib import resources

from .codes import PrefixCode, SymbolAlphabet, load_code
from .pmf import CostVector, Pmf, as_fraction

# geometry: slat positions and the shadow width (in meters) each casts
# into a 0.625 m slot
SLAT_ALPHABET = SymbolAlphabet(("l", "r", "m"))
SLAT_COSTS = CostVector(("0.18", "0.18", "0.31"))
SLOT_WIDTH = 0.625

# display target: all three positions equally often
TARGET = Pmf.uniform(3)

# shadow budget, meters per slot: a third of the slot width
SHADOWING_BUDGET = as_fraction("0.2063")
# the stricter variant used to trade display balance against shadow
STRICT_BUDGET = as_fraction("0.206")

SLAT_COUNT = 4264
BLOCK_LENGTH = 3

TEXT_ALPHABET = SymbolAlphabet(tuple("abcdefghijklmnopqrstuvwxyz") + (" ",))

# measured on the original installation's corpus (not distributed)
REPORTED_EFFECTIVE_FREQS = (0.3838, 0.39457, 0.22162)
REPORTED_EFFECTIVE_COST = 0.20881
REPORTED_STRICT_FREQS = (0.39132, 0.4317, 0.17698)
REPORTED_STRICT_COST = 0.20301
REPORTED_BIT_BALANCE = 0.494


def _load_data(name: str, direction: str) -> PrefixCode:
    path = resources.files(__package__).joinpath("data", name)
    with resources.as_file(path) as p:
        return load_code(p, direction)


def source_code() -> PrefixCode:
    """Huffman code for lowercase text on the installation's corpus."""
    return _load_data("facade_source_code.tsv", "source")


def matcher_code() -> PrefixCode:
    """Cost-constrained matcher over slat triples at the 0.2063 budget."""
    return _load_data("facade_matcher_k3.tsv", "matcher")
