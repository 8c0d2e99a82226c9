"""Constructive reduction of p-coloured knots to a count of torus knots."""

from .moves import SUPPORTED_PRIMES, canonicalize_counts, reduce, smn_to_torus, twist_reduce, unlink_bands
from .presentation import BandPresentation, band_matrix, random_presentation
from .summands import SmnToken, SummandMultiset, TorusToken, torus_tokens
from .tangle import TangleWord, check_confluence, tangle_rewrite, weight
from .trace import ReductionTrace, TraceStep

__all__ = [
    "BandPresentation",
    "ReductionTrace",
    "SUPPORTED_PRIMES",
    "SmnToken",
    "SummandMultiset",
    "TangleWord",
    "TorusToken",
    "TraceStep",
    "band_matrix",
    "canonicalize_counts",
    "check_confluence",
    "random_presentation",
    "reduce",
    "smn_to_torus",
    "tangle_rewrite",
    "torus_tokens",
    "twist_reduce",
    "unlink_bands",
    "weight",
]
