"""Coloured untying invariants of p-coloured knots."""

__version__ = "0.1.0"
