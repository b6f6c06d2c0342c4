"""Exact calculator for a t-deformed boson pair algebra, its partition-basis
representation, symmetric-group idempotents, and the planar diagram calculus
that categorifies it."""

__version__ = "0.1.0"
