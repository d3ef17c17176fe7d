"""Antipodes of incidence Hopf algebras of intervals, by chains and by forests."""

__version__ = "0.1.0"
