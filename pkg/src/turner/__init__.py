"""Exact computations with Turner doubles and generalized Schur algebras."""

__version__ = "0.1.0"
