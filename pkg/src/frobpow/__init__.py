"""Invariants of reflection groups fixing a hyperplane, modulo Frobenius powers."""

__version__ = "0.1.0"
