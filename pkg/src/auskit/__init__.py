"""Toolkit for factorization lattices of maps into a fixed module, over small prime fields."""

__version__ = "0.1.0"
