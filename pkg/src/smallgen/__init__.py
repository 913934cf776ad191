"""Exact computation of small generators of number fields and related bounds."""

__version__ = "0.1.0"
