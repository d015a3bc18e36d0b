"""Exact ideal arithmetic, star operations and class groups over two computable families:
valuation domains presented by finite-rank value groups, and quadratic orders."""

__version__ = "0.1.0"
