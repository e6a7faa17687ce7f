"""Exact computations around the cohomology of Hilbert schemes of points on surfaces."""

__version__ = "0.1.0"
