"""Exact rational polytope computations: vertices, triangulations, volumes."""

__version__ = "0.1.0"
