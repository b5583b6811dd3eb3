"""Exact mod-2 cohomology, Witt ring and trace-form computations for alternating groups."""

__version__ = "0.1.0"
