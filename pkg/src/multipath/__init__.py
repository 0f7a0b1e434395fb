"""Exact multipath cohomology of directed graphs."""
__version__ = "0.1.0"
