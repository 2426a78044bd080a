"""Varying-coefficient linear discriminant analysis."""

__version__ = "0.1.0"
