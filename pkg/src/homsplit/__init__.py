"""Computational checks for the stable splitting of spaces of commuting tuples."""

__version__ = "0.1.0"
