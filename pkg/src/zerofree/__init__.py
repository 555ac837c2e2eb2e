"""Explicit zero-free regions from the Beurling-Nyman distance."""

__version__ = "0.1.0"
