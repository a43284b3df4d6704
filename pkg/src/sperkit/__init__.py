"""Exact computations in the real spectrum of rational polynomial rings."""

__version__ = "0.1.0"
