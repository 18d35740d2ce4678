"""Capacity, boundary-limit and Riemann-Hilbert toolkit for the unit disk."""

__version__ = "0.1.0"
