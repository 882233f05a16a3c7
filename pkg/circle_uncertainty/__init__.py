"""Uncertainty measures for a quantum particle on a circle."""

__version__ = "0.1.0"
