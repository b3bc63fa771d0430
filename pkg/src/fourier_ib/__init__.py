"""Immersed-boundary Fourier pseudo-spectral solver for confined 2D flows."""

__version__ = "0.1.0"

__all__ = ["__version__"]
