"""Entropies and polarization measurements of two-photon states."""

from twophoton.qlinalg import BACKEND

__version__ = "0.1.0"
__all__ = ["BACKEND", "__version__"]
