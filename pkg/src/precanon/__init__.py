"""Pre-canonical bases of spherical Hecke algebras of simply-laced type."""

from .qpoly import ONE, Q, ZERO, QPoly
from .rootsys import RootSystem, RootSystemError, cartan_matrix
from .weyl import WeylGroup, dominant_rep
from .kostka import Kostka
from .spherical import CANON, STD, Basis, SphElement, SphericalHecke

__all__ = [
    "QPoly", "ZERO", "ONE", "Q",
    "RootSystem", "RootSystemError", "cartan_matrix",
    "WeylGroup", "dominant_rep", "Kostka",
    "Basis", "STD", "CANON", "SphElement", "SphericalHecke",
]
