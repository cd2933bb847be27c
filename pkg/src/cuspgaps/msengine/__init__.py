"""Modular symbols engine: presentations of the plus quotient for
Gamma_0(N) and integral echelon q-expansion bases of S_k(Gamma_0(N))."""

from .basis import (
    SpaceBasis,
    ambient_hecke_matrix,
    hecke_operator_cuspidal,
    hecke_stability_certificate,
    qexpansion_basis,
)
from .p1 import P1, p1_enumerate, p1_space
from .presentation import MSPresentation, build_presentation, hecke_cosets

__all__ = [
    "P1",
    "MSPresentation",
    "SpaceBasis",
    "ambient_hecke_matrix",
    "build_presentation",
    "hecke_cosets",
    "hecke_operator_cuspidal",
    "hecke_stability_certificate",
    "p1_enumerate",
    "p1_space",
    "qexpansion_basis",
]
