"""Exact volume density asymptotics of Riemannian and harmonic spaces."""

from .errors import GeodenseError
from .models import SpaceModel, catalog, theta_expand
from .spectral import EigenProfile, eigen_interval, partial_sum_check
from .traces import TracePoly, enumerate_basis, harmonic_reduce
from .universal import solve_universal_constants

__all__ = [
    "EigenProfile",
    "GeodenseError",
    "SpaceModel",
    "TracePoly",
    "catalog",
    "eigen_interval",
    "enumerate_basis",
    "harmonic_reduce",
    "partial_sum_check",
    "solve_universal_constants",
    "theta_expand",
]

__version__ = "0.1.0"
