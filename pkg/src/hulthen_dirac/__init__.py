"""Bound states of the Dirac equation with the Hulthen potential under spin and
pseudospin symmetry, with r^-2 and r^-1 treatments of the orbital term."""

__version__ = "0.1.0"

from .errors import (
    DivergentComponentError,
    DomainError,
    HulthenDiracError,
    IntegrationError,
    InvalidStateError,
    NoEigenvalueError,
    NotBoundStateError,
)
from .model import Branch, ModelParams, QuantumState, Scheme, SchemeConfig, Symmetry
from .spectra import Convention, EnergySolution, NonrelVariant, energy, energy_nonrel
from .spinor import SpinorSolution, spinor

__all__ = [
    "Branch",
    "Convention",
    "DivergentComponentError",
    "DomainError",
    "EnergySolution",
    "HulthenDiracError",
    "IntegrationError",
    "InvalidStateError",
    "ModelParams",
    "NoEigenvalueError",
    "NonrelVariant",
    "NotBoundStateError",
    "QuantumState",
    "Scheme",
    "SchemeConfig",
    "SpinorSolution",
    "Symmetry",
    "energy",
    "energy_nonrel",
    "spinor",
]
