"""Physical parameters and spin-orbit quantum-number bookkeeping.

All quantities use natural units (hbar = c = 1) with lengths in fm and
energies, masses and potential strengths in fm^-1.

Classes
-------
Symmetry
    Spin or pseudospin regime of the Dirac equation.
Scheme
    Which centrifugal-term substitution is in force.
ModelParams
    Mass, screening, Hulthen strength and symmetry constant.
QuantumState
    Radial quantum number ``n`` and spin-orbit number ``kappa``.
SchemeConfig
    Scheme plus the shift constant ``d0`` of the improved approximation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError

_LETTERS = "spdfghiklmnoqrtuvwxyz"


class Symmetry(str, Enum):
    """Symmetry limit of the Dirac-Hulthen problem."""

    SPIN = "spin"
    PSEUDOSPIN = "pseudospin"


class Scheme(str, Enum):
    """Centrifugal-term substitution used to solve the radial equation."""

    IMPROVED_R2 = "r2"
    CONVENTIONAL_R2 = "r2-conventional"
    PROPER_R1 = "r1"

    @property
    def is_r2(self) -> bool:
        return self is not Scheme.PROPER_R1


class Branch(str, Enum):
    """Sign of the square root in a two-branch energy formula."""

    PLUS = "+"
    MINUS = "-"


@dataclass(frozen=True)
class ModelParams:
    """Parameters of the Hulthen problem under one symmetry limit.

    Parameters
    ----------
    mass : float
        Fermion mass ``M`` (fm^-1), strictly positive.
    screening : float
        Screening parameter ``delta`` (fm^-1), strictly positive.
    strength : float
        Hulthen strength (fm^-1). It is the amplitude of the difference
        potential for pseudospin and of the sum potential for spin.
    symmetry_constant : float
        ``C_ps`` (pseudospin) or ``C_s`` (spin), in fm^-1.
    symmetry : Symmetry
        Which symmetry limit the parameters describe.
    """

    mass: float
    screening: float
    strength: float
    symmetry_constant: float = 0.0
    symmetry: Symmetry = Symmetry.SPIN

    def __post_init__(self) -> None:
        for name in ("mass", "screening", "strength", "symmetry_constant"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        if self.screening <= 0:
            raise DomainError(f"screening must be positive, got {self.screening}")
        if self.mass <= 0:
            raise DomainError(f"mass must be positive, got {self.mass}")
        object.__setattr__(self, "symmetry", Symmetry(self.symmetry))

    @property
    def delta(self) -> float:
        return self.screening

    @property
    def effective_mass(self) -> float:
        """``M - C_s`` for spin, ``M + C_ps`` for pseudospin."""
        if self.symmetry is Symmetry.SPIN:
            return self.mass - self.symmetry_constant
        return self.mass + self.symmetry_constant

    def replace(self, **changes) -> "ModelParams":
        values = {
            "mass": self.mass,
            "screening": self.screening,
            "strength": self.strength,
            "symmetry_constant": self.symmetry_constant,
            "symmetry": self.symmetry,
        }
        values.update(changes)
        return ModelParams(**values)


@dataclass(frozen=True)
class QuantumState:
    """Radial quantum number and spin-orbit number of a Dirac state.

    Only ``kappa`` is stored; ``l``, ``ltilde`` and ``j`` are derived so that
    the two angular conventions can never disagree.
    """

    n: int
    kappa: int

    def __post_init__(self) -> None:
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"n must be a nonnegative integer, got {self.n!r}")
        if int(self.kappa) != self.kappa or self.kappa == 0:
            raise DomainError(f"kappa must be a nonzero integer, got {self.kappa!r}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "kappa", int(self.kappa))

    @property
    def l(self) -> int:
        """Orbital angular momentum of the upper component."""
        return self.kappa if self.kappa > 0 else -(self.kappa + 1)

    @property
    def ltilde(self) -> int:
        """Pseudo-orbital angular momentum (orbital number of the lower component)."""
        return self.kappa - 1 if self.kappa > 0 else -self.kappa

    @property
    def j(self) -> float:
        return abs(self.kappa) - 0.5


@dataclass(frozen=True)
class SchemeConfig:
    """Centrifugal substitution and its shift constant.

    ``d0`` only matters for the improved r^-2 scheme; the conventional
    scheme always uses ``d0 = 0``.
    """

    scheme: Scheme = Scheme.IMPROVED_R2
    d0: float = field(default=1.0 / 12.0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if self.scheme is Scheme.CONVENTIONAL_R2:
            object.__setattr__(self, "d0", 0.0)
        if not math.isfinite(self.d0):
            raise DomainError("d0 must be finite")

    @classmethod
    def improved(cls, d0: float = 1.0 / 12.0) -> "SchemeConfig":
        return cls(Scheme.IMPROVED_R2, d0)

    @classmethod
    def conventional(cls) -> "SchemeConfig":
        return cls(Scheme.CONVENTIONAL_R2, 0.0)

    @classmethod
    def proper(cls) -> "SchemeConfig":
        return cls(Scheme.PROPER_R1, 0.0)


def derive_orbital(state: QuantumState, symmetry: Symmetry) -> int:
    """Return ``l`` for spin symmetry and ``ltilde`` for pseudospin symmetry."""
    return state.l if Symmetry(symmetry) is Symmetry.SPIN else state.ltilde


def orbital_letter(l: int) -> str:
    if l < len(_LETTERS):
        return _LETTERS[l]
    return f"[l={l}]"


def spectroscopic_label(state: QuantumState, symmetry: Symmetry | None = None) -> str:
    """Label such as ``"1s1/2"`` built from ``n``, ``l`` and ``j``.

    The letter always follows the orbital number ``l`` of the upper component,
    so the label is the same for both symmetry limits.
    """
    return f"{state.n}{orbital_letter(state.l)}{2 * abs(state.kappa) - 1}/2"


def doublet_partner(state: QuantumState, symmetry: Symmetry) -> QuantumState | None:
    """Partner state sharing ``ltilde`` (pseudospin) or ``l`` (spin).

    Returns ``None`` when the partner does not exist, e.g. a pseudospin
    ``kappa < 0`` state with ``n = 0`` or a singlet with zero (pseudo-)orbital
    momentum.

    Examples
    --------
    >>> doublet_partner(QuantumState(1, -1), Symmetry.PSEUDOSPIN)
    QuantumState(n=0, kappa=2)
    >>> doublet_partner(QuantumState(0, 1), Symmetry.SPIN)
    QuantumState(n=0, kappa=-2)
    """
    kappa = state.kappa
    if Symmetry(symmetry) is Symmetry.SPIN:
        partner = -kappa - 1
        return None if partner == 0 else QuantumState(state.n, partner)
    partner = 1 - kappa
    if partner == 0:
        return None
    n = state.n - 1 if kappa < 0 else state.n + 1
    return None if n < 0 else QuantumState(n, partner)
