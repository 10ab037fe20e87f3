"""Nikiforov-Uvarov constants for the four Dirac-Hulthen instances.

Every instance reduces to

    psi'' + (1 - s)/(s (1 - s)) psi' + (-xi1 s**2 + xi2 s - xi3)/(s (1 - s))**2 psi = 0

with ``s = exp(-delta r)``. The constants ``c1 .. c16`` below are the
parametric ones for that form; ``c13`` is the decay exponent, ``c14`` the
exponent of ``(1 - s)`` and the quantization condition is
``lambda = lambda_n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .model import ModelParams, Scheme, SchemeConfig, Symmetry
from .spectra import beta_squared_r1


@dataclass(frozen=True)
class NUInstance:
    """Parametric NU constants of one instance.

    ``c15`` and ``c16`` are kept for completeness; no formula here uses them.
    """

    symmetry: Symmetry
    scheme: Scheme
    kappa: int
    xi1: float
    xi2: float
    xi3: float
    c10: float
    c11: float
    c12: float
    c13: float
    c14: float
    c15: float
    c16: float
    c1: float = 1.0
    c2: float = 1.0
    c3: float = 1.0
    c4: float = 1.0
    c5: float = 0.0
    c6: float = -0.5

    @property
    def c7(self) -> float:
        return 0.25 + self.xi1

    @property
    def c8(self) -> float:
        return -self.xi2

    @property
    def c9(self) -> float:
        return self.xi3


def build_instance(
    symmetry: Symmetry,
    scheme: Scheme | SchemeConfig,
    alpha_sq: float,
    beta_sq: float,
    kappa: int,
    d0: float | None = None,
) -> NUInstance:
    """NU constants from the energy-dependent parameters.

    Parameters
    ----------
    symmetry, scheme
        Which of the four instances.
    alpha_sq : float
        ``(mu**2 - E**2)/delta**2``; for the r^-2 schemes this is the
        squared asymptotic parameter before the ``d0`` shift.
    beta_sq : float
        Potential coupling: ``2(E + M_s)V0/delta**2`` (spin, r^-1),
        ``2(E - M_ps)V0/delta**2`` (pseudospin, r^-1),
        ``(M + E - C_s)Sigma0/delta**2`` (spin, r^-2) or
        ``(M - E + C_ps)Delta0/delta**2`` (pseudospin, r^-2).
    kappa : int
        Spin-orbit number.
    d0 : float, optional
        Shift constant for the r^-2 schemes (default from ``scheme`` or 1/12).
    """
    if isinstance(scheme, SchemeConfig):
        d0 = scheme.d0 if d0 is None else d0
        scheme = scheme.scheme
    symmetry, scheme = Symmetry(symmetry), Scheme(scheme)
    spin = symmetry is Symmetry.SPIN
    sign = 1 if spin else -1
    if scheme is Scheme.PROPER_R1:
        xi1 = alpha_sq + beta_sq + kappa * kappa
        xi2 = 2 * alpha_sq + beta_sq - sign * kappa
        xi3 = alpha_sq
    else:
        if d0 is None:
            d0 = 0.0 if scheme is Scheme.CONVENTIONAL_R2 else 1.0 / 12.0
        k = kappa * (kappa + sign)
        if spin:
            xi1 = alpha_sq + beta_sq + k * d0
            xi2 = 2 * alpha_sq + beta_sq + k * (2 * d0 - 1)
        else:
            xi1 = alpha_sq - beta_sq + k * d0
            xi2 = 2 * alpha_sq - beta_sq + k * (2 * d0 - 1)
        xi3 = alpha_sq + k * d0
    if xi3 < 0:
        raise DomainError("xi3 < 0: no real decay exponent")
    root = math.sqrt(xi3)
    two_k = 2 * kappa + sign
    exponent = kappa + 1 if spin else kappa
    return NUInstance(
        symmetry,
        scheme,
        kappa,
        xi1,
        xi2,
        xi3,
        c10=two_k * two_k / 4.0,
        c11=2 * root,
        c12=two_k,
        c13=root,
        c14=exponent,
        c15=two_k,
        c16=exponent,
    )


def lambda_n(instance: NUInstance, n: int) -> float:
    """``n**2 + 2 n (c13 + c14)``."""
    return n * n + 2 * n * (instance.c13 + instance.c14)


def lambda_value(instance: NUInstance) -> float:
    """``lambda = (xi1 - xi3) - c14 (2 c13 + c14)``."""
    return instance.xi1 - instance.xi3 - instance.c14 * (2 * instance.c13 + instance.c14)


def eigenvalue_condition(instance: NUInstance, n: int) -> float:
    """Residual ``lambda - lambda_n``; zero exactly at a quantized energy.

    Examples
    --------
    >>> inst = build_instance(Symmetry.SPIN, Scheme.PROPER_R1, 0.25, 1.0, 1)
    >>> round(eigenvalue_condition(inst, 0), 12)
    0.0
    """
    if n < 0:
        raise DomainError("n must be nonnegative")
    return lambda_value(instance) - lambda_n(instance, n)


def instance_at_energy(params: ModelParams, kappa: int, energy: float, scheme: SchemeConfig) -> NUInstance:
    """Build the instance whose parameters follow from a trial energy."""
    m, c, d, v0 = params.mass, params.symmetry_constant, params.delta, params.strength
    spin = params.symmetry is Symmetry.SPIN
    if scheme.scheme is Scheme.PROPER_R1:
        mu = params.effective_mass
        return build_instance(
            params.symmetry, scheme, (mu * mu - energy * energy) / d**2, beta_squared_r1(params, energy), kappa
        )
    if spin:
        alpha_sq = (m * m - energy * energy - c * (m - energy)) / d**2
        beta_sq = (m + energy - c) * v0 / d**2
    else:
        alpha_sq = (m * m - energy * energy + c * (m + energy)) / d**2
        beta_sq = (m - energy + c) * v0 / d**2
    return build_instance(params.symmetry, scheme, alpha_sq, beta_sq, kappa, scheme.d0)
