"""Substitutes for the singular orbital term of the radial equations.

Two families are provided. The r^-2 family replaces ``1/r**2`` by
``delta**2 * (d0 + 1/(e^{delta r}-1) + 1/(e^{delta r}-1)**2)``, which with
``d0 = 1/12`` is accurate to O(delta**4). The proper r^-1 family replaces
``1/r`` in the first-order system by ``W(r) = delta/(e^{delta r}-1)``, which
turns ``kappa(kappa +- 1)/r**2`` into ``kappa**2 W**2 -+ kappa W'``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .model import Scheme, SchemeConfig, Symmetry

#: Comparator name for the bare ``W**2`` substitute of the orbital term.
W_SQUARED = "w-squared"


def _check(r, delta):
    r = np.asarray(r, dtype=float)
    if delta <= 0:
        raise DomainError(f"screening must be positive, got {delta}")
    if np.any(r <= 0):
        raise DomainError("radius must be strictly positive")
    return r


def _out(value):
    return float(value) if np.ndim(value) == 0 else value


def hulthen_w(r, delta: float):
    """``W(r) = delta / (exp(delta r) - 1)``, evaluated with ``expm1``.

    Examples
    --------
    >>> round(hulthen_w(10.0, 0.1), 7)
    0.0581977
    """
    r = _check(r, delta)
    return _out(delta / np.expm1(delta * r))


def hulthen_w_prime(r, delta: float):
    """Radial derivative ``W'(r) = -(W**2 + delta W)``."""
    r = _check(r, delta)
    w = delta / np.expm1(delta * r)
    return _out(-(w * w + delta * w))


def improved_inv_r2(r, delta: float, d0: float = 1.0 / 12.0):
    """Shifted Greene-Aldrich substitute for ``1/r**2``."""
    r = _check(r, delta)
    x = 1.0 / np.expm1(delta * r)
    return _out(delta * delta * (d0 + x + x * x))


def greene_aldrich_inv_r2(r, delta: float):
    """``delta**2 e^{delta r} / (e^{delta r} - 1)**2``, i.e. ``d0 = 0``."""
    return improved_inv_r2(r, delta, 0.0)


def _orbital_sign(symmetry) -> int:
    return 1 if Symmetry(symmetry) is Symmetry.SPIN else -1


def proper_orbital_term(r, delta: float, kappa: int, sign: str = "+"):
    """Proper r^-1 substitute ``kappa**2 W**2 -+ kappa W'``.

    ``sign="+"`` replaces ``kappa(kappa+1)/r**2`` (spin, upper component) and
    ``sign="-"`` replaces ``kappa(kappa-1)/r**2`` (pseudospin, lower component).
    """
    if sign not in ("+", "-"):
        raise DomainError(f"sign must be '+' or '-', got {sign!r}")
    r = _check(r, delta)
    w = delta / np.expm1(delta * r)
    wp = -(w * w + delta * w)
    s = 1 if sign == "+" else -1
    return _out(kappa * kappa * w * w - s * kappa * wp)


def exact_orbital_term(r, kappa: int, symmetry=Symmetry.SPIN):
    """``kappa(kappa+1)/r**2`` (spin) or ``kappa(kappa-1)/r**2`` (pseudospin)."""
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise DomainError("radius must be strictly positive")
    s = _orbital_sign(symmetry)
    return _out(kappa * (kappa + s) / (r * r))


def orbital_substitute(scheme, r, delta: float, kappa: int, symmetry=Symmetry.SPIN):
    """Value the given scheme substitutes for the exact orbital term.

    ``scheme`` is a :class:`SchemeConfig` or the string ``"w-squared"`` for
    the bare ``kappa(kappa+-1) W**2`` comparator.
    """
    s = _orbital_sign(symmetry)
    factor = kappa * (kappa + s)
    if scheme == W_SQUARED:
        return _out(factor * np.asarray(hulthen_w(r, delta)) ** 2)
    if not isinstance(scheme, SchemeConfig):
        raise DomainError(f"unknown scheme {scheme!r}")
    if scheme.scheme is Scheme.PROPER_R1:
        return proper_orbital_term(r, delta, kappa, "+" if s > 0 else "-")
    return _out(factor * np.asarray(improved_inv_r2(r, delta, scheme.d0)))


@dataclass(frozen=True)
class ApproxProfile:
    """Exact orbital term against a substitute on a radial grid."""

    r: np.ndarray
    exact: np.ndarray
    approximated: np.ndarray

    @property
    def abs_error(self) -> np.ndarray:
        return np.abs(self.approximated - self.exact)

    def rows(self):
        """Iterate ``(r, exact, approximated, abs_error)`` tuples."""
        return zip(
            self.r.tolist(),
            self.exact.tolist(),
            self.approximated.tolist(),
            self.abs_error.tolist(),
        )

    def __len__(self) -> int:
        return len(self.r)


def error_profile(scheme, delta: float, kappa: int, grid, symmetry=Symmetry.SPIN) -> ApproxProfile:
    """Compare the exact orbital term with a scheme's substitute on ``grid``.

    Parameters
    ----------
    scheme : SchemeConfig or str
        Scheme to evaluate, or ``"w-squared"`` for the bare ``W**2`` curve.
    delta : float
        Screening parameter (fm^-1).
    kappa : int
        Spin-orbit number; with ``kappa = 1`` and spin symmetry the exact
        term is ``2/r**2``.
    grid : array_like
        Strictly increasing positive radii (fm).
    symmetry : Symmetry
        Selects ``kappa(kappa+1)`` (spin) or ``kappa(kappa-1)`` (pseudospin).
    """
    r = np.atleast_1d(np.asarray(grid, dtype=float))
    if r.size == 0:
        raise DomainError("grid must not be empty")
    if np.any(np.diff(r) <= 0):
        raise DomainError("grid must be strictly increasing")
    exact = np.atleast_1d(exact_orbital_term(r, kappa, symmetry))
    approximated = np.atleast_1d(orbital_substitute(scheme, r, delta, kappa, symmetry))
    return ApproxProfile(r, exact, approximated)
