"""Pochhammer symbols, terminating Gauss series and Jacobi polynomials.

Every hypergeometric function met in the bound-state solutions has a first
parameter ``-n`` and is therefore a polynomial of degree ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


def pochhammer(x: float, k: int) -> float:
    """Rising factorial ``x (x+1) ... (x+k-1)``; the empty product is 1.

    Examples
    --------
    >>> pochhammer(0.5, 3)
    1.875
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    out = 1.0
    for i in range(k):
        out *= x + i
    return out


def _series(n: int, b: float, c: float) -> list | None:
    coeffs = [1.0]
    for k in range(n):
        if c + k == 0:
            return None
        coeffs.append(coeffs[-1] * (k - n) * (b + k) / ((c + k) * (k + 1)))
    return coeffs


def _compensated(coefficients, x):
    total = np.zeros_like(x)
    comp = np.zeros_like(x)
    power = np.ones_like(x)
    for coeff in coefficients:
        term = coeff * power - comp
        t = total + term
        comp = (t - total) - term
        total = t
        power = power * x
    return total


@dataclass(frozen=True)
class TerminatingHyp:
    """``scale * 2F1(-n, b; c; x)`` as a polynomial in ``x``.

    ``coefficients`` already include ``scale``. For ``x > 1/2`` the value is
    taken from the reflected form

        2F1(-n, b; c; x) = (c-b)_n/(c)_n 2F1(-n, b; b-c-n+1; 1-x)

    whenever that series has no pole, which avoids the cancellation of the
    alternating sum near ``x = 1``.
    """

    n: int
    b: float
    c: float
    coefficients: tuple
    reflected: tuple | None = None

    @classmethod
    def build(cls, n: int, b: float, c: float, scale: float = 1.0) -> "TerminatingHyp":
        if int(n) != n or n < 0:
            raise DomainError(f"n must be a nonnegative integer, got {n!r}")
        n = int(n)
        coeffs = _series(n, b, c)
        if coeffs is None:
            raise DomainError(f"pole in (c)_k: c={c}, n={n}")
        refl = _series(n, b, b - c - n + 1) if n > 0 else None
        if refl is not None:
            factor = scale * pochhammer(c - b, n) / pochhammer(c, n)
            refl = tuple(factor * a for a in refl)
        return cls(n, float(b), float(c), tuple(scale * a for a in coeffs), refl)

    def __call__(self, x):
        """Evaluate with compensated summation of the series terms."""
        x = np.asarray(x, dtype=float)
        total = _compensated(self.coefficients, x)
        if self.reflected is not None:
            far = x > 0.5
            if np.any(far):
                alt = _compensated(self.reflected, 1.0 - x)
                total = np.where(far, alt, total)
        return float(total) if total.ndim == 0 else total

    def horner(self, x):
        """Evaluate the plain power series by Horner's rule."""
        x = np.asarray(x, dtype=float)
        acc = np.zeros_like(x)
        for coeff in reversed(self.coefficients):
            acc = acc * x + coeff
        return float(acc) if acc.ndim == 0 else acc

    def derivative(self) -> "TerminatingHyp":
        """``d/dx 2F1(-n,b;c;x) = (-n b / c) 2F1(-n+1, b+1; c+1; x)``."""
        if self.n == 0:
            return TerminatingHyp(0, self.b + 1, self.c + 1, (0.0,))
        lead = self.coefficients[1]  # equals scale * (-n b / c)
        return TerminatingHyp.build(self.n - 1, self.b + 1, self.c + 1, lead)


def hyp2f1_terminating(n: int, b: float, c: float, x):
    """``2F1(-n, b; c; x)`` summed as a finite series.

    Raises
    ------
    DomainError
        If ``c + k == 0`` for some ``k < n``.
    """
    return TerminatingHyp.build(n, b, c)(x)


def jacobi_p(n: int, a: float, b: float, x):
    """Jacobi polynomial ``P_n^{(a,b)}(x)`` by the three-term recurrence."""
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n!r}")
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if n == 0:
        return float(p_prev) if x.ndim == 0 else p_prev
    p = (a + 1) + (a + b + 2) * (x - 1) / 2
    for k in range(2, int(n) + 1):
        s = 2 * k + a + b
        c1 = 2 * k * (k + a + b) * (s - 2)
        c2 = (s - 1) * (a * a - b * b)
        c3 = (s - 1) * s * (s - 2)
        c4 = 2 * (k + a - 1) * (k + b - 1) * s
        p, p_prev = ((c2 + c3 * x) * p - c4 * p_prev) / c1, p
    return float(p) if x.ndim == 0 else p
