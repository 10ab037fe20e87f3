"""Shooting-method eigenvalue solver for the radial second-order equations.

Every equation handled here has the form ``y'' = q(r, E) y`` with

    q(r, E) = base(r) + E lin(r) + quad E**2

where ``base`` and ``lin`` do not depend on ``E``. The solver integrates
outward from small ``r`` (seeded with the regular power ``r**(L+1)``) and
inward from a large radius (seeded with a decaying exponential), then finds
energies where the normalized Wronskian of the two pieces vanishes. A fixed
step fourth-order Runge-Kutta scheme is used throughout: logarithmic in ``r``
near the origin, uniform in ``r`` further out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from numba import njit
from scipy.optimize import brentq

from .approx import hulthen_w, hulthen_w_prime, improved_inv_r2
from .errors import DomainError, IntegrationError, NoEigenvalueError
from .model import ModelParams, QuantumState, Scheme, SchemeConfig, Symmetry

_R_START = 1e-4
_LOG_STEP = 0.005
_RESCALE = 1e150
_REFINE_BELOW = 0.5


class Mode(str, Enum):
    """Treatment of the orbital term in the second-order equation."""

    EXACT = "exact"
    SCHEME_R2 = "scheme-r2"
    SCHEME_R1 = "scheme-r1"


class PotentialForm(str, Enum):
    """Which potential coupling the equation carries.

    ``DIRAC`` is the direct reduction of the Dirac system with the Hulthen
    potential in the non-constant combination. ``PROPER`` doubles the
    coupling, ``2 (E +- mu) V``, as in the equations paired with the proper
    r^-1 substitute.
    """

    DIRAC = "dirac"
    PROPER = "proper"


@dataclass(frozen=True)
class OdeSpec:
    """Second-order radial equation ``y'' = (base + E lin + quad E**2) y``.

    Attributes
    ----------
    base, lin : callable
        Vectorized functions of ``r`` (fm).
    quad : float
        Coefficient of ``E**2``.
    inf_base, inf_lin : float
        Limits of ``base`` and ``lin`` as ``r -> inf``.
    orbital_index : float
        ``L`` with ``L (L+1)`` equal to the coefficient of ``r**-2`` at the
        origin; the regular solution starts as ``r**(L+1)``.
    delta : float
        Screening parameter, used to choose step sizes.
    """

    base: object
    lin: object
    quad: float
    inf_base: float
    inf_lin: float
    orbital_index: float
    delta: float
    label: str = ""

    def q(self, r, energy: float):
        r = np.asarray(r, dtype=float)
        return self.base(r) + energy * self.lin(r) + self.quad * energy * energy

    def decay_squared(self, energy: float) -> float:
        """``q(inf, E)``; positive for a bound state."""
        return self.inf_base + energy * self.inf_lin + self.quad * energy * energy


@dataclass(frozen=True)
class ShootResult:
    energy: float
    node_count: int
    match_defect: float
    iterations: int


def _orbital_index(coefficient: float) -> float:
    """Nonnegative ``L`` with ``L (L+1) = coefficient``."""
    return 0.5 * (math.sqrt(1.0 + 4.0 * max(coefficient, 0.0)) - 1.0)


def _hulthen(r, delta):
    return 1.0 / np.expm1(delta * r)


def build_ode(
    params: ModelParams,
    state: QuantumState,
    mode: Mode | SchemeConfig = Mode.EXACT,
    d0: float = 1.0 / 12.0,
    potential: PotentialForm | None = None,
) -> OdeSpec:
    """Second-order equation of the dominant component.

    Spin symmetry yields the equation of the upper component with orbital
    term ``kappa(kappa+1)/r**2``; pseudospin the lower one with
    ``kappa(kappa-1)/r**2``.

    Parameters
    ----------
    params, state
        Physical parameters and quantum numbers.
    mode : Mode or SchemeConfig
        ``EXACT`` keeps the true orbital term, ``SCHEME_R2`` substitutes the
        shifted Greene-Aldrich form with ``d0``, ``SCHEME_R1`` the proper
        ``kappa**2 W**2 -+ kappa W'`` form. A :class:`SchemeConfig` selects the
        matching mode and ``d0``.
    potential : PotentialForm, optional
        Defaults to ``PROPER`` in ``SCHEME_R1`` mode and ``DIRAC`` otherwise.
    """
    if isinstance(mode, SchemeConfig):
        d0 = mode.d0
        mode = Mode.SCHEME_R1 if mode.scheme is Scheme.PROPER_R1 else Mode.SCHEME_R2
    mode = Mode(mode)
    if potential is None:
        potential = PotentialForm.PROPER if mode is Mode.SCHEME_R1 else PotentialForm.DIRAC
    potential = PotentialForm(potential)
    m, c, delta, v0 = params.mass, params.symmetry_constant, params.delta, params.strength
    kappa = state.kappa
    spin = params.symmetry is Symmetry.SPIN
    sign = 1 if spin else -1
    k_orb = kappa * (kappa + sign)

    if mode is Mode.EXACT:
        def orbital(r):
            return k_orb / (r * r)
        index = _orbital_index(k_orb)
    elif mode is Mode.SCHEME_R2:
        def orbital(r):
            return k_orb * improved_inv_r2(r, delta, d0)
        index = _orbital_index(k_orb)
    else:
        def orbital(r):
            w = hulthen_w(r, delta)
            return kappa * kappa * w * w - sign * kappa * hulthen_w_prime(r, delta)
        index = _orbital_index(kappa * kappa + kappa * sign)

    if potential is PotentialForm.PROPER:
        mu = params.effective_mass
        # 2 (E +- mu) V with V = -V0 h(r); constant mu**2 - E**2
        def base(r):
            return orbital(r) - sign * 2.0 * mu * v0 * _hulthen(r, delta) + mu * mu
        def lin(r):
            return -2.0 * v0 * _hulthen(r, delta)
        inf_base, inf_lin = mu * mu, 0.0
    elif spin:
        # (M + E - C) Sigma + M**2 - E**2 - C (M - E), Sigma = -V0 h(r)
        def base(r):
            return orbital(r) - (m - c) * v0 * _hulthen(r, delta) + m * m - c * m
        def lin(r):
            return -v0 * _hulthen(r, delta) + c
        inf_base, inf_lin = m * m - c * m, c
    else:
        # -(M - E + C) Delta + M**2 - E**2 + C (M + E), Delta = -V0 h(r)
        def base(r):
            return orbital(r) + (m + c) * v0 * _hulthen(r, delta) + m * m + c * m
        def lin(r):
            return -v0 * _hulthen(r, delta) + c
        inf_base, inf_lin = m * m + c * m, c

    label = f"{params.symmetry.value}/{mode.value}/{potential.value}"
    return OdeSpec(base, lin, -1.0, inf_base, inf_lin, index, delta, label)


def build_nonrel_ode(l: int, mass: float, strength: float, delta: float, mode: Mode = Mode.SCHEME_R1, d0: float = 1.0 / 12.0) -> OdeSpec:
    """Radial Schrodinger equation ``u'' = [orbital + 2m V - 2m E] u`` with the
    Hulthen potential ``V = -V0/(e^{delta r} - 1)``."""
    mode = Mode(mode)
    if mode is Mode.EXACT:
        def orbital(r):
            return l * (l + 1) / (r * r)
    elif mode is Mode.SCHEME_R2:
        def orbital(r):
            return l * (l + 1) * improved_inv_r2(r, delta, d0)
    else:
        def orbital(r):
            w = hulthen_w(r, delta)
            return l * l * w * w - l * hulthen_w_prime(r, delta)

    def base(r):
        return orbital(r) - 2.0 * mass * strength * _hulthen(r, delta)

    def lin(r):
        return np.full_like(np.asarray(r, dtype=float), -2.0 * mass)

    return OdeSpec(base, lin, 0.0, 0.0, -2.0 * mass, float(l), delta, f"nonrel/{mode.value}")


# ---------------------------------------------------------------------------
# integration kernels


@njit(cache=True)
def _rk4_log(r2base, r2lin, r2sq, energy, quad, du, y, w):
    """Integrate ``y_u = w``, ``w_u = w + r**2 q y`` on a uniform grid in ``u = ln r``.

    Node arrays hold values at half steps (``2 n + 1`` entries).
    """
    e2 = quad * energy * energy
    nodes = 0
    steps = (r2base.shape[0] - 1) // 2
    for i in range(steps):
        g0 = r2base[2 * i] + energy * r2lin[2 * i] + e2 * r2sq[2 * i]
        g1 = r2base[2 * i + 1] + energy * r2lin[2 * i + 1] + e2 * r2sq[2 * i + 1]
        g2 = r2base[2 * i + 2] + energy * r2lin[2 * i + 2] + e2 * r2sq[2 * i + 2]
        k1y = w
        k1w = w + g0 * y
        y2 = y + 0.5 * du * k1y
        w2 = w + 0.5 * du * k1w
        k2y = w2
        k2w = w2 + g1 * y2
        y3 = y + 0.5 * du * k2y
        w3 = w + 0.5 * du * k2w
        k3y = w3
        k3w = w3 + g1 * y3
        y4 = y + du * k3y
        w4 = w + du * k3w
        k4y = w4
        k4w = w4 + g2 * y4
        y_new = y + du / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        w = w + du / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w)
        if y_new * y < 0.0:
            nodes += 1
        y = y_new
        if abs(y) > _RESCALE or abs(w) > _RESCALE:
            y /= _RESCALE
            w /= _RESCALE
    return y, w, nodes


@njit(cache=True)
def _rk4_uniform(base, lin, energy, quad, h, y, p):
    """Integrate ``y'' = q y`` with a fixed step ``h`` (negative for inward)."""
    e2 = quad * energy * energy
    nodes = 0
    steps = (base.shape[0] - 1) // 2
    for i in range(steps):
        q0 = base[2 * i] + energy * lin[2 * i] + e2
        q1 = base[2 * i + 1] + energy * lin[2 * i + 1] + e2
        q2 = base[2 * i + 2] + energy * lin[2 * i + 2] + e2
        k1y = p
        k1p = q0 * y
        k2y = p + 0.5 * h * k1p
        k2p = q1 * (y + 0.5 * h * k1y)
        k3y = p + 0.5 * h * k2p
        k3p = q1 * (y + 0.5 * h * k2y)
        k4y = p + h * k3p
        k4p = q2 * (y + h * k3y)
        y_new = y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        p = p + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p)
        if y_new * y < 0.0:
            nodes += 1
        y = y_new
        if abs(y) > _RESCALE or abs(p) > _RESCALE:
            y /= _RESCALE
            p /= _RESCALE
    return y, p, nodes


class Shooter:
    """Precomputed grids for repeated shooting on one equation.

    Parameters
    ----------
    spec : OdeSpec
        Equation to solve.
    r_match : float
        Matching radius (fm).
    r_max : float
        Outer radius where the decaying seed is imposed.
    step : float, optional
        Uniform step in ``r``; defaults to ``min(0.005/delta, 0.005)``.
    log_step : float
        Step in ``ln r`` for the inner region.
    """

    def __init__(self, spec: OdeSpec, r_match: float, r_max: float, step: float | None = None, log_step: float = _LOG_STEP):
        self.spec = spec
        h = min(0.005 / spec.delta, 0.005) if step is None else step
        self.h = h
        self.log_step = log_step
        r_join = max(min(1.0, r_match), 20 * _R_START)
        u0, u1 = math.log(_R_START), math.log(r_join)
        n_log = max(2, int(math.ceil((u1 - u0) / log_step)))
        self.du = (u1 - u0) / n_log
        u = u0 + 0.5 * self.du * np.arange(2 * n_log + 1)
        r_log = np.exp(u)
        r2 = r_log * r_log
        self.log_base = r2 * spec.base(r_log)
        self.log_lin = r2 * spec.lin(r_log)
        self.log_sq = r2.copy()
        self.r0 = float(r_log[0])

        n_mid = max(0, int(round((r_match - r_join) / h)))
        self.r_match = r_join + n_mid * h
        r_mid = self.r_match if n_mid else r_join
        grid = r_join + 0.5 * h * np.arange(2 * n_mid + 1)
        self.mid_base = spec.base(grid) if n_mid else np.zeros(1)
        self.mid_lin = spec.lin(grid) if n_mid else np.zeros(1)
        self.r_match = r_mid

        n_out = max(2, int(math.ceil((r_max - self.r_match) / h)))
        self.r_max = self.r_match + n_out * h
        grid = self.r_max - 0.5 * h * np.arange(2 * n_out + 1)
        self.out_base = spec.base(grid)
        self.out_lin = spec.lin(grid)

        # first-order Frobenius correction from the r**-1 part of r**2 q near 0
        L = spec.orbital_index
        rr = np.array([_R_START, 2 * _R_START])
        g = rr * rr * spec.base(rr)
        self._L = L
        self._g1_base = (g[1] - g[0]) / (rr[1] - rr[0])
        g = rr * rr * spec.lin(rr)
        self._g1_lin = (g[1] - g[0]) / (rr[1] - rr[0])

    def _seed(self, energy: float):
        L = self._L
        a1 = (self._g1_base + energy * self._g1_lin) / (2.0 * L + 2.0)
        r0 = self.r0
        y = r0 ** (L + 1) * (1.0 + a1 * r0)
        w = r0 ** (L + 1) * ((L + 1) + (L + 2) * a1 * r0)
        return y, w

    def shoot(self, energy: float):
        """Return ``(defect, nodes)`` for a trial energy."""
        spec = self.spec
        y, w = self._seed(energy)
        y, w, n1 = _rk4_log(self.log_base, self.log_lin, self.log_sq, energy, spec.quad, self.du, y, w)
        r_join = self.r0 * math.exp(self.du * ((self.log_base.shape[0] - 1) // 2))
        p = w / r_join
        n2 = 0
        if self.mid_base.shape[0] > 1:
            y, p, n2 = _rk4_uniform(self.mid_base, self.mid_lin, energy, spec.quad, self.h, y, p)
        k2 = spec.decay_squared(energy)
        k = math.sqrt(k2) if k2 > 0 else 0.0
        yi, pi = 1e-200, -k * 1e-200
        yi, pi, n3 = _rk4_uniform(self.out_base, self.out_lin, energy, spec.quad, -self.h, yi, pi)
        if not all(map(math.isfinite, (y, p, yi, pi))):
            raise IntegrationError(f"non-finite values at E={energy}")
        scale = math.sqrt(abs(float(spec.q(self.r_match, energy)))) or 1.0
        norm_o = math.hypot(y, p / scale)
        norm_i = math.hypot(yi, pi / scale)
        defect = (y * pi - p * yi) / (scale * norm_o * norm_i)
        return defect, n1 + n2 + n3


def node_count(values, floor: float = 1e-12) -> int:
    """Count strict sign changes, ignoring entries with ``|v| <= floor * max|v|``."""
    v = np.asarray(values, dtype=float)
    if v.size < 3:
        raise DomainError("need at least 3 points")
    peak = np.max(np.abs(v))
    if peak == 0:
        return 0
    s = np.sign(v[np.abs(v) > floor * peak])
    return int(np.count_nonzero(s[1:] != s[:-1]))


def _match_radius(spec: OdeSpec, energy: float, r_hi: float) -> float:
    r = np.linspace(0.05, r_hi, 4000)
    q = spec.q(r, energy)
    allowed = np.nonzero(q < 0)[0]
    if allowed.size:
        return float(r[allowed[-1]])
    return float(r[np.argmin(q)])


def shoot_eigenvalue(
    spec: OdeSpec,
    target_nodes: int,
    bracket: tuple[float, float],
    tol: float = 1e-8,
    samples: int = 48,
    step: float | None = None,
    decay_lengths: float = 30.0,
    r_cap: float = 20000.0,
    log_step: float = _LOG_STEP,
) -> ShootResult:
    """Eigenvalue with ``target_nodes`` nodes inside ``bracket``.

    The bracket is sampled on a uniform energy grid, refined up to three
    times when no suitable sign change is found but the normalized defect
    dips below 0.5 somewhere (a hint of two close roots); each sign change of the
    normalized matching defect is refined with Brent's method and the root
    whose node count equals ``target_nodes`` is returned.

    Raises
    ------
    NoEigenvalueError
        If no eigenvalue with the requested node count lies in the bracket.
    IntegrationError
        If the integration overflows.
    """
    lo, hi = map(float, bracket)
    if not lo < hi:
        raise DomainError("bracket must satisfy lo < hi")
    energies = np.linspace(lo, hi, samples + 1)
    k2 = np.array([spec.decay_squared(e) for e in energies])
    bound = k2 > 0
    if not bound.any():
        raise NoEigenvalueError("no energy in the bracket lies below the continuum threshold")
    k_min = math.sqrt(k2[bound].min())
    e_mid = 0.5 * (lo + hi)
    r_hint = min(r_cap / 2, 10.0 / spec.delta + 10.0)
    r_match = _match_radius(spec, e_mid, r_hint)
    r_max = min(r_cap, r_match + decay_lengths / k_min)
    shooter = Shooter(spec, r_match, r_max, step, log_step)

    for _ in range(4):
        defects = []
        nodes = []
        for e, ok in zip(energies, bound):
            if ok:
                d, nn = shooter.shoot(e)
            else:
                d, nn = math.nan, -1
            defects.append(d)
            nodes.append(nn)
        calls = [0]

        def f(e):
            calls[0] += 1
            return shooter.shoot(e)[0]

        for i in range(len(energies) - 1):
            a, b = defects[i], defects[i + 1]
            if not (math.isfinite(a) and math.isfinite(b)) or a * b > 0:
                continue
            if min(nodes[i], nodes[i + 1]) > target_nodes or max(nodes[i], nodes[i + 1]) < target_nodes:
                continue
            root, info = brentq(f, energies[i], energies[i + 1], xtol=1e-14, rtol=1e-15, full_output=True)
            defect, nn = shooter.shoot(root)
            if nn == target_nodes and abs(defect) < tol:
                return ShootResult(float(root), nn, abs(defect), info.iterations + calls[0])
        finite = [abs(d) for d in defects if math.isfinite(d)]
        if not finite or min(finite) > _REFINE_BELOW:
            # no dip in the normalized defect: no pair of close roots to resolve
            break
        energies = np.linspace(lo, hi, 2 * (len(energies) - 1) + 1)
        bound = np.array([spec.decay_squared(e) > 0 for e in energies])
    raise NoEigenvalueError(f"no eigenvalue with {target_nodes} nodes in [{lo}, {hi}]")
