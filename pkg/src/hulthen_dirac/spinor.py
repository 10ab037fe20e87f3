"""Radial spinor components, normalization and residual diagnostics.

The dominant component (upper for spin, lower for pseudospin) has the form

    e^{-a delta r} (1 - e^{-delta r})**gamma 2F1(-n, n + 2(a + gamma); 1 + 2a; e^{-delta r})

and the other component follows from the first-order coupling, e.g. for spin
``G = (F' + kappa X F) / (M + E - C_s)`` with ``X = 1/r`` for the r^-2
schemes and ``X = W(r)`` for the proper r^-1 scheme. The derivative of the
dominant component is evaluated analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np
from scipy.integrate import simpson

from .approx import hulthen_w
from .errors import DivergentComponentError, DomainError, NotBoundStateError
from .model import ModelParams, QuantumState, Scheme, SchemeConfig, Symmetry
from .oracle import OdeSpec, build_nonrel_ode, build_ode, node_count
from .spectra import (
    Convention,
    NonrelVariant,
    alpha_r1,
    boundary_exponent,
    counting_number,
    decay_constant_r2,
    energy as closed_form_energy,
    nonrel_decay,
    nu_epsilon_r2,
)
from .specfun import TerminatingHyp

#: Relative mismatch tolerated between the decay parameter implied by ``E``
#: and the one required by series termination.
QUANTIZATION_TOL = 1e-6
_MIN_INTERIOR = 32
NORM_TOL = 1e-8
MAX_POINTS = 4_000_000


@dataclass(frozen=True)
class RadialGrid:
    """Uniform radial grid excluding the origin."""

    points: np.ndarray
    step: float

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 1 or pts.size < 3:
            raise DomainError("grid needs at least 3 points")
        if pts[0] <= 0 or np.any(np.diff(pts) <= 0):
            raise DomainError("grid must be positive and strictly increasing")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return self.points.size

    @property
    def is_uniform(self) -> bool:
        d = np.diff(self.points)
        return bool(np.allclose(d, self.step, rtol=1e-9, atol=0))

    @classmethod
    def uniform(cls, r_min: float, r_max: float, step: float) -> "RadialGrid":
        n = max(3, int(math.ceil((r_max - r_min) / step)) + 1)
        pts = r_min + step * np.arange(n)
        return cls(pts, step)


def radial_grid(delta: float, decay: float | None = None, step: float | None = None, r_max: float | None = None) -> RadialGrid:
    """Grid from ``max(1e-4/delta, 1e-3)`` fm far enough out for the tails.

    Parameters
    ----------
    delta : float
        Screening parameter (fm^-1).
    decay : float, optional
        Asymptotic decay rate of the components (fm^-1); extends the grid to
        ``40/decay`` if that is beyond ``28/delta``.
    step : float, optional
        Uniform spacing; defaults to ``min(0.005, r_max/20000)`` fm... but at
        least resolving ``1/decay`` with 400 points.
    r_max : float, optional
        Explicit outer radius.
    """
    if delta <= 0:
        raise DomainError("delta must be positive")
    r_min = max(1e-4 / delta, 1e-3)
    if r_max is None:
        r_max = 28.0 / delta
        if decay is not None and decay > 0:
            r_max = max(r_max, 40.0 / decay)
    if step is None:
        step = 0.005
    return RadialGrid.uniform(r_min, r_max, step)


@dataclass(frozen=True)
class SpinorSolution:
    """Upper and lower radial components on a grid."""

    grid: RadialGrid
    F: np.ndarray
    G: np.ndarray
    energy: float
    norm_constant: float
    quantum: QuantumState
    scheme: SchemeConfig
    symmetry: Symmetry
    convention: Convention = Convention.SIGNED

    @property
    def dominant(self) -> np.ndarray:
        """``F`` for spin symmetry, ``G`` for pseudospin symmetry."""
        return self.F if self.symmetry is Symmetry.SPIN else self.G

    @property
    def nodes(self) -> int:
        return node_count(self.dominant)


@dataclass(frozen=True)
class ResidualReport:
    """Finite-difference residual of an equation, relative to its largest term."""

    max_relative: float
    rms_relative: float
    degenerate: bool = False


# ---------------------------------------------------------------------------
# dominant component


def _decay_parameter(params: ModelParams, state: QuantumState, energy: float, scheme: SchemeConfig, convention) -> tuple[float, int]:
    """Return ``(a, gamma)`` after checking ``energy`` is quantized for ``state``."""
    gamma = boundary_exponent(state, params.symmetry, convention)
    if gamma < 0:
        raise NotBoundStateError(f"exponent {gamma} makes the component singular at the origin")
    big_n = counting_number(state.n, state.kappa, params.symmetry, scheme, convention)
    delta = params.delta
    if scheme.scheme is Scheme.PROPER_R1:
        mu = params.effective_mass
        rad = mu * mu - energy * energy
        if rad <= 0:
            raise NotBoundStateError("|E| >= effective mass: no decaying solution")
        a = math.sqrt(rad) / delta
        a_series = alpha_r1(params, energy, big_n, state.kappa)
    else:
        root = decay_constant_r2(params, state.kappa, energy, scheme.d0)
        if root is None:
            raise NotBoundStateError("decay radicand is not positive")
        a = root / delta
        a_series = nu_epsilon_r2(params, energy, big_n)
    if abs(a - a_series) > QUANTIZATION_TOL * max(1.0, a):
        raise NotBoundStateError(
            f"energy {energy} does not terminate the series for n={state.n}, kappa={state.kappa} "
            f"(decay {a:.6g} vs series {a_series:.6g})"
        )
    return a, gamma


def _dominant(n: int, a: float, gamma: int, delta: float, r: np.ndarray):
    """Dominant component and its radial derivative."""
    s = np.exp(-delta * r)
    one_minus = -np.expm1(-delta * r)
    hyp = TerminatingHyp.build(n, n + 2 * (a + gamma), 1 + 2 * a)
    h = hyp(s)
    dh = hyp.derivative()(s)
    envelope = np.exp(-a * delta * r) * one_minus**gamma
    value = envelope * h
    log_d = -a * delta + gamma * delta * s / one_minus
    deriv = value * log_d - envelope * delta * s * dh
    return value, deriv


def _orbital_x(scheme: SchemeConfig, r: np.ndarray, delta: float) -> np.ndarray:
    if scheme.scheme is Scheme.PROPER_R1:
        return np.asarray(hulthen_w(r, delta))
    return 1.0 / r


def _denominator(params: ModelParams, energy: float) -> float:
    mu = params.effective_mass
    den = energy + mu if params.symmetry is Symmetry.SPIN else mu - energy
    if abs(den) < 1e-12:
        raise DivergentComponentError("energy denominator of the coupled component vanishes")
    return den


def _pair(params, state, energy, grid, scheme, convention):
    r = grid.points if isinstance(grid, RadialGrid) else np.asarray(grid, dtype=float)
    a, gamma = _decay_parameter(params, state, energy, scheme, convention)
    den = _denominator(params, energy)
    dom, ddom = _dominant(state.n, a, gamma, params.delta, r)
    x = _orbital_x(scheme, r, params.delta)
    if params.symmetry is Symmetry.SPIN:
        return dom, (ddom + state.kappa * x * dom) / den
    return (ddom - state.kappa * x * dom) / den, dom


def _require(params: ModelParams, symmetry: Symmetry, scheme: SchemeConfig, r1: bool):
    if params.symmetry is not symmetry:
        raise DomainError(f"parameters describe {params.symmetry.value} symmetry")
    if (scheme.scheme is Scheme.PROPER_R1) != r1:
        raise DomainError(f"scheme {scheme.scheme.value} does not fit this construction")


def lower_pseudospin_r2(params, state, energy, grid, scheme=None, convention=Convention.SIGNED):
    """Lower component ``G`` for pseudospin symmetry with an r^-2 scheme."""
    scheme = scheme or SchemeConfig()
    _require(params, Symmetry.PSEUDOSPIN, scheme, False)
    return _pair(params, state, energy, grid, scheme, convention)[1]


def upper_from_lower_pseudospin_r2(params, state, energy, grid, scheme=None, convention=Convention.SIGNED):
    """Upper component ``F = (G' - kappa G / r) / (M - E + C_ps)``."""
    scheme = scheme or SchemeConfig()
    _require(params, Symmetry.PSEUDOSPIN, scheme, False)
    return _pair(params, state, energy, grid, scheme, convention)[0]


def upper_spin_r2(params, state, energy, grid, scheme=None, convention=Convention.SIGNED):
    """Upper component ``F`` for spin symmetry with an r^-2 scheme."""
    scheme = scheme or SchemeConfig()
    _require(params, Symmetry.SPIN, scheme, False)
    return _pair(params, state, energy, grid, scheme, convention)[0]


def lower_spin_r2(params, state, energy, grid, scheme=None, convention=Convention.SIGNED):
    """Lower component ``G = (F' + kappa F / r) / (M + E - C_s)``."""
    scheme = scheme or SchemeConfig()
    _require(params, Symmetry.SPIN, scheme, False)
    return _pair(params, state, energy, grid, scheme, convention)[1]


def spinor_r1(params, state, energy, grid, convention=Convention.SIGNED):
    """``(F, G)`` for the proper r^-1 scheme, either symmetry.

    The coupled component uses ``W(r)`` in place of ``1/r``, so the pair
    solves the first-order system with that substitution exactly.
    """
    return _pair(params, state, energy, grid, SchemeConfig.proper(), convention)


# ---------------------------------------------------------------------------
# assembled solutions


def _simpson_norm(grid: RadialGrid, F: np.ndarray, G: np.ndarray) -> float:
    return float(simpson(F * F + G * G, x=grid.points))


def normalize(solution: SpinorSolution) -> SpinorSolution:
    """Scale the components so that ``int (F**2 + G**2) dr = 1``.

    Raises
    ------
    DomainError
        If the components vanish, are not finite, or do not decay at the
        outer grid edge.
    """
    F, G = np.asarray(solution.F, float), np.asarray(solution.G, float)
    if not (np.all(np.isfinite(F)) and np.all(np.isfinite(G))):
        raise DomainError("components contain non-finite values")
    peak = max(np.max(np.abs(F)), np.max(np.abs(G)))
    if peak == 0:
        raise DomainError("cannot normalize a zero function")
    if max(abs(F[-1]), abs(G[-1])) > 1e-6 * peak:
        raise DomainError("components do not decay at the outer edge of the grid")
    norm = _simpson_norm(solution.grid, F, G)
    if not norm > 0:
        raise DomainError("non-positive norm")
    scale = 1.0 / math.sqrt(norm)
    return replace(solution, F=F * scale, G=G * scale, norm_constant=solution.norm_constant * scale)


def spinor(
    params: ModelParams,
    state: QuantumState,
    scheme: SchemeConfig | None = None,
    energy: float | None = None,
    grid: RadialGrid | None = None,
    convention=Convention.SIGNED,
) -> SpinorSolution:
    """Normalized bound-state spinor for ``state``.

    The energy defaults to the selected closed-form branch. The grid defaults
    to :func:`radial_grid` sized by the decay rate of the state, and its step
    is halved until the norm integral is stable to ``NORM_TOL``. An explicit
    grid is used as given.
    """
    scheme = scheme or SchemeConfig()
    if energy is None:
        sol = closed_form_energy(params, state, scheme, convention)
        if sol.energy is None:
            raise NotBoundStateError("no real energy for this state")
        energy = sol.energy
    refine = grid is None
    if refine:
        a, _ = _decay_parameter(params, state, energy, scheme, convention)
        grid = radial_grid(params.delta, a * params.delta)
    while True:
        F, G = _pair(params, state, energy, grid, scheme, convention)
        raw = SpinorSolution(grid, F, G, energy, 1.0, state, scheme, params.symmetry, Convention(convention))
        if not refine or len(grid) > MAX_POINTS // 2 or quadrature_change(raw) < NORM_TOL:
            return normalize(raw)
        pts = grid.points
        grid = RadialGrid.uniform(pts[0], pts[-1], grid.step / 2)


def quadrature_change(solution: SpinorSolution) -> float:
    """Relative change of the norm between the grid and every other point."""
    pts = solution.grid.points
    full = _simpson_norm(solution.grid, solution.F, solution.G)
    half = float(simpson(solution.F[::2] ** 2 + solution.G[::2] ** 2, x=pts[::2]))
    return abs(full - half) / abs(full)


# ---------------------------------------------------------------------------
# diagnostics


def _check_uniform(grid: RadialGrid) -> float:
    if len(grid) - 2 < _MIN_INTERIOR:
        raise DomainError(f"grid too coarse: need at least {_MIN_INTERIOR} interior points")
    if not grid.is_uniform:
        raise DomainError("residuals need a uniform grid")
    return grid.step


def _report(residual: np.ndarray, *terms: np.ndarray) -> ResidualReport:
    scale = max(float(np.max(np.abs(t))) for t in terms)
    if scale == 0:
        return ResidualReport(0.0, 0.0, True)
    rel = np.abs(residual) / scale
    return ResidualReport(float(np.max(rel)), float(np.sqrt(np.mean(rel * rel))))


def ode_spec_for(solution: SpinorSolution, params: ModelParams) -> OdeSpec:
    return build_ode(params, solution.quantum, solution.scheme)


def ode_residual(solution: SpinorSolution, params: ModelParams, spec: OdeSpec | None = None) -> ResidualReport:
    """Residual of the dominant component in its second-order equation.

    Uses the second central difference on the interior points, so the
    residual is O(h**2). It is reported relative to ``max|y|``.
    """
    h = _check_uniform(solution.grid)
    spec = spec or ode_spec_for(solution, params)
    y = np.asarray(solution.dominant, float)
    r = solution.grid.points[1:-1]
    d2 = (y[2:] - 2 * y[1:-1] + y[:-2]) / (h * h)
    qy = spec.q(r, solution.energy) * y[1:-1]
    return _report(d2 - qy, y)


def _d1(y: np.ndarray, h: float) -> np.ndarray:
    # fourth-order central first derivative on points 2..-3
    return (y[:-4] - 8 * y[1:-3] + 8 * y[3:-1] - y[4:]) / (12 * h)


def first_order_residual(solution: SpinorSolution, params: ModelParams) -> ResidualReport:
    """Residual of the first-order Dirac system with the constant potential.

    Checks ``(d/dr + kappa X) F = (M + E - Delta) G`` and
    ``(d/dr - kappa X) G = (M - E + Sigma) F`` with ``X = 1/r`` for the r^-2
    schemes and ``X = W(r)`` for the proper scheme. Derivatives use a
    fourth-order central stencil. One of ``Delta``, ``Sigma`` is the
    symmetry constant. In the r^-2 schemes the other is the Hulthen term
    itself; in the proper scheme it is ``2V -+ C`` with ``V`` the Hulthen
    vector potential.
    """
    h = _check_uniform(solution.grid)
    r = solution.grid.points[2:-2]
    F, G = np.asarray(solution.F, float), np.asarray(solution.G, float)
    dF, dG = _d1(F, h), _d1(G, h)
    Fi, Gi = F[2:-2], G[2:-2]
    x = _orbital_x(solution.scheme, r, params.delta)
    kappa, m, e, c = solution.quantum.kappa, params.mass, solution.energy, params.symmetry_constant
    hul = -params.strength / np.expm1(params.delta * r)
    if solution.scheme.scheme is Scheme.PROPER_R1:
        # V = S + C_s or V = -S + C_ps, so the varying sum/difference is 2V -+ C
        varying = 2.0 * hul - c if params.symmetry is Symmetry.SPIN else 2.0 * hul + c
    else:
        varying = hul
    if params.symmetry is Symmetry.SPIN:
        upper = (m + e - c) * Gi
        lower = (m - e + varying) * Fi
    else:
        upper = (m + e - varying) * Gi
        lower = (m - e + c) * Fi
    res1 = dF + kappa * x * Fi - upper
    res2 = dG - kappa * x * Gi - lower
    r1 = _report(res1, dF, kappa * x * Fi, upper)
    r2 = _report(res2, dG, kappa * x * Gi, lower)
    return ResidualReport(
        max(r1.max_relative, r2.max_relative),
        max(r1.rms_relative, r2.rms_relative),
        r1.degenerate and r2.degenerate,
    )


# ---------------------------------------------------------------------------
# nonrelativistic limit


def nonrel_radial(n: int, l: int, mass: float, strength: float, delta: float, variant, grid, reduced: bool = False):
    """Nonrelativistic Hulthen radial function ``R(r) = u(r)/r``.

    ``u = e^{-a delta r} (1 - e^{-delta r})**(l+1) 2F1(-n, n + 2(a + l + 1); 1 + 2a; e^{-delta r})``
    with the decay parameter ``a`` of the chosen variant. Pass
    ``reduced=True`` to get ``u`` instead.

    Raises
    ------
    NotBoundStateError
        If the decay parameter is not positive.
    """
    variant = NonrelVariant(variant)
    a = nonrel_decay(n, l, mass, strength, delta, variant)
    if a <= 0:
        raise NotBoundStateError("no bound state: decay parameter is not positive")
    r = grid.points if isinstance(grid, RadialGrid) else np.asarray(grid, dtype=float)
    u, _ = _dominant(n, a, l + 1, delta, r)
    return u if reduced else u / r


def nonrel_ode_spec(l: int, mass: float, strength: float, delta: float, variant) -> OdeSpec:
    from .oracle import Mode

    variant = NonrelVariant(variant)
    if variant is NonrelVariant.PROPER_R1:
        return build_nonrel_ode(l, mass, strength, delta, Mode.SCHEME_R1)
    d0 = 1.0 / 12.0 if variant is NonrelVariant.IMPROVED_D0 else 0.0
    return build_nonrel_ode(l, mass, strength, delta, Mode.SCHEME_R2, d0)
