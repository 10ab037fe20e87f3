"""Closed-form bound-state energies of the Dirac-Hulthen problem.

Each formula comes from a quadratic in the energy. Both roots are returned,
together with a validity flag per root that checks the unsquared form of the
quantization condition (a root of the squared equation is only a bound state
if the decay constant it implies is positive).

The counting number ``N`` depends on the exponent ``gamma`` of the regular
factor ``(1 - e^{-delta r})**gamma`` in the dominant component. The
``SIGNED`` convention ties ``gamma`` to the signed ``kappa`` (``kappa + 1``
for spin, ``kappa`` for pseudospin) for both signs of ``kappa``; the
``REGULAR`` convention always uses ``l + 1`` or ``ltilde + 1``. The two agree
for ``kappa > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError, InvalidStateError
from .model import Branch, ModelParams, QuantumState, Scheme, SchemeConfig, Symmetry

#: Tolerance of the unsquared-equation check for proper r^-1 roots.
UNSQUARED_TOL = 1e-9
#: Distance from +-M below which a root is flagged.
MASS_POLE_TOL = 1e-9


class Convention(str, Enum):
    """How the counting number treats ``kappa < 0``."""

    SIGNED = "signed"
    REGULAR = "regular"


class NonrelVariant(str, Enum):
    """Orbital-term treatment in the nonrelativistic limit."""

    IMPROVED_D0 = "improved"
    TRADITIONAL = "traditional"
    PROPER_R1 = "proper"


@dataclass(frozen=True)
class QuadraticForm:
    """Energy quadratic ``a2 E**2 - a1 E + a0 = 0``."""

    a2: float
    a1: float
    a0: float

    @property
    def discriminant(self) -> float:
        return self.a1 * self.a1 - 4.0 * self.a2 * self.a0

    def roots(self) -> tuple[float, float] | None:
        """Return ``(E_plus, E_minus)`` with ``E_plus >= E_minus``, or ``None``
        when the roots are complex.

        The larger-magnitude root is computed first and the other one from
        the product of the roots, which avoids cancellation when
        ``a1**2 >> 4 a2 a0``.
        """
        disc = self.discriminant
        if disc < 0 or not math.isfinite(disc):
            return None
        sq = math.sqrt(disc)
        q = 0.5 * (self.a1 + math.copysign(sq, self.a1))
        if q == 0.0:
            return 0.0, 0.0
        r1 = q / self.a2
        r2 = self.a0 / q
        return (r1, r2) if r1 >= r2 else (r2, r1)

    def residual(self, energy: float) -> float:
        return self.a2 * energy * energy - self.a1 * energy + self.a0

    def relative_residual(self, energy: float) -> float:
        """Residual scaled by the largest term of the quadratic."""
        scale = max(
            1.0,
            abs(self.a2 * energy * energy),
            abs(self.a1 * energy),
            abs(self.a0),
        )
        return abs(self.residual(energy)) / scale

    def negate_energy(self) -> "QuadraticForm":
        """Same quadratic written in ``-E``."""
        return QuadraticForm(self.a2, -self.a1, self.a0)


@dataclass(frozen=True)
class EnergySolution:
    """Both roots of an energy quadratic and which one is physical.

    ``e_plus``/``e_minus`` are ``None`` when not real. ``selected`` is the
    branch the symmetry rule picks (minus for pseudospin, plus for spin)
    whenever that root is real; whether it is a genuine bound state is
    reported separately in ``valid_plus``/``valid_minus``.
    """

    e_plus: float | None
    e_minus: float | None
    selected: Branch | None
    counting_number: int
    valid_plus: bool
    valid_minus: bool
    symmetry: Symmetry
    scheme: Scheme
    state: QuantumState
    convention: Convention = Convention.SIGNED
    quadratic: QuadraticForm | None = None
    flags: tuple = field(default=())

    def value(self, branch: Branch) -> float | None:
        return self.e_plus if Branch(branch) is Branch.PLUS else self.e_minus

    def is_valid(self, branch: Branch) -> bool:
        return self.valid_plus if Branch(branch) is Branch.PLUS else self.valid_minus

    @property
    def energy(self) -> float | None:
        """Energy of the selected branch, or ``None``."""
        return None if self.selected is None else self.value(self.selected)

    @property
    def valid(self) -> bool:
        return self.selected is not None and self.is_valid(self.selected)


def physical_branch(symmetry: Symmetry) -> Branch:
    """Minus branch for pseudospin, plus branch for spin."""
    return Branch.PLUS if Symmetry(symmetry) is Symmetry.SPIN else Branch.MINUS


def boundary_exponent(state: QuantumState, symmetry: Symmetry, convention=Convention.SIGNED) -> int:
    """Exponent ``gamma`` of ``(1 - e^{-delta r})`` in the dominant component."""
    spin = Symmetry(symmetry) is Symmetry.SPIN
    if Convention(convention) is Convention.REGULAR:
        return (state.l if spin else state.ltilde) + 1
    return state.kappa + 1 if spin else state.kappa


def counting_number(
    n: int,
    kappa: int,
    symmetry: Symmetry,
    scheme: Scheme | SchemeConfig,
    convention=Convention.SIGNED,
) -> int:
    """Counting number ``N`` entering the energy formulas.

    ``2 (n + gamma)`` for the r^-2 schemes and ``n + gamma`` for the proper
    r^-1 scheme.

    Raises
    ------
    InvalidStateError
        If ``N <= 0``, which would make the formulas singular.

    Examples
    --------
    >>> counting_number(0, 2, Symmetry.PSEUDOSPIN, Scheme.IMPROVED_R2)
    4
    >>> counting_number(0, 1, Symmetry.SPIN, Scheme.PROPER_R1)
    2
    """
    if isinstance(scheme, SchemeConfig):
        scheme = scheme.scheme
    state = QuantumState(n, kappa)
    base = n + boundary_exponent(state, symmetry, convention)
    value = base if Scheme(scheme) is Scheme.PROPER_R1 else 2 * base
    if value <= 0:
        raise InvalidStateError(
            f"counting number {value} <= 0 for n={n}, kappa={kappa} ({Symmetry(symmetry).value})"
        )
    return value


def _require(params: ModelParams, symmetry: Symmetry) -> None:
    if params.symmetry is not symmetry:
        raise DomainError(f"parameters describe {params.symmetry.value} symmetry, not {symmetry.value}")


def _orbital_product(kappa: int, symmetry: Symmetry) -> int:
    return kappa * (kappa + 1) if symmetry is Symmetry.SPIN else kappa * (kappa - 1)


# ---------------------------------------------------------------------------
# improved / conventional r^-2 scheme


def quadratic_pseudospin_r2(
    params: ModelParams, n: int, kappa: int, d0: float = 1.0 / 12.0, convention=Convention.SIGNED
) -> QuadraticForm:
    """Energy quadratic for pseudospin symmetry with the r^-2 substitute."""
    _require(params, Symmetry.PSEUDOSPIN)
    if params.strength == 0:
        raise DomainError("strength must be nonzero for the r^-2 energy quadratic")
    m, c, d, v0 = params.mass, params.symmetry_constant, params.delta, params.strength
    big_n = counting_number(n, kappa, Symmetry.PSEUDOSPIN, Scheme.IMPROVED_R2, convention)
    s = (c + m) * v0 / d**2
    u = s / big_n + big_n / 4.0
    a2 = 1.0 + (v0 / (big_n * d)) ** 2
    a1 = c + 2.0 * v0 * u / big_n
    a0 = d * d * (u * u - s * m / v0 - kappa * (kappa - 1) * d0)
    return QuadraticForm(a2, a1, a0)


def quadratic_spin_r2(
    params: ModelParams, n: int, kappa: int, d0: float = 1.0 / 12.0, convention=Convention.SIGNED
) -> QuadraticForm:
    """Energy quadratic for spin symmetry with the r^-2 substitute."""
    _require(params, Symmetry.SPIN)
    if params.strength == 0:
        raise DomainError("strength must be nonzero for the r^-2 energy quadratic")
    m, c, d, v0 = params.mass, params.symmetry_constant, params.delta, params.strength
    big_n = counting_number(n, kappa, Symmetry.SPIN, Scheme.IMPROVED_R2, convention)
    t = (c - m) * v0 / d**2
    w = t / big_n + big_n / 4.0
    a2 = 1.0 + (v0 / (big_n * d)) ** 2
    a1 = c + 2.0 * v0 * w / big_n
    a0 = d * d * (w * w + t * m / v0 - kappa * (kappa + 1) * d0)
    return QuadraticForm(a2, a1, a0)


def decay_constant_r2(params: ModelParams, kappa: int, energy: float, d0: float) -> float | None:
    """``epsilon * delta`` from the asymptotic decay, or ``None`` if not real.

    The radicand is ``M**2 - E**2 + C_ps (M + E) + kappa(kappa-1) delta**2 d0``
    for pseudospin and ``M**2 - E**2 - C_s (M - E) + kappa(kappa+1) delta**2 d0``
    for spin.
    """
    m, c, d = params.mass, params.symmetry_constant, params.delta
    k = _orbital_product(kappa, params.symmetry)
    if params.symmetry is Symmetry.SPIN:
        rad = m * m - energy * energy - c * (m - energy) + k * d * d * d0
    else:
        rad = m * m - energy * energy + c * (m + energy) + k * d * d * d0
    return math.sqrt(rad) if rad > 0 else None


def nu_epsilon_r2(params: ModelParams, energy: float, big_n: int) -> float:
    """Signed ``epsilon`` fixed by termination of the hypergeometric series.

    A root of the squared energy equation is a bound state only if this value
    is positive; it then equals ``decay_constant_r2 / delta``.
    """
    m, c, d, v0 = params.mass, params.symmetry_constant, params.delta, params.strength
    if params.symmetry is Symmetry.SPIN:
        nu_sq = (m + energy - c) * v0 / d**2
        return nu_sq / big_n - big_n / 4.0
    nu_sq = (m - energy + c) * v0 / d**2
    return -nu_sq / big_n - big_n / 4.0


def _valid_r2(params: ModelParams, energy: float | None, big_n: int, d0: float, kappa: int) -> bool:
    if energy is None:
        return False
    if decay_constant_r2(params, kappa, energy, d0) is None:
        return False
    return nu_epsilon_r2(params, energy, big_n) > 0


def _flags(params: ModelParams, *energies) -> tuple:
    out = []
    for e in energies:
        if e is None:
            continue
        if abs(e - params.mass) < MASS_POLE_TOL:
            out.append("root-near-plus-mass")
        if abs(e + params.mass) < MASS_POLE_TOL:
            out.append("root-near-minus-mass")
    return tuple(out)


def _solution(params, state, scheme, convention, quad, big_n, roots, validator) -> EnergySolution:
    symmetry = params.symmetry
    if roots is None:
        return EnergySolution(None, None, None, big_n, False, False, symmetry, scheme, state, convention, quad)
    e_plus, e_minus = roots
    return EnergySolution(
        e_plus,
        e_minus,
        physical_branch(symmetry),
        big_n,
        validator(e_plus),
        validator(e_minus),
        symmetry,
        scheme,
        state,
        convention,
        quad,
        _flags(params, e_plus, e_minus),
    )


def _r2_energy(params, n, kappa, scheme, convention, quad_fn) -> EnergySolution:
    scheme = scheme or SchemeConfig()
    if scheme.scheme is Scheme.PROPER_R1:
        raise DomainError("use the r^-1 energy functions for the proper scheme")
    quad = quad_fn(params, n, kappa, scheme.d0, convention)
    big_n = counting_number(n, kappa, params.symmetry, scheme, convention)
    state = QuantumState(n, kappa)
    return _solution(
        params,
        state,
        scheme.scheme,
        Convention(convention),
        quad,
        big_n,
        quad.roots(),
        lambda e: _valid_r2(params, e, big_n, scheme.d0, kappa),
    )


def energy_pseudospin_r2(
    params: ModelParams, n: int, kappa: int, scheme: SchemeConfig | None = None, convention=Convention.SIGNED
) -> EnergySolution:
    """Pseudospin energies with the improved (or conventional) r^-2 scheme.

    Examples
    --------
    >>> p = ModelParams(5.0, 0.025, 3.4, -4.9, Symmetry.PSEUDOSPIN)
    >>> round(energy_pseudospin_r2(p, 0, 2).energy, 7)
    0.0972235
    """
    return _r2_energy(params, n, kappa, scheme, convention, quadratic_pseudospin_r2)


def energy_spin_r2(
    params: ModelParams, n: int, kappa: int, scheme: SchemeConfig | None = None, convention=Convention.SIGNED
) -> EnergySolution:
    """Spin energies with the improved (or conventional) r^-2 scheme."""
    return _r2_energy(params, n, kappa, scheme, convention, quadratic_spin_r2)


def _exact_roots(mass, a, big_n, delta, k_term, sign):
    """Closed form of the r^-2 roots when the symmetry constant vanishes.

    ``sign = +1`` for pseudospin and ``-1`` for spin; ``a`` is
    ``strength / delta`` and ``k_term`` is ``kappa(kappa-+1) delta**2 d0``.
    """
    n2 = big_n * big_n
    lin = sign * a * mass + n2 * delta / 4.0
    rad = (n2 + a * a) * (mass * mass + k_term) - lin * lin
    if rad < 0:
        return None
    root = big_n * math.sqrt(rad)
    denom = n2 + a * a
    return (a * lin + root) / denom, (a * lin - root) / denom


def _r2_exact(params, n, kappa, scheme, convention, symmetry) -> EnergySolution:
    _require(params, symmetry)
    if params.symmetry_constant != 0:
        raise DomainError("the exact-symmetry formula requires a zero symmetry constant")
    if params.strength == 0:
        raise DomainError("strength must be nonzero")
    scheme = scheme or SchemeConfig()
    big_n = counting_number(n, kappa, symmetry, scheme, convention)
    d = params.delta
    k_term = _orbital_product(kappa, symmetry) * d * d * scheme.d0
    sign = 1.0 if symmetry is Symmetry.PSEUDOSPIN else -1.0
    roots = _exact_roots(params.mass, params.strength / d, big_n, d, k_term, sign)
    return _solution(
        params,
        QuantumState(n, kappa),
        scheme.scheme,
        Convention(convention),
        None,
        big_n,
        roots,
        lambda e: _valid_r2(params, e, big_n, scheme.d0, kappa),
    )


def energy_pseudospin_r2_exact(
    params: ModelParams, n: int, kappa: int, scheme: SchemeConfig | None = None, convention=Convention.SIGNED
) -> EnergySolution:
    """Pseudospin r^-2 energies in closed form for ``C_ps = 0``.

    ``E = [a (a M + N**2 delta/4) +- N sqrt((N**2 + a**2)(M**2 + K)
    - (a M + N**2 delta/4)**2)] / (N**2 + a**2)`` with ``a = Delta0/delta``
    and ``K = kappa(kappa-1) delta**2 d0``.
    """
    return _r2_exact(params, n, kappa, scheme, convention, Symmetry.PSEUDOSPIN)


def energy_spin_r2_exact(
    params: ModelParams, n: int, kappa: int, scheme: SchemeConfig | None = None, convention=Convention.SIGNED
) -> EnergySolution:
    """Spin r^-2 energies in closed form for ``C_s = 0``; same as the
    pseudospin form with ``a M`` replaced by ``-a M`` and ``kappa(kappa+1)``."""
    return _r2_exact(params, n, kappa, scheme, convention, Symmetry.SPIN)


# ---------------------------------------------------------------------------
# proper r^-1 scheme


def _r1_coefficients(params: ModelParams, big_n: int, kappa: int):
    """``(P, Q, W)`` of ``P E**2 - Q E - W = 0`` for the proper r^-1 scheme."""
    d, v0 = params.delta, params.strength
    mu = params.effective_mass
    n2, k2 = big_n * big_n, kappa * kappa
    p = v0 * v0 + d * d * n2
    tail = d**4 / 4.0 * (k2 * (2 * n2 - k2) - n2 * n2)
    if params.symmetry is Symmetry.SPIN:
        q = v0 * (d * d * (n2 - k2) - 2.0 * v0 * mu)
        w = mu * (mu * p + q) + tail
    else:
        q = v0 * (d * d * (n2 - k2) + 2.0 * v0 * mu)
        w = mu * (mu * p - q) + tail
    return p, q, w


def quadratic_spin_r1(params: ModelParams, n: int, kappa: int, convention=Convention.SIGNED) -> QuadraticForm:
    """Energy quadratic ``P E**2 - Q E - W = 0`` (spin, proper r^-1)."""
    _require(params, Symmetry.SPIN)
    big_n = counting_number(n, kappa, Symmetry.SPIN, Scheme.PROPER_R1, convention)
    p, q, w = _r1_coefficients(params, big_n, kappa)
    return QuadraticForm(p, q, -w)


def quadratic_pseudospin_r1(params: ModelParams, n: int, kappa: int, convention=Convention.SIGNED) -> QuadraticForm:
    """Energy quadratic ``P E**2 - Q E - W = 0`` (pseudospin, proper r^-1)."""
    _require(params, Symmetry.PSEUDOSPIN)
    big_n = counting_number(n, kappa, Symmetry.PSEUDOSPIN, Scheme.PROPER_R1, convention)
    p, q, w = _r1_coefficients(params, big_n, kappa)
    return QuadraticForm(p, q, -w)


def beta_squared_r1(params: ModelParams, energy: float) -> float:
    """``2 (E + M_s) V0 / delta**2`` (spin) or ``2 (E - M_ps) V0 / delta**2``."""
    mu = params.effective_mass
    shift = energy + mu if params.symmetry is Symmetry.SPIN else energy - mu
    return 2.0 * shift * params.strength / params.delta**2


def alpha_r1(params: ModelParams, energy: float, big_n: int, kappa: int) -> float:
    """Signed ``alpha`` from series termination: ``(beta**2 + kappa**2)/(2N) - N/2``."""
    return (beta_squared_r1(params, energy) + kappa * kappa) / (2.0 * big_n) - big_n / 2.0


def unsquared_check_r1(params: ModelParams, energy: float, big_n: int, kappa: int) -> tuple[float, float]:
    """Return ``(lhs, rhs)`` of the unsquared r^-1 quantization condition.

    ``lhs = sqrt(mu**2 - E**2)`` (``nan`` if ``|E| > mu``) and
    ``rhs = delta * alpha``.
    """
    mu = params.effective_mass
    rad = mu * mu - energy * energy
    lhs = math.sqrt(rad) if rad >= 0 else math.nan
    return lhs, params.delta * alpha_r1(params, energy, big_n, kappa)


def _valid_r1(params: ModelParams, energy: float | None, big_n: int, kappa: int) -> bool:
    if energy is None:
        return False
    mu = params.effective_mass
    if not abs(energy) < mu:
        return False
    if beta_squared_r1(params, energy) < 0:
        return False
    lhs, rhs = unsquared_check_r1(params, energy, big_n, kappa)
    if rhs <= 0:
        return False
    return abs(lhs - rhs) <= UNSQUARED_TOL * max(1.0, abs(rhs))


def _r1_energy(params, n, kappa, convention, symmetry) -> EnergySolution:
    _require(params, symmetry)
    quad_fn = quadratic_spin_r1 if symmetry is Symmetry.SPIN else quadratic_pseudospin_r1
    quad = quad_fn(params, n, kappa, convention)
    big_n = counting_number(n, kappa, symmetry, Scheme.PROPER_R1, convention)
    return _solution(
        params,
        QuantumState(n, kappa),
        Scheme.PROPER_R1,
        Convention(convention),
        quad,
        big_n,
        quad.roots(),
        lambda e: _valid_r1(params, e, big_n, kappa),
    )


def energy_spin_r1(params: ModelParams, n: int, kappa: int, convention=Convention.SIGNED) -> EnergySolution:
    """Spin energies with the proper r^-1 scheme.

    Examples
    --------
    >>> p = ModelParams(5.0, 0.025, 3.4, 4.9, Symmetry.SPIN)
    >>> round(energy_spin_r1(p, 0, 1).energy, 7)
    -0.0995915
    """
    return _r1_energy(params, n, kappa, convention, Symmetry.SPIN)


def energy_pseudospin_r1(params: ModelParams, n: int, kappa: int, convention=Convention.SIGNED) -> EnergySolution:
    """Pseudospin energies with the proper r^-1 scheme."""
    return _r1_energy(params, n, kappa, convention, Symmetry.PSEUDOSPIN)


def energy(
    params: ModelParams, state: QuantumState, scheme: SchemeConfig | None = None, convention=Convention.SIGNED
) -> EnergySolution:
    """Dispatch to the energy formula matching ``params.symmetry`` and ``scheme``."""
    scheme = scheme or SchemeConfig()
    spin = params.symmetry is Symmetry.SPIN
    if scheme.scheme is Scheme.PROPER_R1:
        fn = energy_spin_r1 if spin else energy_pseudospin_r1
        return fn(params, state.n, state.kappa, convention)
    fn = energy_spin_r2 if spin else energy_pseudospin_r2
    return fn(params, state.n, state.kappa, scheme, convention)


# ---------------------------------------------------------------------------
# symmetry maps


def map_spin_to_pseudospin_r2(params: ModelParams, state: QuantumState) -> tuple[ModelParams, QuantumState]:
    """Spin r^-2 problem to the pseudospin problem with the same quadratic in ``-E``.

    The strength and symmetry constant change sign and ``kappa`` becomes
    ``kappa + 1``, which keeps both ``kappa(kappa -+ 1)`` and ``N`` fixed. The
    pseudospin minus root is then the negative of the spin plus root.
    """
    _require(params, Symmetry.SPIN)
    if state.kappa == -1:
        raise DomainError("kappa = -1 has no pseudospin image")
    mapped = params.replace(
        strength=-params.strength,
        symmetry_constant=-params.symmetry_constant,
        symmetry=Symmetry.PSEUDOSPIN,
    )
    return mapped, QuantumState(state.n, state.kappa + 1)


def map_spin_to_pseudospin_r1(params: ModelParams, state: QuantumState) -> tuple[ModelParams, QuantumState]:
    """Spin r^-1 problem to its pseudospin image: ``V0 -> -V0``, ``C -> -C``,
    ``kappa -> -kappa``; energies map as ``E -> -E``.

    The counting number is preserved under the ``REGULAR`` convention.
    """
    _require(params, Symmetry.SPIN)
    mapped = params.replace(
        strength=-params.strength,
        symmetry_constant=-params.symmetry_constant,
        symmetry=Symmetry.PSEUDOSPIN,
    )
    return mapped, QuantumState(state.n, -state.kappa)


# ---------------------------------------------------------------------------
# nonrelativistic limit


def energy_nonrel(n: int, l: int, mass: float, strength: float, delta: float, variant=NonrelVariant.IMPROVED_D0) -> float:
    """Nonrelativistic Hulthen energy ``E_nl`` for the three orbital treatments.

    With ``N = n + l + 1``:

    * improved: ``(delta**2/2m) [l(l+1)/12 - (m V0/(delta**2 N) - N/2)**2]``
    * traditional: the same with the ``l(l+1)/12`` shift removed
    * proper: ``-(delta**2/2m) [(m V0/delta**2 + l**2/2)/N - N/2]**2``

    All three coincide at ``l = 0`` with the exact s-wave result.
    """
    if n < 0 or l < 0:
        raise DomainError("n and l must be nonnegative")
    if mass <= 0 or delta <= 0:
        raise DomainError("mass and delta must be positive")
    big_n = n + l + 1
    variant = NonrelVariant(variant)
    pref = delta * delta / (2.0 * mass)
    if variant is NonrelVariant.PROPER_R1:
        a = (mass * strength / delta**2 + l * l / 2.0) / big_n - big_n / 2.0
        return -pref * a * a
    a = mass * strength / (delta**2 * big_n) - big_n / 2.0
    shift = l * (l + 1) / 12.0 if variant is NonrelVariant.IMPROVED_D0 else 0.0
    return pref * (shift - a * a)


def nonrel_decay(n: int, l: int, mass: float, strength: float, delta: float, variant=NonrelVariant.IMPROVED_D0) -> float:
    """Signed decay parameter (in units of ``delta``) of the nonrelativistic state.

    A positive value means a normalizable bound state.
    """
    big_n = n + l + 1
    if NonrelVariant(variant) is NonrelVariant.PROPER_R1:
        return (mass * strength / delta**2 + l * l / 2.0) / big_n - big_n / 2.0
    return mass * strength / (delta**2 * big_n) - big_n / 2.0
