import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hulthen_dirac.errors import DomainError, InvalidStateError
from hulthen_dirac.model import Branch, ModelParams, QuantumState, Scheme, SchemeConfig, Symmetry
from hulthen_dirac.spectra import (
    Convention,
    NonrelVariant,
    QuadraticForm,
    counting_number,
    energy,
    energy_nonrel,
    energy_pseudospin_r1,
    energy_pseudospin_r2,
    energy_pseudospin_r2_exact,
    energy_spin_r1,
    energy_spin_r2,
    energy_spin_r2_exact,
    map_spin_to_pseudospin_r1,
    map_spin_to_pseudospin_r2,
    quadratic_pseudospin_r2,
    quadratic_spin_r1,
    quadratic_spin_r2,
    unsquared_check_r1,
)

M, V = 5.0, 3.4


def ps(delta, c=-4.9):
    return ModelParams(M, delta, V, c, Symmetry.PSEUDOSPIN)


def sp(delta, c=4.9):
    return ModelParams(M, delta, V, c, Symmetry.SPIN)


# -- counting numbers ---------------------------------------------------------


def test_counting_number_examples():
    assert counting_number(0, 2, Symmetry.PSEUDOSPIN, SchemeConfig()) == 4
    assert counting_number(0, 1, Symmetry.SPIN, SchemeConfig.proper()) == 2
    assert counting_number(3, -2, Symmetry.SPIN, SchemeConfig()) == 2 * (3 - 1)
    with pytest.raises(InvalidStateError):
        counting_number(1, -1, Symmetry.PSEUDOSPIN, SchemeConfig())


def test_counting_number_conventions():
    # kappa < 0 uses n - l (signed) or n + l + 1 (regular)
    assert counting_number(3, -2, Symmetry.SPIN, SchemeConfig.proper()) == 3 - 1
    assert counting_number(3, -2, Symmetry.SPIN, SchemeConfig.proper(), Convention.REGULAR) == 3 + 1 + 1
    assert counting_number(3, -2, Symmetry.PSEUDOSPIN, SchemeConfig(), Convention.REGULAR) == 2 * (3 + 2 + 1)
    assert counting_number(3, 2, Symmetry.PSEUDOSPIN, SchemeConfig(), Convention.REGULAR) == 2 * (3 + 1 + 1)


# -- quadratic forms -------------------------------------------------------------


def test_stable_roots_small_discriminant_scale():
    # a1**2 >> 4 a2 a0: the small root must not lose digits
    q = QuadraticForm(1.0, 1e8, 1.0)
    hi, lo = q.roots()
    assert lo == pytest.approx(1e-8, rel=1e-14)
    assert hi == pytest.approx(1e8, rel=1e-14)
    assert QuadraticForm(1.0, 0.0, 1.0).roots() is None


def test_pseudospin_quadratic_roots_match_energy():
    p = ps(0.025)
    q = quadratic_pseudospin_r2(p, 0, 2)
    sol = energy_pseudospin_r2(p, 0, 2)
    assert sorted(q.roots()) == pytest.approx(sorted([sol.e_plus, sol.e_minus]), rel=1e-15)
    assert any(abs(r - 0.0972235) < 5e-8 for r in q.roots())


def test_zero_strength_rejected():
    with pytest.raises(DomainError):
        quadratic_pseudospin_r2(ModelParams(M, 0.1, 0.0, -4.9, Symmetry.PSEUDOSPIN), 0, 2)
    with pytest.raises(DomainError):
        quadratic_spin_r2(ModelParams(M, 0.1, 0.0, 4.9, Symmetry.SPIN), 0, 1)


def test_wrong_symmetry_rejected():
    with pytest.raises(DomainError):
        energy_spin_r2(ps(0.1), 0, 1)


# -- published energies (each row maps to the state the stored tables resolved) ---


@pytest.mark.parametrize(
    "fn,params,n,kappa,expected,tol",
    [
        (energy_pseudospin_r2, ps(0.025), 0, 2, 0.0972235, 1e-5),  # (1s1/2, 0d3/2)
        (energy_pseudospin_r2, ps(0.250), 1, 5, -1.2384300, 1e-5),  # (2f7/2, 1h9/2)
        (energy_pseudospin_r2, ps(0.025, 0.0), 1, 2, 4.98403, 1e-4),
        (energy_pseudospin_r2_exact, ps(0.100, 0.0), 1, 3, 4.56885, 1e-4),
        (energy_pseudospin_r2_exact, ps(0.250, 0.0), 2, 5, 0.81097, 1e-4),
        (energy_spin_r2, sp(0.025), 0, 1, -0.0942003, 1e-5),
        (energy_spin_r2, sp(0.250), 1, 4, 2.8076500, 1e-5),
        (energy_spin_r2_exact, sp(0.025, 0.0), 0, 1, -4.98993, 1e-4),
        (energy_spin_r1, sp(0.025), 0, 1, -0.0995915, 1e-5),
        (energy_pseudospin_r1, ps(0.025, 0.0), 1, 2, 4.99611, 1e-4),
        (energy_pseudospin_r1, ps(0.250, 0.0), 2, 5, 3.27673, 1e-4),
    ],
)
def test_published_values(fn, params, n, kappa, expected, tol):
    sol = fn(params, n, kappa)
    assert abs(sol.energy - expected) <= tol


@pytest.mark.parametrize(
    "params,n,kappa,expected",
    [(sp(0.250), 1, 4, 0.4324460), (sp(0.100, 0.0), 1, 3, -4.71859)],
)
def test_published_spin_r1_higher_orbitals(params, n, kappa, expected):
    """Printed r^-1 spin values with l >= 2; see the decisions log for why these disagree."""
    sol = energy_spin_r1(params, n, kappa)
    assert sol.energy is not None
    assert abs(sol.energy - expected) <= 1e-4


def test_printed_spin_r1_value_lies_outside_the_bound_window():
    # the r^-1 spin bound states obey |E| < M - C_s = 0.1, yet 0.4324460 is printed
    p = sp(0.250)
    assert abs(0.4324460) > p.effective_mass
    sol = energy_spin_r1(p, 1, 4)
    assert abs(sol.energy) < p.effective_mass and sol.valid


@pytest.mark.parametrize("delta", [0.025, 0.1, 0.175, 0.25])
@pytest.mark.parametrize("n,kappa", [(0, 2), (1, 3), (2, -4)])
def test_exact_forms_equal_general(delta, n, kappa):
    for general, exact, params in (
        (energy_pseudospin_r2, energy_pseudospin_r2_exact, ps(delta, 0.0)),
        (energy_spin_r2, energy_spin_r2_exact, sp(delta, 0.0)),
    ):
        try:
            a = general(params, n, kappa, convention=Convention.REGULAR)
        except InvalidStateError:
            continue
        b = exact(params, n, kappa, convention=Convention.REGULAR)
        for br in (Branch.PLUS, Branch.MINUS):
            if a.value(br) is None:
                assert b.value(br) is None
            else:
                assert b.value(br) == pytest.approx(a.value(br), rel=1e-10, abs=1e-10)


def test_exact_form_requires_zero_constant():
    with pytest.raises(DomainError):
        energy_spin_r2_exact(sp(0.1), 0, 1)


# -- properties ------------------------------------------------------------------

floats = st.floats
param_sets = st.tuples(floats(1, 10), floats(0.01, 0.3), floats(0.5, 5), floats(-6, 6))
states = st.tuples(st.integers(0, 4), st.integers(-5, 5).filter(lambda k: k != 0))


@settings(max_examples=300, deadline=None)
@given(param_sets, states, st.sampled_from(list(Symmetry)), st.sampled_from(["r2", "r2-conventional", "r1"]))
def test_root_residual(ps_, state, symmetry, scheme_name):
    m, d, v, c = ps_
    p = ModelParams(m, d, v, c, symmetry)
    scheme = {"r2": SchemeConfig(), "r2-conventional": SchemeConfig.conventional(), "r1": SchemeConfig.proper()}[scheme_name]
    try:
        sol = energy(p, QuantumState(*state), scheme)
    except InvalidStateError:
        return
    for br in (Branch.PLUS, Branch.MINUS):
        e = sol.value(br)
        if e is not None:
            assert sol.quadratic.relative_residual(e) < 1e-9
            if scheme_name == "r1" and sol.is_valid(br):
                lhs, rhs = unsquared_check_r1(p, e, sol.counting_number, state[1])
                assert rhs >= 0 and abs(lhs - rhs) <= 1e-9 * max(1.0, rhs)


def test_no_real_roots_gives_no_selection():
    # a large constant pushes the discriminant negative for the spin r^-2 problem
    rng = np.random.default_rng(3)
    seen = False
    for _ in range(2000):
        p = ModelParams(rng.uniform(1, 10), rng.uniform(0.01, 0.3), rng.uniform(0.5, 5), rng.uniform(-6, 6), Symmetry.SPIN)
        sol = energy_spin_r2(p, 2, 3)
        if sol.quadratic.discriminant < 0:
            assert sol.e_plus is None and sol.e_minus is None and sol.selected is None
            assert not sol.valid
            seen = True
            break
    assert seen


def test_selected_branch_follows_symmetry():
    assert energy_spin_r2(sp(0.1), 0, 1).selected is Branch.PLUS
    assert energy_pseudospin_r2(ps(0.1), 0, 2).selected is Branch.MINUS


def test_degenerate_pairs_are_bit_identical():
    for lt in range(1, 5):
        for n in range(3):
            a = energy_pseudospin_r2(ps(0.1), n, -lt, convention=Convention.REGULAR)
            b = energy_pseudospin_r2(ps(0.1), n, lt + 1, convention=Convention.REGULAR)
            assert a.e_plus == b.e_plus and a.e_minus == b.e_minus


def test_pseudospin_table_trend_is_monotone():
    for n, kappa in ((0, 2), (1, 3), (0, 5)):
        values = [energy_pseudospin_r2(ps(d), n, kappa).energy for d in np.linspace(0.025, 0.25, 10)]
        assert all(b < a for a, b in zip(values, values[1:]))


def test_mass_pole_is_flagged():
    # C_ps = 0 pseudospin root approaching +M for vanishing coupling
    p = ModelParams(5.0, 0.01, 1e-6, 0.0, Symmetry.PSEUDOSPIN)
    sol = energy_pseudospin_r2(p, 0, 2)
    near = [e for e in (sol.e_plus, sol.e_minus) if e is not None and abs(abs(e) - 5.0) < 1e-9]
    assert (len(near) > 0) == (len(sol.flags) > 0)


@settings(max_examples=100, deadline=None)
@given(param_sets, st.integers(0, 4), st.integers(-5, 5).filter(lambda k: k not in (0, -1)))
def test_map_r2_coefficients(ps_, n, kappa):
    m, d, v, c = ps_
    p = ModelParams(m, d, v, c, Symmetry.SPIN)
    try:
        q_spin = quadratic_spin_r2(p, n, kappa)
    except InvalidStateError:
        return
    mp, ms = map_spin_to_pseudospin_r2(p, QuantumState(n, kappa))
    q_ps = quadratic_pseudospin_r2(mp, ms.n, ms.kappa)
    img = q_spin.negate_energy()
    for a, b in ((img.a2, q_ps.a2), (img.a1, q_ps.a1), (img.a0, q_ps.a0)):
        assert a == pytest.approx(b, rel=1e-10, abs=1e-10 * max(abs(q_ps.a2), abs(q_ps.a1), abs(q_ps.a0)))


@settings(max_examples=100, deadline=None)
@given(param_sets, st.integers(0, 4), st.integers(-5, 5).filter(lambda k: k != 0))
def test_map_r1_energies(ps_, n, kappa):
    m, d, v, c = ps_
    p = ModelParams(m, d, v, c, Symmetry.SPIN)
    a = energy_spin_r1(p, n, kappa, Convention.REGULAR)
    mp, ms = map_spin_to_pseudospin_r1(p, QuantumState(n, kappa))
    b = energy_pseudospin_r1(mp, ms.n, ms.kappa, Convention.REGULAR)
    assert a.counting_number == b.counting_number
    for x, y in ((a.e_plus, b.e_minus), (a.e_minus, b.e_plus)):
        if x is None:
            assert y is None
        else:
            assert -x == pytest.approx(y, rel=1e-10, abs=1e-12)


def test_r1_quadratic_is_exact_for_accepted_roots():
    sol = energy_spin_r1(sp(0.1), 0, 1)
    q = quadratic_spin_r1(sp(0.1), 0, 1)
    assert q.relative_residual(sol.energy) < 1e-12


# -- nonrelativistic ------------------------------------------------------------


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("m,v0,d", [(1.0, 1.0, 0.1), (2.0, 0.3, 0.05)])
def test_nonrel_s_wave_agrees(n, m, v0, d):
    ref = -(d * d / (2 * m)) * (m * v0 / d**2 / (n + 1) - (n + 1) / 2) ** 2
    for variant in NonrelVariant:
        assert energy_nonrel(n, 0, m, v0, d, variant) == pytest.approx(ref, rel=1e-13)


@given(st.integers(0, 6), st.integers(0, 6), floats(0.5, 3), floats(0.1, 3), floats(0.01, 0.3))
def test_nonrel_shift(n, l, m, v0, d):
    trad = energy_nonrel(n, l, m, v0, d, "traditional")
    diff = energy_nonrel(n, l, m, v0, d, "improved") - trad
    # exact up to the rounding of the two energies
    assert abs(diff - d * d * l * (l + 1) / (24 * m)) <= 4 * math.ulp(abs(trad) + 1e-300) + 1e-18


def test_nonrel_domain():
    with pytest.raises(DomainError):
        energy_nonrel(-1, 0, 1, 1, 0.1)
    with pytest.raises(DomainError):
        energy_nonrel(0, 0, 0.0, 1, 0.1)
