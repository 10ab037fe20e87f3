import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hulthen_dirac.approx import (
    W_SQUARED,
    error_profile,
    exact_orbital_term,
    greene_aldrich_inv_r2,
    hulthen_w,
    hulthen_w_prime,
    improved_inv_r2,
    orbital_substitute,
    proper_orbital_term,
)
from hulthen_dirac.errors import DomainError
from hulthen_dirac.model import SchemeConfig, Symmetry

radii = st.floats(1e-3, 200.0)
deltas = st.floats(1e-3, 1.0)


def test_w_examples():
    assert hulthen_w(math.log(2.0), 1.0) == pytest.approx(1.0, rel=1e-15)
    assert hulthen_w(10.0, 0.1) == pytest.approx(0.1 / (math.e - 1.0), rel=1e-14)
    assert hulthen_w(10.0, 0.1) == pytest.approx(0.0581977, abs=5e-8)
    for r in (1e-3, 1e-6, 1e-9):
        assert hulthen_w(r, 0.1) * r == pytest.approx(1.0, abs=0.1 * r)


def test_w_rejects_nonpositive_radius():
    with pytest.raises(DomainError):
        hulthen_w(0.0, 0.1)
    with pytest.raises(DomainError):
        improved_inv_r2(-1.0, 0.1)
    with pytest.raises(DomainError):
        proper_orbital_term(0.0, 0.1, 1)
    with pytest.raises(DomainError):
        hulthen_w(1.0, 0.0)


def test_w_tiny_argument_is_stable():
    # delta r = 1e-12: naive exp(x) - 1 would lose all digits
    assert hulthen_w(1e-10, 1e-2) * 1e-10 == pytest.approx(1.0, rel=1e-11)


def test_w_prime_matches_central_difference():
    r = np.linspace(0.5, 40.0, 200)
    delta, h = 0.15, 1e-5
    fd = (hulthen_w(r + h, delta) - hulthen_w(r - h, delta)) / (2 * h)
    assert np.max(np.abs(fd / hulthen_w_prime(r, delta) - 1)) < 1e-8


def test_improved_inverse_square_examples():
    r, d = 1.0, 0.1
    assert abs(improved_inv_r2(r, d, 1 / 12) - 1.0) <= d**4 / 240 * 1.05
    x = math.exp(d * 2.0)
    assert greene_aldrich_inv_r2(2.0, d) == pytest.approx(d * d * x / (x - 1) ** 2, rel=1e-14)
    # small delta r: value tends to 1/r**2 with O(delta^4 r^2) error
    assert improved_inv_r2(0.3, 1e-3) * 0.09 == pytest.approx(1.0, abs=1e-12)


@given(radii, deltas, st.floats(0.0, 1.0))
def test_shift_is_additive(r, delta, d0):
    diff = improved_inv_r2(r, delta, d0) - improved_inv_r2(r, delta, 0.0)
    assert diff == pytest.approx(delta * delta * d0, rel=1e-9, abs=1e-12 * improved_inv_r2(r, delta, 0.0))


def test_improved_error_is_fourth_order():
    errs = [abs(improved_inv_r2(1.0, d, 1 / 12) - 1.0) for d in (0.2, 0.1, 0.05)]
    assert errs[0] / errs[1] == pytest.approx(16, rel=0.2)
    assert errs[1] / errs[2] == pytest.approx(16, rel=0.2)


@pytest.mark.parametrize("kappa", [1, 2, -3])
@pytest.mark.parametrize("sign", ["+", "-"])
def test_proper_error_is_first_order(kappa, sign):
    exact = kappa * (kappa + (1 if sign == "+" else -1))
    if exact == 0:
        pytest.skip("vanishing orbital product")
    errs = [abs(proper_orbital_term(1.0, d, kappa, sign) - exact) for d in (0.02, 0.01, 0.005)]
    assert errs[0] / errs[1] == pytest.approx(2, rel=0.1)
    assert errs[1] / errs[2] == pytest.approx(2, rel=0.1)


def test_proper_kappa_zero_vanishes():
    assert proper_orbital_term(2.0, 0.1, 0, "+") == 0.0
    assert proper_orbital_term(2.0, 0.1, 0, "-") == 0.0


@given(radii, deltas, st.integers(-8, 8))
def test_proper_identity(r, delta, kappa):
    w = hulthen_w(r, delta)
    for sign, s in (("+", 1), ("-", -1)):
        alt = kappa * (kappa + s) * w * w + s * kappa * delta * w
        assert proper_orbital_term(r, delta, kappa, sign) == pytest.approx(alt, rel=1e-10, abs=1e-300)


def test_proper_limit_small_delta():
    for kappa, sign in ((1, "+"), (3, "-"), (-2, "+")):
        exact = exact_orbital_term(1.5, kappa, Symmetry.SPIN if sign == "+" else Symmetry.PSEUDOSPIN)
        assert proper_orbital_term(1.5, 1e-6, kappa, sign) / exact == pytest.approx(1.0, abs=1e-5)


def test_error_profile():
    grid = np.linspace(0.5, 10, 20)
    imp = error_profile(SchemeConfig(), 0.1, 2, grid)
    conv = error_profile(SchemeConfig.conventional(), 0.1, 2, grid)
    i = int(np.argmin(np.abs(grid - 1.0)))
    one = error_profile(SchemeConfig(), 0.1, 2, [1.0])
    assert len(one) == 1 and len(list(one.rows())) == 1
    assert one.abs_error[0] < error_profile(SchemeConfig.conventional(), 0.1, 2, [1.0]).abs_error[0]
    assert np.all(imp.abs_error[: i + 1] < conv.abs_error[: i + 1])
    ws = error_profile(W_SQUARED, 0.1, 2, grid)
    assert ws.approximated[0] == pytest.approx(6 * hulthen_w(0.5, 0.1) ** 2)
    errs = [error_profile(SchemeConfig.proper(), d, 1, [2.0]).abs_error[0] for d in (0.1, 0.01, 0.001)]
    assert errs[0] > errs[1] > errs[2]
    with pytest.raises(DomainError):
        error_profile(SchemeConfig(), 0.1, 1, [])
    with pytest.raises(DomainError):
        error_profile(SchemeConfig(), 0.1, 1, [2.0, 1.0])


def test_orbital_substitute_dispatch():
    r = 3.0
    assert orbital_substitute(SchemeConfig(), r, 0.1, 2, Symmetry.PSEUDOSPIN) == pytest.approx(2 * improved_inv_r2(r, 0.1))
    assert orbital_substitute(SchemeConfig.proper(), r, 0.1, 2, Symmetry.PSEUDOSPIN) == pytest.approx(
        proper_orbital_term(r, 0.1, 2, "-")
    )
    with pytest.raises(DomainError):
        orbital_substitute("nonsense", r, 0.1, 2)
