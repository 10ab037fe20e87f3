import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hulthen_dirac.errors import DomainError
from hulthen_dirac.specfun import TerminatingHyp, hyp2f1_terminating, jacobi_p, pochhammer


def test_pochhammer():
    assert pochhammer(3.7, 0) == 1.0
    assert pochhammer(1, 5) == 120
    assert pochhammer(0.5, 3) == pytest.approx(1.875)
    assert pochhammer(-2, 3) == 0.0


def test_hyp_low_orders():
    assert hyp2f1_terminating(0, 2.5, -0.5, 0.7) == 1.0
    assert hyp2f1_terminating(1, 2.5, 1.5, 0.3) == pytest.approx(1 - 2.5 / 1.5 * 0.3)


def test_hyp_pole_raises():
    with pytest.raises(DomainError):
        TerminatingHyp.build(3, 1.0, -1.0)
    # the pole lies beyond the truncation, so this is fine
    assert np.isfinite(hyp2f1_terminating(1, 1.0, -1.0, 0.5))


def test_coefficients():
    hyp = TerminatingHyp.build(4, 2.3, 1.7)
    for k, c in enumerate(hyp.coefficients):
        expected = pochhammer(-4, k) * pochhammer(2.3, k) / (pochhammer(1.7, k) * pochhammer(1, k))
        assert c == pytest.approx(expected, rel=1e-14)


@given(st.integers(0, 12), st.floats(0.1, 30), st.floats(0.2, 20), st.floats(-1, 1))
def test_horner_matches_sum(n, b, c, x):
    hyp = TerminatingHyp.build(n, b, c)
    scale = sum(abs(a) for a in hyp.coefficients)
    assert abs(hyp(x) - hyp.horner(x)) <= 1e-12 * scale


@pytest.mark.parametrize("n", [1, 2, 5, 8])
def test_derivative_identity(n):
    b, c = 3.3, 2.1
    x = np.linspace(0.05, 0.95, 30)
    h = 1e-5
    fd = (hyp2f1_terminating(n, b, c, x + h) - hyp2f1_terminating(n, b, c, x - h)) / (2 * h)
    ident = (-n * b / c) * hyp2f1_terminating(n - 1, b + 1, c + 1, x)
    assert np.allclose(fd, ident, rtol=1e-6, atol=1e-6 * np.max(np.abs(ident)))
    assert np.allclose(TerminatingHyp.build(n, b, c).derivative()(x), ident, rtol=1e-12, atol=1e-12)


def test_jacobi_low_orders():
    assert jacobi_p(0, 0.3, 1.2, 0.4) == 1.0
    a, b, x = 0.7, 2.2, -0.35
    assert jacobi_p(1, a, b, x) == pytest.approx((a + 1) + (a + b + 2) * (x - 1) / 2)
    # Legendre special case
    assert jacobi_p(2, 0.0, 0.0, 0.5) == pytest.approx(0.5 * (3 * 0.25 - 1))


@pytest.mark.parametrize("n", range(0, 11))
def test_jacobi_hypergeometric_correspondence(n):
    a, b = 1.4, 3.0
    s = np.linspace(0.0, 1.0, 41)
    lhs = jacobi_p(n, a, b, 1 - 2 * s)
    rhs = pochhammer(a + 1, n) / pochhammer(1, n) * hyp2f1_terminating(n, n + a + b + 1, a + 1, s)
    assert np.allclose(lhs, rhs, rtol=1e-12, atol=1e-12 * np.max(np.abs(rhs)))


@pytest.mark.parametrize("n", [0, 3, 7, 10])
@pytest.mark.parametrize("a,b", [(1.4, 3.0), (4.5, 0.5), (12.0, 7.25)])
def test_jacobi_against_scipy(n, a, b):
    from scipy.special import eval_jacobi, poch

    x = np.linspace(-1.0, 1.0, 33)
    ref = eval_jacobi(n, a, b, x)
    assert np.allclose(jacobi_p(n, a, b, x), ref, rtol=1e-11, atol=1e-11 * np.max(np.abs(ref)))
    assert pochhammer(a, n) == pytest.approx(poch(a, n), rel=1e-13)
