import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import gamma, gammaln

from qdisc.calculus import (
    FracDerivParams,
    angular_kernel_mean,
    frac_derivative,
    frac_derivative_integral,
    frac_integrand,
    mg_decomposition,
    op_Ig,
    op_Mg,
    t_sigma_apply,
    t_sigma_carleson_density,
    t_sigma_radial_profile,
    volterra_Tg,
)
from qdisc.density import power_weight
from qdisc.families import random_polynomial
from qdisc.series import TaylorSeries

coeff = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)
polys = st.lists(coeff, min_size=1, max_size=17).map(TaylorSeries)


def nth_derivative(f, n):
    for _ in range(n):
        f = f.derivative()
    return f


def t_sigma_one_series(t, sigma, terms=4000):
    """T_sigma 1 at |w| = t for b = 2: sum_n ((lam)_n / n!)^2 t^(2n) / ((n+1)(n+2)), lam = (2+sigma)/2."""
    lam = (2 + sigma) / 2
    n = np.arange(terms)
    c = np.exp(2 * (gammaln(lam + n) - gammaln(lam) - gammaln(n + 1)))
    return float(np.sum(c * t ** (2 * n) / ((n + 1) * (n + 2))))


def test_params_validation():
    assert FracDerivParams(0.5).m == 0
    assert FracDerivParams(2.5).m == 2
    with pytest.raises(ValueError):
        FracDerivParams(0.0)
    with pytest.raises(ValueError):
        FracDerivParams(1.0, b=1.0)


@pytest.mark.parametrize("nu", [1, 2, 3])
@pytest.mark.parametrize("b", [1.5, 2.0, 3.0])
def test_integer_order_is_ordinary_derivative(nu, b):
    f = random_polynomial(20, seed=nu)
    got = frac_derivative(f, nu, b)
    expect = nth_derivative(f, nu)
    np.testing.assert_allclose(got.coeffs, expect.coeffs, rtol=1e-10)


def test_half_derivative_of_z():
    """For f = z, m = 0 and b = 2 the only coefficient is Gamma(2+nu)/Gamma(3)."""
    got = frac_derivative(TaylorSeries([0, 1]), 0.5, 2.0)
    assert got.coeffs[0] == pytest.approx(gamma(2.5) / 2)


def test_low_degree_is_annihilated():
    assert frac_derivative(TaylorSeries([1, 2]), 1.5).coeffs.tolist() == [0]


@settings(max_examples=40)
@given(polys, st.sampled_from([0.3, 0.45, 0.9, 1.5, 2.2]), st.sampled_from([1.5, 2.0, 3.0]))
def test_ladder_identity(f, nu, b):
    lhs = frac_derivative(f, nu, b).derivative()
    rhs = frac_derivative(f, nu + 1, b)
    scale = max(1.0, float(np.max(np.abs(rhs.coeffs))))
    assert lhs.allclose(rhs, atol=1e-10 * scale)


@settings(max_examples=20)
@given(polys, st.floats(0.1, 3.0), coeff)
def test_frac_derivative_is_linear(f, nu, c):
    a = frac_derivative(c * f, nu)
    b = c * frac_derivative(f, nu)
    assert a.allclose(b, atol=1e-9 * max(1.0, float(np.max(np.abs(b.coeffs)))))


@pytest.mark.parametrize("nu", [0.5, 1.5])
@pytest.mark.parametrize("z", [0.0, 0.5j, -0.7, 0.4 + 0.4j])
def test_integral_form_matches_coefficients(nu, z):
    f = random_polynomial(8, seed=11)
    coef = complex(frac_derivative(f, nu)(z))
    res = frac_derivative_integral(f, nu, z)
    assert abs(res.value - coef) <= 1e-3 * abs(coef)


@given(st.floats(0.0, 0.99), st.sampled_from([0.5, 1.5, 2.5]))
def test_frac_integrand_rows_match_pointwise(r, nu):
    f = random_polynomial(9, seed=3)
    w = frac_integrand(f, FracDerivParams(nu), 0.6 - 0.3j)
    theta = (np.arange(32) + 0.5) * 2 * math.pi / 32
    np.testing.assert_allclose(w.on_circle(r, 32), w(r * np.exp(1j * theta)), rtol=1e-9, atol=1e-12)


def test_integral_form_rejects_boundary_point():
    with pytest.raises(ValueError):
        frac_derivative_integral(TaylorSeries([0, 1]), 0.5, 1.0)


# --- T_sigma ------------------------------------------------------------------------


@pytest.mark.parametrize("x", [0.0, 0.3, 0.8, 0.95])
@pytest.mark.parametrize("lam", [0.6, 1.5])
def test_angular_kernel_mean(x, lam):
    th = (np.arange(20000) + 0.5) * 2 * math.pi / 20000
    direct = np.mean(np.abs(1 - x * np.exp(1j * th)) ** (-2 * lam))
    assert angular_kernel_mean(lam, x) == pytest.approx(direct, rel=1e-8)


def test_t_sigma_of_one_at_origin():
    assert float(t_sigma_apply(1.0, 1.0, 2.0, 0.0)) == pytest.approx(0.5, rel=1e-3)
    assert float(t_sigma_apply(1.0, 1.0, 3.0, 0.0)) == pytest.approx(1 / 3, rel=1e-3)


@pytest.mark.parametrize("t", [0.3, 0.7])
def test_t_sigma_radial_profile_matches_series_and_disc(t):
    ref = t_sigma_one_series(t, 1.0)
    prof = t_sigma_radial_profile(lambda r: np.ones_like(r), 1.0, 2.0, [t])[0]
    disc = float(t_sigma_apply(power_weight(0.0), 1.0, 2.0, t * np.exp(0.3j), refine=False))
    assert prof == pytest.approx(ref, rel=1e-4)
    assert disc == pytest.approx(ref, rel=1e-3)


def test_t_sigma_rejects_bad_args():
    with pytest.raises(ValueError):
        t_sigma_apply(1.0, 0.0, 2.0, 0.0)
    with pytest.raises(ValueError):
        t_sigma_apply(1.0, 1.0, 2.0, 1.0)


def test_t_sigma_carleson_density_lookup_and_fallback():
    w = t_sigma_carleson_density(lambda r: np.ones_like(r), 1.0, 2.0, 0.5)
    r = np.array([0.0, 0.7])
    v = w.profile(r)
    expect = np.array([0.5**2, t_sigma_one_series(0.7, 1.0) ** 2 * (1 - 0.49) ** 0.5])
    np.testing.assert_allclose(v, expect, rtol=1e-3)


# --- T_g, I_g, M_g -----------------------------------------------------------------


@given(polys)
def test_Tg_of_one(g):
    got = volterra_Tg(TaylorSeries([1.0]), g)
    assert got.allclose(g - TaylorSeries([g.coeffs[0]]), atol=1e-12)


@given(polys, coeff)
def test_Tg_with_constant_g_vanishes(f, c):
    assert np.all(volterra_Tg(f, TaylorSeries([c])).coeffs == 0)


@given(polys, coeff)
def test_Ig_with_constant_g(f, c):
    got = op_Ig(f, TaylorSeries([c]))
    expect = c * (f - TaylorSeries([f.coeffs[0]]))
    assert got.allclose(expect, atol=1e-12 * max(1.0, abs(c)) * 10)


@given(polys, polys)
def test_multiplication_decomposition(f, g):
    lhs = op_Mg(f, g)
    rhs = mg_decomposition(f, g)
    scale = max(1.0, float(np.max(np.abs(lhs.coeffs))))
    assert lhs.allclose(rhs, atol=1e-12 * scale)


@settings(deadline=None)
@given(polys, polys, st.integers(0, 40))
def test_budget_truncates_consistently(f, g, budget):
    full = mg_decomposition(f, g)
    cut = mg_decomposition(f, g, budget)
    assert cut.degree <= budget
    n = min(cut.degree, full.degree)
    np.testing.assert_allclose(cut.coeffs[: n + 1], full.coeffs[: n + 1], atol=1e-9 * max(1.0, np.abs(full.coeffs).max()))
    assert op_Mg(f, g, budget).degree <= budget


@given(polys, polys, st.builds(lambda r, t: r * np.exp(1j * t), st.floats(0, 0.9), st.floats(0, 6.3)))
def test_Tg_derivative_is_f_times_gprime(f, g, z):
    lhs = volterra_Tg(f, g).derivative()(z)
    rhs = f(z) * g.derivative()(z)
    assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))
