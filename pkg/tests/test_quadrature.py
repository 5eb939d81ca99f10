import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from qdisc.density import (
    FunctionDensity,
    GradientDensity,
    ModulusDensity,
    ZeroDensity,
    as_density,
    derivative_density,
    midpoint_angles,
    power_weight,
)
from qdisc.families import lacunary, random_polynomial
from qdisc.geometry import TWO_PI, Arc, ArcGrid, PointGrid
from qdisc.quadrature import (
    DEFAULT,
    QuadConfig,
    QuadratureError,
    box_table,
    circle_double_integral,
    disc_integral,
    disc_integral_box,
    graded_cells_1d,
    mobius_table,
    radial_cells,
    region_sum,
    rel_delta,
    sup_over_arcs,
)
from qdisc.series import FourierSeries, TaylorSeries


def box_power_integral(h, a):
    """int_{S(I)} (1-|z|^2)^a dA for |I| = h, in closed form."""
    return h * (2 * h - h * h) ** (a + 1) / (a + 1)


# --- configuration ---------------------------------------------------------------


def test_config_refinement_and_json():
    c = QuadConfig()
    assert c.full_angles == 16 * 1024
    r = c.refined()
    assert (r.levels, r.angles, r.arc_points) == (16, 32, 512)
    assert c.refined(2).levels == 32
    assert set(c.to_json()) == {"levels", "angles", "grade", "epsMin", "refine", "depth", "arcPoints"}


@pytest.mark.parametrize("kw", [dict(levels=0), dict(grade=1.0), dict(eps_min=0.0), dict(refine_factor=1)])
def test_config_rejects_bad_values(kw):
    with pytest.raises(ValueError):
        QuadConfig(**kw)


def test_rel_delta():
    assert rel_delta(1.0, 1.0) == 0.0
    assert rel_delta(0.9, 1.0) == pytest.approx(0.1)
    assert rel_delta(0.0, 0.0) == 0.0
    assert rel_delta(1.0, 0.0) == math.inf


# --- meshes ----------------------------------------------------------------------


def test_radial_cells_tile_the_interval():
    for depth in (1.0, 0.25, 2.0**-7):
        r, dr = radial_cells(DEFAULT, depth)
        assert np.sum(dr) == pytest.approx(depth, rel=1e-12)
        assert np.all(dr > 0)
        assert np.all((r >= 1 - depth) & (r < 1))


def test_radial_cells_graded_towards_boundary():
    r, dr = radial_cells(DEFAULT)
    near = dr[r > 1 - 1e-3]
    assert near.max() < 1e-4
    assert dr.max() <= 1 / (8 * DEFAULT.levels) + 1e-15


def test_graded_cells_1d_integrates_singular_power():
    t, w = graded_cells_1d(2.0, DEFAULT)
    assert np.sum(w) == pytest.approx(2.0, rel=1e-12)
    # t^0.2 is the behaviour of the difference-form integrand near t = 0
    assert np.sum(w * t**0.2) == pytest.approx(2**1.2 / 1.2, rel=1e-4)


# --- disc integrals --------------------------------------------------------------


@pytest.mark.parametrize("a", [-0.3, 0.0, 0.5, 2.0])
def test_power_weight_calibration(a):
    res = disc_integral(power_weight(a))
    assert float(res) == pytest.approx(1 / (1 + a), abs=1e-3)
    assert res.converged(1e-3)


@pytest.mark.parametrize("a", [-0.3, 0.5, 2.0])
def test_refinement_delta_shrinks(a):
    """Midpoint rules are second order, so each refinement cuts the change about fourfold."""
    c = QuadConfig(levels=4, angles=8)
    v = [float(np.real(region_sum(power_weight(a), c.refined(k)))) for k in range(3)]
    d1, d2 = rel_delta(v[0], v[1]), rel_delta(v[1], v[2])
    assert d2 * 2 <= d1
    err = [abs(x - 1 / (1 + a)) for x in v]
    assert err[0] > err[1] > err[2]


def test_monomial_moments():
    """int |z^k|^2 dA = 1/(k+1), computed through a non-radial path."""
    f = TaylorSeries([0, 0, 0, 1])
    w = FunctionDensity(lambda z: np.abs(f(z)) ** 2)
    assert float(disc_integral(w, refine=False)) == pytest.approx(0.25, rel=1e-3)


def test_dirichlet_integral_of_polynomial():
    """int |f'|^2 dA = sum k |a_k|^2."""
    f = random_polynomial(10, seed=1)
    k = np.arange(f.coeffs.size)
    expect = float(np.sum(k * np.abs(f.coeffs) ** 2))
    got = float(disc_integral(derivative_density(f, 0.0), refine=False))
    assert got == pytest.approx(expect, rel=1e-3)


def test_complex_density_integrates():
    res = disc_integral(FunctionDensity(lambda z: z * np.conj(z) + 1j * z), refine=False)
    assert res.value == pytest.approx(0.5, abs=1e-4)


def test_nonfinite_density_raises():
    with pytest.raises(QuadratureError), np.errstate(divide="ignore", invalid="ignore"):
        disc_integral(FunctionDensity(lambda z: 1 / (z - z)), refine=False)


@pytest.mark.parametrize("h", [1.0, 0.25, 2.0**-5])
@pytest.mark.parametrize("a", [-0.3, 0.5])
def test_box_integral_closed_form(h, a):
    arc = Arc.from_norm(1.0, h)
    got = float(disc_integral_box(power_weight(a), arc, refine=False))
    assert got == pytest.approx(box_power_integral(h, a), rel=2e-3)


def test_box_area():
    got = float(disc_integral_box(1.0, Arc.from_norm(0.3, 0.25), refine=False))
    assert got == pytest.approx(0.25**2 * 1.75, rel=1e-6)


@settings(max_examples=10, deadline=None)
@given(st.floats(0.0, TWO_PI), st.sampled_from([0.5, 0.25, 0.125]))
def test_box_additivity(center, h):
    """Two halves of a box add up to the strip of the same depth over the whole arc."""
    f = lacunary(2.0, 3)
    w = derivative_density(f, 0.2)
    arc = Arc.from_norm(center, h)
    cfg = QuadConfig(levels=4, angles=8)
    left = float(np.real(region_sum(w, cfg, h, arc.start, arc.length / 2)))
    right = float(np.real(region_sum(w, cfg, h, arc.center, arc.length / 2)))
    whole = float(np.real(region_sum(w, cfg, h, arc.start, arc.length)))
    assert left + right == pytest.approx(whole, rel=1e-3)


def test_box_table_matches_closed_form_and_is_monotone():
    grid = ArcGrid(centers=8, k_max=6)
    table = box_table(power_weight(0.5), DEFAULT, grid)
    expect = box_power_integral(grid.norm_lengths, 0.5)
    np.testing.assert_allclose(table, np.repeat(expect[:, None], 8, axis=1), rtol=2e-3)
    # nested boxes have nested measures
    assert np.all(np.diff(table, axis=0) < 0)


def test_box_table_positive_and_rotation_equivariant(coarse):
    grid = ArcGrid(centers=16, k_max=4)
    f = random_polynomial(6, seed=2)
    t0 = box_table(derivative_density(f, 0.2), coarse, grid)
    assert np.all(t0 > 0)
    shift = 3
    t1 = box_table(derivative_density(f.rotate(-shift * TWO_PI / 16), 0.2), coarse, grid)
    np.testing.assert_allclose(t1, np.roll(t0, shift, axis=1), rtol=1e-9)


def test_box_table_agrees_with_direct_box(coarse):
    grid = ArcGrid(centers=4, k_max=3)
    w = derivative_density(lacunary(2.0, 3), 0.2)
    table = box_table(w, coarse, grid)
    for (k, c), arc in grid.arcs():
        direct = float(np.real(disc_integral_box(w, arc, coarse, refine=False).value))
        assert table[k, c] == pytest.approx(direct, rel=1e-9)


def test_box_table_rejects_misaligned_grid():
    with pytest.raises(ValueError):
        box_table(power_weight(0.0), DEFAULT, ArcGrid(centers=3))
    with pytest.raises(ValueError):
        box_table(power_weight(0.0), DEFAULT, ArcGrid(k_max=12))


def test_mobius_table_closed_form():
    """s = 1, w = 1: (1-x)/x log(1/(1-x)) with x = |a|^2, and 1 at a = 0."""
    pts = PointGrid(angles=4, k_max=5)
    table = mobius_table(power_weight(0.0), 1.0, DEFAULT, pts)
    x = pts.radii**2
    with np.errstate(divide="ignore", invalid="ignore"):
        expect = np.where(x > 0, (1 - x) / x * -np.log1p(-x), 1.0)
    np.testing.assert_allclose(table, np.repeat(expect[:, None], 4, axis=1), rtol=1e-3)


def test_mobius_table_nonradial_matches_direct(coarse):
    f = random_polynomial(5, seed=0)
    w = derivative_density(f, 0.2)
    pts = PointGrid(angles=8, k_max=3)
    table = mobius_table(w, 1.0, coarse, pts)
    for i, j in [(0, 0), (2, 3), (3, 7)]:
        a = pts.point(i, j)
        k = FunctionDensity(lambda z, a=a: ((1 - abs(a) ** 2) / np.abs(1 - np.conj(a) * z) ** 2) * w(z))
        direct = float(np.real(disc_integral(k, coarse, refine=False).value))
        assert table[i, j] == pytest.approx(direct, rel=1e-9)


# --- circle ----------------------------------------------------------------------


def test_circle_double_integral_singular_kernel():
    """int_0^L int_0^L |s-t|^a ds dt = 2 L^(a+2) / ((a+1)(a+2)), a kink on the diagonal."""
    L, a = 1.5, 0.2
    arc = Arc(L / 2, L)
    res = circle_double_integral(lambda s, t: np.abs(s - t) ** a, DEFAULT, arc)
    assert res.value == pytest.approx(2 * L ** (a + 2) / ((a + 1) * (a + 2)), rel=1e-3)
    assert res.refinement_delta < 1e-3


def test_circle_double_integral_smooth_full_circle():
    res = circle_double_integral(lambda s, t: np.cos(s - t) ** 2, DEFAULT)
    assert res.value == pytest.approx(2 * math.pi**2, rel=1e-12)


def test_sup_over_arcs_witness():
    grid = ArcGrid(centers=8, k_max=3)
    res = sup_over_arcs(lambda arc: -abs(arc.center - 1.5) - arc.norm_length, grid)
    assert res.witness.norm_length == pytest.approx(0.125)
    assert res.value == pytest.approx(np.max(res.table))


# --- densities -------------------------------------------------------------------


def test_midpoint_angles():
    np.testing.assert_allclose(midpoint_angles(4), (np.arange(4) + 0.5) * math.pi / 2)


@given(st.floats(0.0, 0.99), st.sampled_from([8, 32]))
def test_density_rows_match_pointwise(r, m):
    z = r * np.exp(1j * midpoint_angles(m))
    f = random_polynomial(7, seed=5)
    F = FourierSeries([0.5, 0, 1, 0, 2j], nmin=-2)
    for w in (ModulusDensity(f, 0.3), GradientDensity(F, 0.2), power_weight(0.5, 2.0), derivative_density(f, 0.0).scaled(3.0)):
        np.testing.assert_allclose(w.on_circle(r, m), np.real(w(z)), rtol=1e-10, atol=1e-12)


def test_radial_flags():
    assert ModulusDensity(TaylorSeries([0, 0, 3]), 0.2).radial
    assert not ModulusDensity(TaylorSeries([1, 1]), 0.2).radial
    assert GradientDensity(FourierSeries([1.0, 0, 1.0], nmin=-1), 0.2).radial
    assert ZeroDensity().on_circle(0.5, 4).tolist() == [0, 0, 0, 0]


def test_as_density():
    assert as_density(2.0)(np.array([0.3])) == pytest.approx(2.0)
    assert as_density(lambda z: np.abs(z))(np.array([0.5j])) == pytest.approx(0.5)
    with pytest.raises(TypeError):
        as_density("x")


@settings(max_examples=10, deadline=None)
@given(st.floats(0.1, 10.0))
def test_integral_is_linear_in_scale(c):
    w = derivative_density(lacunary(2.0, 3), 0.2)
    cfg = QuadConfig(levels=4, angles=8)
    base = float(np.real(region_sum(w, cfg)))
    assert float(np.real(region_sum(w.scaled(c), cfg))) == pytest.approx(c * base, rel=1e-12)


def test_box_integral_positive_oracle():
    """Independent scipy check of a non-radial box integral."""
    f = TaylorSeries([0, 1, 0.5j])
    arc = Arc.from_norm(0.7, 0.25)
    w = derivative_density(f, 0.2)

    def integrand(theta, r):
        return float(np.real(w(r * np.exp(1j * theta)))) * r / math.pi

    ref, _ = integrate.dblquad(integrand, 1 - arc.norm_length, 1, arc.start, arc.end, epsabs=1e-10)
    got = float(np.real(disc_integral_box(w, arc, refine=False).value))
    assert got == pytest.approx(ref, rel=1e-4)
