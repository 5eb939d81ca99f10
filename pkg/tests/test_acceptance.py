"""Acceptance criteria 1-11 at their stated tolerances and time limits.

Each test records one pass/fail line (shown in the terminal summary) and
then asserts it, so a failing criterion is both printed and reported.
"""

import time

import numpy as np
import pytest

from qdisc.calculus import frac_derivative, frac_derivative_integral, mg_decomposition, op_Ig, op_Mg, volterra_Tg
from qdisc.density import power_weight
from qdisc.families import random_polynomial
from qdisc.geometry import Arc
from qdisc.params import SpaceParams
from qdisc.quadrature import DEFAULT, disc_integral, disc_integral_box
from qdisc.series import TaylorSeries
from qdisc.verify import (
    exp_boundary_equivalence,
    exp_carleson_equivalence,
    exp_disc_norm_equivalence,
    exp_fb_bound,
    exp_frac_characterization,
    exp_Ig_norm,
    exp_morrey_relation,
    exp_zr_estimate,
)

pytestmark = pytest.mark.acceptance


def polynomial_set(count=50, max_degree=64, seed=2024):
    rng = np.random.default_rng(seed)
    degrees = rng.integers(0, max_degree + 1, size=count)
    return [random_polynomial(int(d), seed=1000 + i) for i, d in enumerate(degrees)]


def falling_factorial_derivative(f: TaylorSeries, n: int) -> np.ndarray:
    """Coefficients of the n-th derivative: a_{j+n} (j+1)(j+2)...(j+n)."""
    a = f.coeffs
    if a.size <= n:
        return np.zeros(1, dtype=complex)
    j = np.arange(a.size - n)
    factor = np.ones(j.size)
    for i in range(1, n + 1):
        factor *= j + i
    return a[n:] * factor


def max_rel_error(got: np.ndarray, expect: np.ndarray) -> float:
    n = max(got.size, expect.size)
    g = np.zeros(n, dtype=complex)
    e = np.zeros(n, dtype=complex)
    g[: got.size] = got
    e[: expect.size] = expect
    scale = np.maximum(np.abs(e), 1e-300)
    err = np.abs(g - e)
    err = np.where(e == 0, err, err / scale)
    return float(err.max())


def failures(rep):
    return "; ".join(f"{c.name} ({c.detail})" for c in rep.checks if not c.passed)


def test_criterion_01_integer_order_collapse(criterion):
    polys = polynomial_set()
    t0 = time.perf_counter()
    worst = 0.0
    for f in polys:
        for nu in (1, 2, 3):
            expect = falling_factorial_derivative(f, nu)
            for b in (1.5, 2.0, 3.0):
                worst = max(worst, max_rel_error(frac_derivative(f, nu, b).coeffs, expect))
    elapsed = time.perf_counter() - t0
    ok = criterion(1, worst <= 1e-10, f"integer-order collapse, max rel err {worst:.2e} <= 1e-10", elapsed, 1.0)
    assert ok


def test_criterion_02_ladder_identity(criterion):
    polys = polynomial_set()
    t0 = time.perf_counter()
    worst = 0.0
    for f in polys:
        for nu in (0.3, 0.45, 0.9, 1.5):
            lhs = frac_derivative(f, nu, 2.0).derivative()
            rhs = frac_derivative(f, nu + 1, 2.0)
            worst = max(worst, max_rel_error(lhs.coeffs, rhs.coeffs))
    elapsed = time.perf_counter() - t0
    ok = criterion(2, worst <= 1e-10, f"ladder identity, max rel err {worst:.2e} <= 1e-10", elapsed, 1.0)
    assert ok


def test_criterion_03_integral_vs_coefficient(criterion):
    polys = [random_polynomial(d, seed=200 + d) for d in (2, 5, 8, 12, 16)]
    points = [0.0, 0.45 * np.exp(0.9j), 0.7 * np.exp(-2.4j)]
    t0 = time.perf_counter()
    worst = 0.0
    for f in polys:
        for nu in (0.5, 1.5):
            coef = frac_derivative(f, nu, 2.0)
            for z in points:
                exact = complex(coef(z))
                approx = complex(frac_derivative_integral(f, nu, z, 2.0, DEFAULT).value)
                worst = max(worst, abs(approx - exact) / abs(exact))
    elapsed = time.perf_counter() - t0
    ok = criterion(3, worst <= 1e-3, f"integral vs coefficient form, max rel err {worst:.2e} <= 1e-3", elapsed, 30.0)
    assert ok


def test_criterion_04_operator_identities(criterion):
    t0 = time.perf_counter()
    worst = 0.0
    one = TaylorSeries([1.0])
    for seed in range(20):
        f = random_polynomial(16, seed=2 * seed)
        g = random_polynomial(16, seed=2 * seed + 1)
        c = complex(g.coeffs[0])
        checks = [
            (volterra_Tg(one, g), g - TaylorSeries([g.coeffs[0]])),
            (op_Ig(f, TaylorSeries([c])), c * (f - TaylorSeries([f.coeffs[0]]))),
            (op_Mg(f, g), mg_decomposition(f, g)),
        ]
        for got, expect in checks:
            n = max(got.degree, expect.degree)
            diff = np.abs(got.padded(n) - expect.padded(n))
            worst = max(worst, float(diff.max() / max(1.0, np.abs(expect.coeffs).max())))
    elapsed = time.perf_counter() - t0
    ok = criterion(4, worst <= 1e-12, f"T_g 1, I_g const, M_g decomposition, max err {worst:.2e} <= 1e-12", elapsed, 1.0)
    assert ok


def test_criterion_05_quadrature_calibration(criterion):
    t0 = time.perf_counter()
    calib = {a: abs(float(disc_integral(power_weight(a), DEFAULT, refine=False)) - 1 / (1 + a)) for a in (-0.3, 0.5, 2.0)}
    lengths = 2.0 ** -np.arange(2, 7)
    slopes = {}
    for a in (-0.3, 0.5, 2.0):
        vals = [float(disc_integral_box(power_weight(a), Arc.from_norm(0.0, h), DEFAULT, refine=False)) for h in lengths]
        slopes[a] = float(np.polyfit(np.log(lengths), np.log(vals), 1)[0])
    elapsed = time.perf_counter() - t0
    slope_err = {a: abs(s - (a + 2)) / (a + 2) for a, s in slopes.items()}
    ok_cal = all(e <= 1e-3 for e in calib.values())
    ok_slope = all(e <= 0.05 for e in slope_err.values())
    detail = (
        f"calibration max err {max(calib.values()):.2e} <= 1e-3; "
        f"box slopes {', '.join(f'a={a:g}: {s:.4f}' for a, s in slopes.items())} "
        f"(max rel dev {max(slope_err.values()):.3f} <= 0.05)"
    )
    ok = criterion(5, ok_cal and ok_slope, detail, elapsed, 30.0)
    assert ok


def test_criterion_06_carleson_equivalence(criterion):
    t0 = time.perf_counter()
    densities = {f"(1-|z|^2)^{a:g}": power_weight(a) for a in (0.2, 0.5, 1.0)}
    reps = [exp_carleson_equivalence(densities, s=s, cfg=DEFAULT, refine=True) for s in (0.5, 1.0)]
    elapsed = time.perf_counter() - t0
    ratios = np.concatenate([r.ratios() for r in reps])
    deltas = [d for r in reps for row in r.rows for d in (row.delta_a, row.delta_b)]
    ok_all = all(r.passed for r in reps) and bool(np.all((ratios >= 1e-2) & (ratios <= 1e2))) and max(deltas) <= 0.10
    detail = f"box/Moebius ratios in [{ratios.min():.3f}, {ratios.max():.3f}] within [1e-2, 1e2]; max delta {max(deltas):.2e} <= 0.10"
    ok = criterion(6, ok_all, detail + (" " + "; ".join(failures(r) for r in reps) if not ok_all else ""), elapsed, 120.0)
    assert ok


def test_criterion_07_boundary_equivalence(criterion):
    t0 = time.perf_counter()
    rep = exp_boundary_equivalence(params=SpaceParams(0.6, 0.8), cfg=DEFAULT, refine=True, bracket=10.0, stability=0.15)
    elapsed = time.perf_counter() - t0
    spreads = {g: rep.spread(g) for g in rep.groups()}
    detail = "spreads " + ", ".join(f"{g} {s:.4f}" for g, s in spreads.items()) + " <= 10, refinement within 15%"
    ok = criterion(7, rep.passed, detail if rep.passed else detail + "; " + failures(rep), elapsed, 180.0)
    assert ok


def test_criterion_08_disc_forms_and_frac_characterization(criterion):
    t0 = time.perf_counter()
    a = exp_disc_norm_equivalence(params=SpaceParams(0.6, 0.8), cfg=DEFAULT, refine=True, bracket=100.0)
    b = exp_frac_characterization(params=SpaceParams(0.6, 0.8), nu=0.9, cfg=DEFAULT, refine=True, bracket=100.0)
    elapsed = time.perf_counter() - t0
    detail = f"box vs Moebius spread {a.spread():.4f}, box vs nu=0.9 spread {b.spread():.4f} (both <= 100)"
    passed = a.passed and b.passed
    ok = criterion(8, passed, detail if passed else detail + "; " + failures(a) + failures(b), elapsed, 180.0)
    assert ok


def test_criterion_09_morrey_relation(criterion):
    t0 = time.perf_counter()
    rep = exp_morrey_relation(params=SpaceParams(0.5, 0.8), cfg=DEFAULT, refine=True, bracket=10.0)
    elapsed = time.perf_counter() - t0
    detail = f"lambda=0.9, nu*=0.45: spread {rep.spread():.4f} <= 10 over {len(rep.live())} live rows"
    ok = criterion(9, rep.passed, detail if rep.passed else detail + "; " + failures(rep), elapsed, 120.0)
    assert ok


def test_criterion_10_fb_bound_and_Ig(criterion):
    t0 = time.perf_counter()
    fb = exp_fb_bound(params=SpaceParams(0.6, 0.8), b_grid=(0.0, 0.5, 0.9, 0.99), cfg=DEFAULT, refine=True, bound=5.0)
    ig = exp_Ig_norm(params=SpaceParams(0.6, 0.8), cfg=DEFAULT, refine=True, slack=0.05)
    elapsed = time.perf_counter() - t0
    vals = np.array([r.quantity_a for r in fb.rows])
    upper = ig.ratios("upper")
    exact = [c for c in ig.checks if c.name.startswith("constant g")]
    passed = fb.passed and ig.passed and bool(exact) and all(c.passed for c in exact)
    detail = (
        f"f_b max/min {vals.max() / vals.min():.4f} <= 5; I_g upper max ratio {upper.max():.4f} <= 1.05; "
        f"constant g exact: {all(c.passed for c in exact)}"
    )
    ok = criterion(10, passed, detail if passed else detail + "; " + failures(fb) + failures(ig), elapsed, 120.0)
    assert ok


def test_criterion_11_zr_estimate(criterion):
    t0 = time.perf_counter()
    rep = exp_zr_estimate(
        a_radii=(0.0, 0.5, 0.9, 0.95), b_radii=(0.0, 0.5, 0.9, 0.95), s=0.2, r=4.0, t=1.4, cfg=DEFAULT, refine=True, stability=0.10
    )
    elapsed = time.perf_counter() - t0
    origin = next(r for r in rep.rows if r.instance_id.startswith("|a|=0 ") and r.instance_id.endswith("|b|=0"))
    ratios = rep.ratios()
    worst_delta = max(r.delta_a for r in rep.rows)
    passed = (
        rep.passed
        and bool(np.all(np.isfinite(ratios)))
        and abs(origin.ratio - 0.8333) <= 1e-3
        and worst_delta <= 0.10
    )
    detail = (
        f"ratio at a=b=0 {origin.ratio:.6f} (0.8333 within 1e-3); max ratio {ratios.max():.4f} finite; "
        f"max delta {worst_delta:.2e} <= 0.10"
    )
    ok = criterion(11, passed, detail if passed else detail + "; " + failures(rep), elapsed, 120.0)
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
