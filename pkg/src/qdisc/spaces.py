"""Norms, seminorms and Carleson constants, each as a grid supremum with its table.

Every supremum is taken over a finite grid (dyadic arcs or points
1 - 2^-k), so values are lower bounds for the true suprema; the table and
the witness expose the trend.  ``refine=True`` recomputes on the refined
quadrature and reports the relative change of the value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .density import Density, GradientDensity, as_density, derivative_density
from .geometry import TWO_PI, Arc, ArcGrid, PointGrid
from .params import InadmissibleParams, SpaceParams, validate
from .quadrature import (
    DEFAULT,
    QuadConfig,
    box_table,
    graded_cells_1d,
    mobius_table,
    radial_cells,
    rel_delta,
)
from .series import FourierSeries, TaylorSeries, as_fourier

DEFAULT_ARCS = ArcGrid()
DEFAULT_POINTS = PointGrid()


@dataclass
class NormResult:
    value: float
    witness: Arc | complex | None
    table: np.ndarray
    refinement_delta: float = math.nan
    grid: ArcGrid | PointGrid | None = None
    extras: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        if isinstance(self.witness, Arc):
            witness = self.witness.to_json()
        elif self.witness is None:
            witness = None
        else:
            w = complex(self.witness)
            witness = [w.real, w.imag]
        delta = None if math.isnan(self.refinement_delta) else self.refinement_delta
        out = {"value": self.value, "witness": witness, "refinementDelta": delta}
        extras = {k: v for k, v in self.extras.items() if isinstance(v, (bool, int, float, str))}
        extras = {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in extras.items()}
        if extras:
            out["extras"] = extras
        return out

    def table_rows(self) -> tuple[list[str], list[tuple]]:
        """CSV header and rows; arc tables give (center, length, value)."""
        if isinstance(self.grid, ArcGrid):
            rows = [
                (float(self.grid.center_angles[c]), float(TWO_PI * self.grid.norm_lengths[k]), float(self.table[k, c]))
                for k in range(self.table.shape[0])
                for c in range(self.table.shape[1])
            ]
            return ["center", "length", "value"], rows
        if isinstance(self.grid, PointGrid):
            rows = [
                (float(self.grid.radii[i]), float(self.grid.angle_values[j]), float(self.table[i, j]))
                for i in range(self.table.shape[0])
                for j in range(self.table.shape[1])
            ]
            return ["radius", "angle", "value"], rows
        radii, angles = self.extras.get("radii"), self.extras.get("angles")
        if radii is not None and angles is not None:
            rows = [
                (float(radii[i]), float(angles[j]), float(self.table[i, j]))
                for i in range(self.table.shape[0])
                for j in range(self.table.shape[1])
            ]
            return ["radius", "angle", "value"], rows
        return ["index", "value"], [(i, float(v)) for i, v in enumerate(np.ravel(self.table))]


def _arc_result(table: np.ndarray, grid: ArcGrid, delta: float, **extras) -> NormResult:
    k, c = np.unravel_index(int(np.argmax(table)), table.shape)
    return NormResult(float(table[k, c]), grid.arc(k, c), table, delta, grid, extras)


def _point_result(table: np.ndarray, grid: PointGrid, delta: float, **extras) -> NormResult:
    i, j = np.unravel_index(int(np.argmax(table)), table.shape)
    return NormResult(float(table[i, j]), grid.point(i, j), table, delta, grid, extras)


def _with_refinement(compute, cfg: QuadConfig, refine: bool):
    """Table at ``cfg`` and the grid maximum at the refined configuration (NaN if skipped)."""
    t0 = compute(cfg)
    if not refine:
        return t0, math.nan
    return t0, float(np.max(compute(cfg.refined())))


def _arc_refined(table: np.ndarray, grid: ArcGrid, refined: float, **extras) -> NormResult:
    delta = math.nan if math.isnan(refined) else rel_delta(float(np.max(table)), refined)
    return _arc_result(table, grid, delta, refined=refined, **extras)


def _point_refined(table: np.ndarray, grid: PointGrid, refined: float, **extras) -> NormResult:
    delta = math.nan if math.isnan(refined) else rel_delta(float(np.max(table)), refined)
    return _point_result(table, grid, delta, refined=refined, **extras)


def _sqrt_result(res: NormResult) -> NormResult:
    """Square root of a squared-quantity result, with the delta recomputed on the roots."""
    table = np.sqrt(np.maximum(res.table, 0.0))
    value = math.sqrt(max(res.value, 0.0))
    refined = res.extras.get("refined", math.nan)
    delta = res.refinement_delta
    if not math.isnan(refined):
        refined = math.sqrt(max(refined, 0.0))
        delta = rel_delta(value, refined)
    extras = dict(res.extras, squared=res.value, refined=refined)
    return NormResult(value, res.witness, table, delta, res.grid, extras)


# --- Carleson constants ------------------------------------------------------


def box_ratio_table(w, s: float, cfg: QuadConfig = DEFAULT, grid: ArcGrid = DEFAULT_ARCS) -> np.ndarray:
    """mu(S(I)) / |I|^s over the arc grid."""
    return box_table(w, cfg, grid) / (grid.norm_lengths**s)[:, None]


def carleson_box_constant(
    w, s: float, cfg: QuadConfig = DEFAULT, grid: ArcGrid = DEFAULT_ARCS, refine: bool = True
) -> NormResult:
    """sup_I mu(S(I)) / |I|^s for d mu = w dA."""
    if not s > 0:
        raise ValueError(f"Carleson exponent must be positive: got {s}")
    w = as_density(w)
    table, refined = _with_refinement(lambda c: box_ratio_table(w, s, c, grid), cfg, refine)
    return _arc_refined(table, grid, refined, s=s)


def carleson_mobius_constant(
    w, s: float, cfg: QuadConfig = DEFAULT, points: PointGrid = DEFAULT_POINTS, refine: bool = True
) -> NormResult:
    """sup_a int ((1-|a|^2)/|1-conj(a) z|^2)^s w(z) dA(z)."""
    if not s > 0:
        raise ValueError(f"Carleson exponent must be positive: got {s}")
    w = as_density(w)
    table, refined = _with_refinement(lambda c: mobius_table(w, s, c, points), cfg, refine)
    return _point_refined(table, points, refined, s=s)


# --- disc forms of Q_p^beta ---------------------------------------------------


def q_density(f: TaylorSeries, params: SpaceParams) -> Density:
    """|f'(z)|^2 (1-|z|^2)^(p-2+2beta)."""
    return derivative_density(f, params.box_weight_exp)


def q_disc_box_seminorm(
    f: TaylorSeries,
    params: SpaceParams,
    cfg: QuadConfig = DEFAULT,
    grid: ArcGrid = DEFAULT_ARCS,
    refine: bool = True,
) -> NormResult:
    """sqrt of sup_I |I|^-(p+2-2beta) int_{S(I)} |f'|^2 (1-|z|^2)^(p-2+2beta) dA."""
    validate(params, "base").require()
    res = carleson_box_constant(q_density(f, params), params.box_scale_exp, cfg, grid, refine)
    return _sqrt_result(res)


def q_disc_mobius_seminorm_sq(
    f: TaylorSeries,
    params: SpaceParams,
    cfg: QuadConfig = DEFAULT,
    points: PointGrid = DEFAULT_POINTS,
    refine: bool = True,
) -> NormResult:
    """sup_a int |f'|^2 (1-|z|^2)^(4beta-4) (1-|sigma_a(z)|^2)^(p+2-2beta) dA.

    With 1-|sigma_a|^2 = (1-|a|^2)(1-|z|^2)/|1-conj(a)z|^2 this is the
    Moebius Carleson constant of |f'|^2 (1-|z|^2)^(p-2+2beta) at s = p+2-2beta.
    """
    validate(params, "base").require()
    return carleson_mobius_constant(q_density(f, params), params.box_scale_exp, cfg, points, refine)


def q_disc_mobius_norm(
    f: TaylorSeries,
    params: SpaceParams,
    cfg: QuadConfig = DEFAULT,
    points: PointGrid = DEFAULT_POINTS,
    refine: bool = True,
) -> NormResult:
    """|f(0)| + sqrt of the Moebius-form supremum."""
    sq = q_disc_mobius_seminorm_sq(f, params, cfg, points, refine)
    f0 = abs(complex(f.coeffs[0]))
    semi = math.sqrt(max(sq.value, 0.0))
    value = f0 + semi
    refined = sq.extras["refined"]
    delta = math.nan if math.isnan(refined) else rel_delta(value, f0 + math.sqrt(max(refined, 0.0)))
    table = f0 + np.sqrt(np.maximum(sq.table, 0.0))
    extras = {"f0": f0, "seminorm": semi, "seminormSq": sq.value}
    return NormResult(value, sq.witness, table, delta, sq.grid, extras)


# --- circle forms -------------------------------------------------------------


def _require(params: SpaceParams, context: str) -> None:
    v = validate(params, context)
    if not v.ok:
        raise InadmissibleParams(context, list(v.violated))


def _circle_nodes(arc: Arc, n: int):
    """Midpoint s-nodes and edge t-nodes (trapezoid weights unless the arc is the whole circle)."""
    hs = arc.length / n
    s = arc.start + (np.arange(n) + 0.5) * hs
    if arc.length >= TWO_PI - 1e-15:
        return s, arc.start + np.arange(n) * hs, np.full(n, hs), hs
    wt = np.full(n + 1, hs)
    wt[[0, -1]] = hs / 2
    return s, arc.start + np.arange(n + 1) * hs, wt, hs


def _inverse_kernel(q: float, hs: float, n: int, nt: int) -> np.ndarray:
    """1/|e^{is}-e^{it}|^q on the node pairs; it depends only on i - j, so build it once."""
    d = (np.arange(-(nt - 1), n) + 0.5) * hs
    row = np.abs(2.0 * np.sin(d / 2.0)) ** (-q)
    i = np.arange(n)[:, None]
    j = np.arange(nt)[None, :]
    return row[i - j + nt - 1]


def circle_double_term(F: FourierSeries, params: SpaceParams, arc: Arc, n: int, kernel=None) -> float:
    """|I|^(2beta-2-p) int_I int_I |F(s)-F(t)|^2 / |e^{is}-e^{it}|^(4-p-2beta) ds dt."""
    s, t, wt, hs = _circle_nodes(arc, n)
    if kernel is None:
        kernel = _inverse_kernel(params.circle_kernel_exp, hs, s.size, t.size)
    Fs, Ft = F(s), F(t)
    diff = Fs[:, None] - Ft[None, :]
    num = diff.real**2 + diff.imag**2
    total = hs * float(np.sum((num * kernel) @ wt))
    return arc.norm_length**params.circle_scale_exp * total


def q_circle_table(F: FourierSeries, params: SpaceParams, cfg: QuadConfig, grid: ArcGrid) -> np.ndarray:
    n = cfg.arc_points
    table = np.empty(grid.shape)
    for k in range(grid.k_max + 1):
        arc0 = grid.arc(k, 0)
        _, t, _, hs = _circle_nodes(arc0, n)
        kernel = _inverse_kernel(params.circle_kernel_exp, hs, n, t.size)
        for c in range(grid.centers):
            table[k, c] = circle_double_term(F, params, grid.arc(k, c), n, kernel)
    return table


def q_circle_seminorm(
    F,
    params: SpaceParams,
    cfg: QuadConfig = DEFAULT,
    grid: ArcGrid = DEFAULT_ARCS,
    refine: bool = True,
) -> NormResult:
    """sqrt of the grid sup of the double-integral form on the circle (raw dtheta)."""
    _require(params, "circleTheorems")
    F = as_fourier(F)
    table, refined = _with_refinement(lambda c: q_circle_table(F, params, c, grid), cfg, refine)
    return _sqrt_result(_arc_refined(table, grid, refined))


def _gram(freqs: np.ndarray, a: float, b: float) -> np.ndarray:
    """G[n, m] = int_a^b e^{i(m-n)s} ds."""
    d = freqs[None, :] - freqs[:, None]
    h = b - a
    out = np.empty(d.shape, dtype=complex)
    zero = d == 0
    out[zero] = h
    dd = d[~zero]
    out[~zero] = (np.exp(1j * dd * b) - np.exp(1j * dd * a)) / (1j * dd)
    return out


def _arc_moments(F: FourierSeries, arc: Arc) -> tuple[float, complex]:
    """(int_I |F - F(c)|^2 ds, int_I (F - F(c)) ds) for the arc centre c, exactly."""
    n, c = F.nonzero()
    fc = complex(F(arc.center))
    # subtracting F(c) keeps the oscillation well conditioned on short arcs
    if 0 in n:
        c = c.copy()
        c[n == 0] -= fc
    else:
        n = np.concatenate([n, [0]])
        c = np.concatenate([c, [-fc]])
    G = _gram(n, arc.start, arc.end)
    sq = float(np.real(np.conj(c) @ G @ c))
    h = arc.length
    nz = n != 0
    g = np.full(n.size, h, dtype=complex)
    g[nz] = (np.exp(1j * n[nz] * arc.end) - np.exp(1j * n[nz] * arc.start)) / (1j * n[nz])
    return max(sq, 0.0), complex(g @ c)


def arc_oscillation(F: FourierSeries, arc: Arc) -> float:
    """int_I |F - F_I|^2 ds (raw ds) with F_I the average of F over I."""
    sq, mean_int = _arc_moments(F, arc)
    return max(sq - abs(mean_int) ** 2 / arc.length, 0.0)


def bmo_beta_term(F, beta: float, arc: Arc) -> float:
    return arc.norm_length ** (4.0 * beta - 5.0) * arc_oscillation(as_fourier(F), arc)


def bmo_beta_seminorm(F, beta: float, cfg: QuadConfig = DEFAULT, grid: ArcGrid = DEFAULT_ARCS, refine: bool = True) -> NormResult:
    """sqrt of sup_I |I|^(4beta-5) int_I |F - F_I|^2 ds; exact per arc, so the delta is 0."""
    if not 0.5 < beta < 1.0:
        raise InadmissibleParams("bmoBeta", ["β∈(1/2,1)"])
    F = as_fourier(F)
    table = np.empty(grid.shape)
    for (k, c), arc in grid.arcs():
        table[k, c] = bmo_beta_term(F, beta, arc)
    return _sqrt_result(_arc_result(table, grid, 0.0, exact=True))


def difference_term(F: FourierSeries, params: SpaceParams, arc: Arc, cfg: QuadConfig) -> float:
    """|I|^(2beta-p-2) int_0^{2pi|I|} int_I |F(s+t) - F(s)|^2 ds dt / t^(4-p-2beta)."""
    n, c = F.nonzero()
    if n.size == 0:
        return 0.0
    t, wt = graded_cells_1d(arc.length, cfg)
    G = _gram(n, arc.start, arc.end)
    D = c[None, :] * (np.exp(1j * np.outer(t, n)) - 1.0)
    inner = np.real(np.einsum("tn,nm,tm->t", np.conj(D), G, D))
    total = float(np.sum(wt * np.maximum(inner, 0.0) / t**params.circle_kernel_exp))
    return arc.norm_length ** (2.0 * params.beta - params.p - 2.0) * total


def q_circle_difference_form(
    F,
    params: SpaceParams,
    cfg: QuadConfig = DEFAULT,
    grid: ArcGrid = DEFAULT_ARCS,
    refine: bool = True,
) -> NormResult:
    """Grid sup of the translation-difference form (inner s-integral exact, t graded)."""
    _require(params, "circleTheorems")
    F = as_fourier(F)

    def table_for(c: QuadConfig) -> np.ndarray:
        table = np.empty(grid.shape)
        for (k, j), arc in grid.arcs():
            table[k, j] = difference_term(F, params, arc, c)
        return table

    table, refined = _with_refinement(table_for, cfg, refine)
    return _arc_refined(table, grid, refined)


def poisson_carleson_constant(
    F,
    params: SpaceParams,
    cfg: QuadConfig = DEFAULT,
    grid: ArcGrid = DEFAULT_ARCS,
    refine: bool = True,
) -> NormResult:
    """Carleson constant (exponent p+2-2beta) of |grad F^|^2 (1-|z|^2)^(p-2+2beta) dA."""
    w = GradientDensity(F, params.box_weight_exp)
    return carleson_box_constant(w, params.box_scale_exp, cfg, grid, refine)


# --- Morrey, Hardy, growth ----------------------------------------------------


def hardy2_norm(f: TaylorSeries) -> float:
    return float(np.sqrt(np.sum(np.abs(f.coeffs) ** 2)))


def morrey_term(f, lam: float, arc: Arc) -> float:
    """|I|^-lambda (1/2pi) int_I |f - f_I|^2 dtheta."""
    return arc.norm_length ** (-lam) * arc_oscillation(as_fourier(f), arc) / TWO_PI


def morrey_norm(f: TaylorSeries, lam: float, cfg: QuadConfig = DEFAULT, grid: ArcGrid = DEFAULT_ARCS, refine: bool = True) -> NormResult:
    """Grid sup of |I|^-lambda (1/2pi) int_I |f - f_I|^2 dtheta (not square-rooted).

    The H^2 norm is reported alongside as the membership gate.
    """
    if not 0.0 < lam <= 1.0:
        raise InadmissibleParams("morrey", ["0<λ≤1"])
    F = as_fourier(f)
    table = np.empty(grid.shape)
    for (k, c), arc in grid.arcs():
        table[k, c] = morrey_term(F, lam, arc)
    hardy = hardy2_norm(f) if isinstance(f, TaylorSeries) else math.sqrt(F.l2_norm_sq())
    return _arc_result(table, grid, 0.0, hardy2=hardy, lam=lam)


def morrey_carleson_constant(
    f: TaylorSeries, lam: float, cfg: QuadConfig = DEFAULT, grid: ArcGrid = DEFAULT_ARCS, refine: bool = True
) -> NormResult:
    """Carleson constant (exponent lambda) of |f'|^2 (1-|z|^2) dA."""
    if not 0.0 < lam <= 1.0:
        raise InadmissibleParams("morrey", ["0<λ≤1"])
    return carleson_box_constant(derivative_density(f, 1.0), lam, cfg, grid, refine)


def _growth_grid(f: TaylorSeries, cfg: QuadConfig) -> tuple[np.ndarray, int]:
    r_nodes, _ = radial_cells(cfg)
    uniform = np.arange(cfg.levels * 128) / (cfg.levels * 128)
    radii = np.unique(np.concatenate([[0.0], uniform, r_nodes]))
    m = 1 << max(6, int(math.ceil(math.log2(4 * (f.degree + 1)))), int(math.log2(cfg.angles * 16)))
    return radii, m


def growth_table(f: TaylorSeries, beta: float, cfg: QuadConfig) -> tuple[np.ndarray, np.ndarray, int]:
    radii, m = _growth_grid(f, cfg)
    df = f.derivative()
    table = np.empty((radii.size, m))
    for i, r in enumerate(radii):
        table[i] = (1.0 - r * r) ** (2.0 * beta - 1.0) * np.abs(df.on_circle(r, m))
    return table, radii, m


def growth_seminorm(f: TaylorSeries, beta: float, cfg: QuadConfig = DEFAULT, refine: bool = True) -> NormResult:
    """Grid sup of (1-|z|^2)^(2beta-1) |f'(z)| over the quadrature radii and the origin."""
    if not 0.5 < beta < 1.0:
        raise InadmissibleParams("growth", ["β∈(1/2,1)"])
    table, radii, m = growth_table(f, beta, cfg)
    delta = math.nan
    if refine:
        t1, _, _ = growth_table(f, beta, cfg.refined())
        delta = rel_delta(float(table.max()), float(t1.max()))
    i, j = np.unravel_index(int(np.argmax(table)), table.shape)
    angles = (np.arange(m) + 0.5) * TWO_PI / m
    witness = complex(radii[i] * np.exp(1j * angles[j]))
    return NormResult(float(table[i, j]), witness, table, delta, None, {"radii": radii, "angles": angles})


def sup_modulus(g: TaylorSeries, m: int = 4096) -> float:
    """max |g| on the circle grid, which bounds sup_D |g| from below (maximum principle)."""
    m = max(m, 1 << int(math.ceil(math.log2(8 * (g.degree + 1)))))
    return float(np.max(np.abs(g.on_circle(1.0, m))))


NORM_OPS = {
    "q-disc-box": "q_disc_box_seminorm",
    "q-disc-mobius": "q_disc_mobius_norm",
    "q-circle": "q_circle_seminorm",
    "q-circle-difference": "q_circle_difference_form",
    "bmo-beta": "bmo_beta_seminorm",
    "morrey": "morrey_norm",
    "morrey-carleson": "morrey_carleson_constant",
    "poisson-carleson": "poisson_carleson_constant",
    "growth": "growth_seminorm",
    "hardy2": "hardy2_norm",
}
