"""Quadrature on the disc and the circle for weights singular at the boundary.

Disc integrals use a polar midpoint rule whose radial cells are graded
geometrically towards |z| = 1 (dyadic shells by default, each split into
``levels`` cells) and whose angular cells are uniform.  All areas use the
normalized measure dA = dx dy / pi.  The dyadic Carleson depths 2^-k are
always radial breakpoints, so a box over a grid-aligned arc is a union of
whole mesh cells and box tables can be read off cumulative row sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .density import as_density, midpoint_angles
from .geometry import TWO_PI, Arc, ArcGrid, PointGrid


INTERIOR_DENSITY = 16
"""Interior radial cells per unit of depth, per level."""


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class QuadConfig:
    levels: int = 8
    """Midpoint cells per graded radial shell."""
    angles: int = 16
    """Angular cells across the smallest dyadic arc 2pi 2^-depth."""
    grade: float = 0.5
    """Ratio between consecutive radial shell depths."""
    eps_min: float = 1e-6
    """Depth 1-r below which shells stop being graded."""
    refine_factor: int = 2
    depth: int = 10
    """Finest dyadic arc level the angular grid resolves."""
    arc_points: int = 256
    """Midpoint cells per arc for circle integrals."""

    def __post_init__(self) -> None:
        if self.levels < 1 or self.angles < 1 or self.arc_points < 2:
            raise ValueError("levels, angles and arc_points must be positive")
        if not 0.0 < self.grade < 1.0:
            raise ValueError(f"grade must lie in (0, 1): got {self.grade}")
        if not 0.0 < self.eps_min < 1.0:
            raise ValueError(f"eps_min must lie in (0, 1): got {self.eps_min}")
        if self.refine_factor < 2:
            raise ValueError("refine_factor must be at least 2")

    @property
    def full_angles(self) -> int:
        """Angular cells around the whole circle."""
        return self.angles * 2**self.depth

    def refined(self, steps: int = 1) -> QuadConfig:
        f = self.refine_factor**steps
        return replace(
            self,
            levels=self.levels * f,
            angles=self.angles * f,
            arc_points=self.arc_points * f,
        )

    def to_json(self) -> dict:
        return {
            "levels": self.levels,
            "angles": self.angles,
            "grade": self.grade,
            "epsMin": self.eps_min,
            "refine": self.refine_factor,
            "depth": self.depth,
            "arcPoints": self.arc_points,
        }


DEFAULT = QuadConfig()


@dataclass(frozen=True)
class RefinedValue:
    value: float
    refinement_delta: float

    def converged(self, tol: float) -> bool:
        return self.refinement_delta <= tol

    def __float__(self) -> float:
        return float(np.real(self.value))


def rel_delta(coarse, fine) -> float:
    """Relative change |fine - coarse| / |fine| (0 when both vanish)."""
    scale = abs(fine)
    diff = abs(fine - coarse)
    if scale == 0:
        return 0.0 if diff == 0 else math.inf
    return float(diff / scale)


def _refined_pair(compute, cfg: QuadConfig, refine: bool) -> RefinedValue:
    v0 = compute(cfg)
    if not refine:
        return RefinedValue(v0, math.nan)
    v1 = compute(cfg.refined())
    return RefinedValue(v0, rel_delta(v0, v1))


# --- meshes -----------------------------------------------------------------


def radial_breaks(cfg: QuadConfig, depth: float = 1.0) -> np.ndarray:
    """Descending depths u = 1 - r bounding the radial shells of a region of depth ``depth``."""
    rho = cfg.grade
    nshell = int(math.floor(math.log(cfg.eps_min) / math.log(rho) + 1e-9))
    geo = rho ** np.arange(nshell + 1)
    dyadic = 2.0 ** -np.arange(cfg.depth + 1)
    u = np.concatenate([geo, dyadic, [depth]])
    u = u[u <= depth * (1 + 1e-12)]
    u = np.unique(np.round(u, 15))[::-1]
    return np.concatenate([u, [0.0]])


def radial_cells(cfg: QuadConfig, depth: float = 1.0) -> tuple[np.ndarray, np.ndarray]:
    """Midpoint radii and widths of the radial cells covering 1 - depth <= r < 1.

    Radii come out strictly decreasing in depth order, i.e. increasing in r read backwards.
    """
    u = radial_breaks(cfg, depth)
    hi, lo = u[:-1], u[1:]
    # ``levels`` cells per shell, but never wider than 1/(INTERIOR_DENSITY levels) in the interior
    counts = np.maximum(cfg.levels, np.ceil((hi - lo) * INTERIOR_DENSITY * cfg.levels - 1e-9).astype(int))
    width = (hi - lo) / counts
    idx = np.arange(int(counts.sum())) - np.repeat(np.cumsum(counts) - counts, counts)
    umid = np.repeat(hi, counts) - (idx + 0.5) * np.repeat(width, counts)
    du = np.repeat(width, counts)
    return 1.0 - umid, du


def graded_cells_1d(length: float, cfg: QuadConfig) -> tuple[np.ndarray, np.ndarray]:
    """Midpoints and weights on (0, length] graded geometrically towards 0."""
    rho = cfg.grade
    nshell = int(math.floor(math.log(cfg.eps_min) / math.log(rho) + 1e-9))
    u = np.concatenate([length * rho ** np.arange(nshell + 1), [0.0]])
    hi, lo = u[:-1], u[1:]
    L = cfg.levels
    frac = (np.arange(L) + 0.5) / L
    mid = (hi[:, None] - (hi - lo)[:, None] * frac[None, :]).ravel()
    w = np.repeat((hi - lo) / L, L)
    return mid, w


def _check_finite(vals: np.ndarray, z_of_index) -> None:
    if not np.all(np.isfinite(vals)):
        idx = int(np.flatnonzero(~np.isfinite(vals))[0])
        raise QuadratureError(f"non-finite density sample at z = {z_of_index(idx)!r}")


def _angular_count(cfg: QuadConfig, width: float) -> int:
    x = cfg.full_angles * width / TWO_PI
    n = int(round(x))
    if abs(x - n) > 1e-9 * max(1.0, x):
        n = int(math.ceil(x))
    return max(n, 1)


def region_sum(w, cfg: QuadConfig, depth: float = 1.0, start: float = 0.0, width: float = TWO_PI):
    """Midpoint sum of int w dA over {1-depth <= |z| < 1, arg z in [start, start+width]}."""
    w = as_density(w)
    r, dr = radial_cells(cfg, depth)
    full = abs(width - TWO_PI) < 1e-12 and abs(start) < 1e-15
    n = cfg.full_angles if full else _angular_count(cfg, width)
    dtheta = width / n
    theta = start + midpoint_angles(n) * (width / TWO_PI)
    cell = r * dr * dtheta / math.pi
    total = 0.0
    if full or w.radial:
        for i in range(r.size):
            if w.radial:
                vals = w.on_circle(r[i], 1)
                _check_finite(vals, lambda j, ri=r[i]: complex(ri))
                total = total + cell[i] * n * vals[0]
                continue
            vals = w.on_circle(r[i], n)
            _check_finite(vals, lambda j, ri=r[i]: complex(ri * np.exp(1j * theta[j])))
            total = total + cell[i] * np.sum(vals)
        return total
    e = np.exp(1j * theta)
    chunk = max(1, 2_000_000 // n)
    for i0 in range(0, r.size, chunk):
        z = r[i0 : i0 + chunk, None] * e[None, :]
        vals = np.asarray(w(z))
        _check_finite(vals.ravel(), lambda j, z=z: complex(z.ravel()[j]))
        total = total + np.sum(cell[i0 : i0 + chunk] * np.sum(vals, axis=1))
    return total


def disc_integral(w, cfg: QuadConfig = DEFAULT, refine: bool = True) -> RefinedValue:
    """int_D w dA with normalized area measure, plus the relative change under one refinement."""
    return _refined_pair(lambda c: region_sum(w, c), cfg, refine)


def disc_integral_region(
    w, start: float, width: float, depth: float, cfg: QuadConfig = DEFAULT, refine: bool = True
) -> RefinedValue:
    return _refined_pair(lambda c: region_sum(w, c, depth, start, width), cfg, refine)


def disc_integral_box(w, arc: Arc, cfg: QuadConfig = DEFAULT, refine: bool = True) -> RefinedValue:
    """Integral of w dA over the Carleson box S(I)."""
    if arc.norm_length >= 1.0 - 1e-15:
        return disc_integral(w, cfg, refine)
    return disc_integral_region(w, arc.start, arc.length, arc.box_depth, cfg, refine)


# --- tables over grids -------------------------------------------------------


def _grid_offsets(cfg: QuadConfig, grid: ArcGrid) -> tuple[np.ndarray, np.ndarray]:
    M = cfg.full_angles
    if M % grid.centers:
        raise ValueError(f"{M} angular cells do not split into {grid.centers} centres")
    if grid.k_max > cfg.depth:
        raise ValueError(f"arc grid k_max={grid.k_max} exceeds quadrature depth {cfg.depth}")
    x = grid.phase * M / TWO_PI
    if abs(x - round(x)) > 1e-9:
        raise ValueError("arc grid phase must be a multiple of the angular cell width")
    half = M * grid.norm_lengths / 2
    if np.any(np.abs(half - np.round(half)) > 1e-9):
        raise ValueError("arc half-lengths must be whole angular cells; use an even 'angles'")
    centers = (int(round(x)) + np.arange(grid.centers) * (M // grid.centers)) % M
    return centers, np.round(half).astype(int)


def box_table(w, cfg: QuadConfig = DEFAULT, grid: ArcGrid = ArcGrid()) -> np.ndarray:
    """mu(S(I)) for every arc of ``grid``; rows index length 2^-k, columns the centre."""
    w = as_density(w)
    M = cfg.full_angles
    centers, half = _grid_offsets(cfg, grid)
    r, dr = radial_cells(cfg)
    cell = r * dr * (TWO_PI / M) / math.pi
    depths = grid.norm_lengths
    out = np.zeros(grid.shape)
    start = (centers[None, :] - half[:, None]) % M
    stop = start + 2 * half[:, None]
    for i in range(r.size):
        u = 1.0 - r[i]
        inside = depths >= u
        if not inside.any():
            continue
        if w.radial:
            v = w.on_circle(r[i], 1)[0]
            _check_finite(np.atleast_1d(v), lambda j, ri=r[i]: complex(ri))
            out[inside] += cell[i] * v * (2 * half[inside])[:, None]
            continue
        vals = np.real(w.on_circle(r[i], M))
        _check_finite(vals, lambda j, ri=r[i]: complex(ri * np.exp(1j * (j + 0.5) * TWO_PI / M)))
        cum = np.concatenate([[0.0], np.cumsum(np.concatenate([vals, vals]))])
        out[inside] += cell[i] * (cum[stop[inside]] - cum[start[inside]])
    return out


def correlation_table(w, kernel, radii, angles: int, cfg: QuadConfig = DEFAULT) -> np.ndarray:
    """T[i, j] = int_D w(z) kernel(rho_i, e^{-i phi_j} z) dA(z), phi_j = 2pi j/angles.

    ``kernel(rho, r, cos_theta)`` gives the kernel of the point a = rho (on
    the positive axis) on a polar row, for a column of radii ``rho`` and a
    row of cosines.  Rotating a by phi rotates the kernel, so a row's
    contribution for all phi is one circular cross-correlation, sampled at
    the ``angles`` lags by folding its spectrum.
    """
    w = as_density(w)
    M = cfg.full_angles
    if M % angles:
        raise ValueError(f"{M} angular cells do not split into {angles} point angles")
    step = M // angles
    radii = np.asarray(radii, dtype=float)
    rho = radii[:, None]
    r, dr = radial_cells(cfg)
    cell = r * dr * (TWO_PI / M) / math.pi
    theta = midpoint_angles(M)
    cos_theta = np.cos(theta)[None, :]
    at_origin = radii == 0.0
    out = np.zeros((radii.size, angles))
    for i in range(r.size):
        if w.radial:
            v = w.on_circle(r[i], 1)[0]
            if v == 0:
                continue
            out += cell[i] * v * np.sum(kernel(rho, r[i], cos_theta), axis=1)[:, None]
            continue
        vals = np.real(w.on_circle(r[i], M))
        _check_finite(vals, lambda j, ri=r[i]: complex(ri * np.exp(1j * theta[j])))
        if not vals.any():
            continue
        k = kernel(rho, r[i], cos_theta)
        if at_origin.any():
            out[at_origin, :] += cell[i] * np.sum(vals * k[at_origin], axis=1)[:, None]
        live = ~at_origin
        if not live.any():
            continue
        C = np.fft.rfft(vals) * np.conj(np.fft.rfft(k[live], axis=1))
        full = np.concatenate([C, np.conj(C[:, -2:0:-1])], axis=1)
        folded = full.reshape(-1, step, angles).sum(axis=1)
        out[live, :] += cell[i] * np.real(np.fft.ifft(folded, axis=1)) * (angles / M)
    return out


def mobius_kernel(s: float):
    """((1-rho^2)/|1 - rho z|^2)^s on a polar row."""

    def kernel(rho, r, cos_theta):
        x = rho * r
        d = 1.0 - 2.0 * x * cos_theta + x * x
        ratio = (1.0 - rho * rho) / d
        return ratio if s == 1.0 else ratio**s

    return kernel


def mobius_table(w, s: float, cfg: QuadConfig = DEFAULT, points: PointGrid = PointGrid()) -> np.ndarray:
    """int ((1-|a|^2)/|1-conj(a) z|^2)^s w(z) dA(z) for every a of ``points``."""
    return correlation_table(w, mobius_kernel(s), points.radii, points.angles, cfg)


# --- circle ------------------------------------------------------------------


def _arc_nodes(cfg: QuadConfig, arc: Arc | None):
    n = cfg.arc_points
    if arc is None or arc.length >= TWO_PI - 1e-15:
        start = 0.0 if arc is None else arc.start
        h = TWO_PI / n
        s = start + (np.arange(n) + 0.5) * h
        t = start + np.arange(n) * h
        return s, np.full(n, h), t, np.full(n, h)
    h = arc.length / n
    s = arc.start + (np.arange(n) + 0.5) * h
    t = arc.start + np.arange(n + 1) * h
    wt = np.full(n + 1, h)
    wt[[0, -1]] = h / 2
    return s, np.full(n, h), t, wt


def circle_double_sum(K, cfg: QuadConfig, arc: Arc | None = None) -> float:
    s, ws, t, wt = _arc_nodes(cfg, arc)
    vals = np.asarray(K(s[:, None], t[None, :]))
    if np.any(np.isnan(vals)):
        i, j = np.argwhere(np.isnan(vals))[0]
        raise QuadratureError(f"NaN kernel sample at (s, t) = ({s[i]}, {t[j]})")
    return float(ws @ np.real(vals) @ wt)


def circle_double_integral(K, cfg: QuadConfig = DEFAULT, arc: Arc | None = None, refine: bool = True) -> RefinedValue:
    """int_I int_I K(s, t) ds dt (raw dtheta) by a product rule whose s and t nodes never meet.

    s runs over cell midpoints and t over cell edges (trapezoid weights on a
    proper arc), so a diagonal singularity is never sampled.
    """
    return _refined_pair(lambda c: circle_double_sum(K, c, arc), cfg, refine)


@dataclass
class SupResult:
    value: float
    witness: Arc
    table: np.ndarray
    grid: ArcGrid


def sup_over_arcs(h, grid: ArcGrid = ArcGrid()) -> SupResult:
    """Evaluate h on every arc of ``grid``; the maximum is a lower bound for the true supremum."""
    table = np.empty(grid.shape)
    for (k, c), arc in grid.arcs():
        table[k, c] = h(arc)
    k, c = np.unravel_index(int(np.argmax(table)), table.shape)
    return SupResult(float(table[k, c]), grid.arc(k, c), table, grid)
