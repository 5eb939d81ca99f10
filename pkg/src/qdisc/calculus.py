"""Fractional nu-derivatives, the operator T_sigma, and the operators T_g, I_g, M_g."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, hyp2f1

from .density import Density, FunctionDensity, RadialDensity, as_density, midpoint_angles, one_minus_r2
from .params import frac_order_m
from .quadrature import DEFAULT, QuadConfig, RefinedValue, disc_integral, radial_cells, rel_delta
from .series import TaylorSeries, antiderivative, cauchy_product


@dataclass(frozen=True)
class FracDerivParams:
    nu: float
    b: float = 2.0

    def __post_init__(self) -> None:
        if not self.nu > 0:
            raise ValueError(f"nu must be positive: got {self.nu}")
        if not self.b > 1:
            raise ValueError(f"b must exceed 1: got {self.b}")

    @property
    def m(self) -> int:
        """[nu - 1], the least integer >= nu - 1 (never negative)."""
        return frac_order_m(self.nu)


def _fp(nu, b) -> FracDerivParams:
    return nu if isinstance(nu, FracDerivParams) else FracDerivParams(float(nu), float(b))


def frac_multipliers(n: int, fp: FracDerivParams) -> np.ndarray:
    """Gamma(j+b+nu) Gamma(j+m+2) / (Gamma(j+1) Gamma(j+m+b+1)) for j = 0..n-1."""
    j = np.arange(n, dtype=float)
    nu, b, m = fp.nu, fp.b, fp.m
    return np.exp(gammaln(j + b + nu) + gammaln(j + m + 2) - gammaln(j + 1) - gammaln(j + m + b + 1))


def frac_derivative(f: TaylorSeries, nu, b: float = 2.0) -> TaylorSeries:
    """Coefficient form: a_j^(nu) = a_{j+m+1} * Gamma ratio, degree N - m - 1."""
    fp = _fp(nu, b)
    shift = fp.m + 1
    if f.degree < shift:
        return TaylorSeries([0.0])
    tail = f.coeffs[shift:]
    return TaylorSeries(tail * frac_multipliers(tail.size, fp))


class FracIntegrand(Density):
    """conj(w)^m f'(w) (1-|w|^2)^(b-1) / (1 - conj(w) z)^(b+nu), a complex density in w."""

    def __init__(self, f: TaylorSeries, fp: FracDerivParams, z: complex):
        self.df = f.derivative()
        self.fp = fp
        self.z = complex(z)

    def __call__(self, u):
        u = np.asarray(u, dtype=complex)
        cu = np.conj(u)
        m, b, nu = self.fp.m, self.fp.b, self.fp.nu
        return cu**m * self.df(u) * one_minus_r2(np.abs(u)) ** (b - 1) / (1.0 - cu * self.z) ** (b + nu)

    def on_circle(self, r: float, m: int) -> np.ndarray:
        theta = midpoint_angles(m)
        k, b, nu = self.fp.m, self.fp.b, self.fp.nu
        # 1 - conj(w) z in real arithmetic; the principal branch is safe since |conj(w) z| < 1
        zr, zi = self.z.real, self.z.imag
        c, s = np.cos(theta), np.sin(theta)
        re = 1.0 - r * (c * zr + s * zi)
        im = -r * (c * zi - s * zr)
        e = b + nu
        mod = np.exp(-0.5 * e * np.log(re * re + im * im))
        phase = -e * np.arctan2(im, re) - k * theta
        kernel = mod * np.exp(1j * phase)
        return r**k * self.df.on_circle(r, m) * float(one_minus_r2(r)) ** (b - 1) * kernel


def frac_integrand(f: TaylorSeries, fp: FracDerivParams, z: complex) -> Density:
    return FracIntegrand(f, fp, z)


def frac_derivative_integral(
    f: TaylorSeries, nu, z: complex, b: float = 2.0, cfg: QuadConfig = DEFAULT, refine: bool = False
) -> RefinedValue:
    """Integral form of f^(nu)(z) by disc quadrature; an independent check of the coefficient form."""
    fp = _fp(nu, b)
    z = complex(z)
    if abs(z) >= 1:
        raise ValueError(f"need |z| < 1: got {abs(z)}")
    scale = math.exp(gammaln(fp.b + fp.nu) - gammaln(fp.b))
    res = disc_integral(frac_integrand(f, fp, z), cfg, refine)
    return RefinedValue(scale * res.value, res.refinement_delta)


# --- T_sigma ------------------------------------------------------------------


def t_sigma_density(psi, sigma: float, b: float, w: complex) -> Density:
    psi = as_density(psi)
    w = complex(w)

    def dens(z):
        return one_minus_r2(np.abs(z)) ** (b - 1) * psi(z) / np.abs(1.0 - np.conj(z) * w) ** (b + sigma)

    return FunctionDensity(dens)


def t_sigma_apply(
    psi, sigma: float, b: float, w: complex, cfg: QuadConfig = DEFAULT, refine: bool = True
) -> RefinedValue:
    """T_sigma psi(w) = int (1-|z|^2)^(b-1) psi(z) / |1 - conj(z) w|^(b+sigma) dA(z)."""
    if not sigma > 0 or not b > 1:
        raise ValueError("T_sigma needs sigma > 0 and b > 1")
    if abs(complex(w)) >= 1:
        raise ValueError("T_sigma needs |w| < 1")
    return disc_integral(t_sigma_density(psi, sigma, b, w), cfg, refine)


def angular_kernel_mean(lam: float, x) -> np.ndarray:
    """(1/2pi) int |1 - x e^{i theta}|^(-2 lam) d theta = 2F1(lam, lam; 1; x^2) for 0 <= x < 1."""
    x = np.asarray(x, dtype=float)
    return hyp2f1(lam, lam, 1.0, x * x)


def t_sigma_radial_profile(profile, sigma: float, b: float, t, cfg: QuadConfig = DEFAULT) -> np.ndarray:
    """T_sigma psi(|w| = t) for radial psi(z) = profile(|z|), via the exact angular mean."""
    if not sigma > 0 or not b > 1:
        raise ValueError("T_sigma needs sigma > 0 and b > 1")
    rho, drho = radial_cells(cfg)
    weight = 2.0 * rho * drho * one_minus_r2(rho) ** (b - 1) * profile(rho)
    lam = (b + sigma) / 2.0
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.empty(t.size)
    for i, ti in enumerate(t):
        out[i] = float(np.sum(weight * angular_kernel_mean(lam, rho * ti)))
    return out


def t_sigma_carleson_density(profile, sigma: float, b: float, exponent: float, cfg: QuadConfig = DEFAULT) -> Density:
    """|T_sigma psi(w)|^2 (1-|w|^2)^exponent for radial psi, tabulated on the mesh radii of ``cfg``."""
    r_nodes, _ = radial_cells(cfg)
    values = t_sigma_radial_profile(profile, sigma, b, r_nodes, cfg)
    lookup = dict(zip(r_nodes.tolist(), values.tolist()))

    def dens_profile(r):
        r = np.asarray(r, dtype=float)
        flat = r.ravel()
        known = np.array([lookup.get(x, np.nan) for x in flat.tolist()])
        missing = np.isnan(known)
        if missing.any():
            known[missing] = t_sigma_radial_profile(profile, sigma, b, flat[missing], cfg)
        v = known.reshape(r.shape)
        return v * v * one_minus_r2(r) ** exponent

    return RadialDensity(dens_profile)


# --- T_g, I_g, M_g --------------------------------------------------------------


def _product(f: TaylorSeries, g: TaylorSeries, budget: int | None) -> TaylorSeries:
    return cauchy_product(f, g, None if budget is None else max(budget - 1, 0))


def _cap(f: TaylorSeries, budget: int | None) -> TaylorSeries:
    return f if budget is None else f.truncate(max(budget, 0))


def volterra_Tg(f: TaylorSeries, g: TaylorSeries, budget: int | None = None) -> TaylorSeries:
    """T_g f = int_0^z f g' (result degree capped at ``budget``)."""
    return _cap(antiderivative(_product(f, g.derivative(), budget)), budget)


def op_Ig(f: TaylorSeries, g: TaylorSeries, budget: int | None = None) -> TaylorSeries:
    """I_g f = int_0^z f' g."""
    return _cap(antiderivative(_product(f.derivative(), g, budget)), budget)


def op_Mg(f: TaylorSeries, g: TaylorSeries, budget: int | None = None) -> TaylorSeries:
    """M_g f = f g."""
    return cauchy_product(f, g, budget)


def mg_decomposition(f: TaylorSeries, g: TaylorSeries, budget: int | None = None) -> TaylorSeries:
    """f(0) g(0) + I_g f + T_g f, which must equal M_g f."""
    const = TaylorSeries([f.coeffs[0] * g.coeffs[0]])
    return const + op_Ig(f, g, budget) + volterra_Tg(f, g, budget)


__all__ = [
    "FracDerivParams",
    "frac_multipliers",
    "frac_derivative",
    "frac_derivative_integral",
    "t_sigma_apply",
    "t_sigma_radial_profile",
    "t_sigma_carleson_density",
    "angular_kernel_mean",
    "volterra_Tg",
    "op_Ig",
    "op_Mg",
    "mg_decomposition",
    "rel_delta",
]
