"""Densities on the disc, i.e. measures d mu = w dA given by their weight w.

Every density can be sampled pointwise (``w(z)``) and row-by-row on the
midpoint angular grid (``w.on_circle(r, m)``); series-backed densities
override the latter with an FFT, which is what makes the full-grid Carleson
tables affordable.
"""

from __future__ import annotations

import numpy as np

from .series import TaylorSeries, as_fourier


def midpoint_angles(m: int) -> np.ndarray:
    return (np.arange(m) + 0.5) * (2.0 * np.pi / m)


def one_minus_r2(r):
    r = np.asarray(r, dtype=float)
    return (1.0 - r) * (1.0 + r)


class Density:
    radial = False

    def __call__(self, z):
        raise NotImplementedError

    def on_circle(self, r: float, m: int) -> np.ndarray:
        z = r * np.exp(1j * midpoint_angles(m))
        return np.asarray(self(z))

    def scaled(self, c: float) -> Density:
        return ScaledDensity(self, c)


class FunctionDensity(Density):
    """Wraps a vectorized callable z -> w(z)."""

    def __init__(self, fn, radial: bool = False):
        self.fn = fn
        self.radial = radial

    def __call__(self, z):
        return self.fn(np.asarray(z, dtype=complex))

    def on_circle(self, r: float, m: int) -> np.ndarray:
        if self.radial:
            return np.full(m, self.fn(np.asarray(complex(r))))
        return super().on_circle(r, m)


class RadialDensity(Density):
    """w(z) = profile(|z|)."""

    radial = True

    def __init__(self, profile):
        self.profile = profile

    def __call__(self, z):
        return self.profile(np.abs(np.asarray(z, dtype=complex)))

    def on_circle(self, r: float, m: int) -> np.ndarray:
        return np.full(m, self.profile(np.asarray(float(r))), dtype=float)


def power_weight(a: float, c: float = 1.0) -> RadialDensity:
    """c (1-|z|^2)^a."""
    return RadialDensity(lambda r: c * one_minus_r2(r) ** a)


class ZeroDensity(Density):
    radial = True

    def __call__(self, z):
        return np.zeros(np.shape(z))

    def on_circle(self, r: float, m: int) -> np.ndarray:
        return np.zeros(m)


class ScaledDensity(Density):
    def __init__(self, base: Density, c: float):
        self.base = base
        self.c = c
        self.radial = base.radial

    def __call__(self, z):
        return self.c * self.base(z)

    def on_circle(self, r: float, m: int) -> np.ndarray:
        return self.c * self.base.on_circle(r, m)


class ModulusDensity(Density):
    """factor * |g(z)|^2 (1-|z|^2)^exponent for a Taylor series g."""

    def __init__(self, g: TaylorSeries, exponent: float, factor: float = 1.0):
        self.g = g
        self.exponent = exponent
        self.factor = factor
        # a single monomial has radial modulus
        self.radial = int(np.count_nonzero(g.coeffs)) <= 1

    def _profile(self, r: float) -> float:
        k = np.flatnonzero(self.g.coeffs)
        mod = abs(self.g.coeffs[k[0]]) * r ** int(k[0]) if k.size else 0.0
        return self.factor * mod**2 * float(one_minus_r2(r)) ** self.exponent

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return self.factor * np.abs(self.g(z)) ** 2 * one_minus_r2(np.abs(z)) ** self.exponent

    def on_circle(self, r: float, m: int) -> np.ndarray:
        if self.radial:
            return np.full(m, self._profile(float(r)))
        vals = self.g.on_circle(r, m)
        return self.factor * np.abs(vals) ** 2 * float(one_minus_r2(r)) ** self.exponent


def derivative_density(f: TaylorSeries, exponent: float, factor: float = 1.0) -> ModulusDensity:
    """|f'(z)|^2 (1-|z|^2)^exponent."""
    return ModulusDensity(f.derivative(), exponent, factor)


class GradientDensity(Density):
    """|grad F^(z)|^2 (1-|z|^2)^exponent for the harmonic extension of boundary data F."""

    def __init__(self, F, exponent: float):
        F = as_fourier(F)
        self.F = F
        self.exponent = exponent
        self._dz = F.analytic_part().derivative()
        self._dzbar = F.antianalytic_part().derivative()
        # one term on each side gives a radial density
        self.radial = all(int(np.count_nonzero(g.coeffs)) <= 1 for g in (self._dz, self._dzbar))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        g = 4.0 * (np.abs(self._dz(z)) ** 2 + np.abs(self._dzbar(np.conj(z))) ** 2)
        return g * one_minus_r2(np.abs(z)) ** self.exponent

    def on_circle(self, r: float, m: int) -> np.ndarray:
        if self.radial:
            return np.full(m, float(self(np.asarray(complex(r)))))
        a = self._dz.on_circle(r, m)
        # conj(z) at midpoint j is the midpoint m-1-j rotated by a full turn
        c = self._dzbar.on_circle(r, m)[::-1]
        g = 4.0 * (np.abs(a) ** 2 + np.abs(c) ** 2)
        return g * float(one_minus_r2(r)) ** self.exponent


def as_density(w) -> Density:
    if isinstance(w, Density):
        return w
    if callable(w):
        return FunctionDensity(w)
    if isinstance(w, (int, float, np.integer, np.floating)):
        c = float(w)
        return RadialDensity(lambda r: np.full(np.shape(r), c))
    raise TypeError(f"cannot interpret {type(w).__name__} as a density")


__all__ = [
    "Density",
    "FunctionDensity",
    "RadialDensity",
    "ZeroDensity",
    "ScaledDensity",
    "ModulusDensity",
    "GradientDensity",
    "power_weight",
    "derivative_density",
    "as_density",
    "midpoint_angles",
    "one_minus_r2",
]
