"""Finite Taylor and Fourier series: evaluation, calculus and serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np


def _as_coeffs(coeffs) -> np.ndarray:
    a = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
    if a.ndim != 1 or a.size == 0:
        raise ValueError("coefficients must be a non-empty 1-D sequence")
    a.setflags(write=False)
    return a


def _circle_fft(b: np.ndarray, m: int) -> np.ndarray:
    """Values of sum_k b_k e^{ik theta_j} at the m cell midpoints theta_j = (j+1/2) 2pi/m.

    ``b`` is indexed by nonnegative frequency; frequencies >= m alias mod m.
    """
    k = np.arange(b.size)
    twisted = b * np.exp(1j * np.pi * k / m)
    if b.size > m:
        folded = np.zeros(m, dtype=complex)
        np.add.at(folded, k % m, twisted)
    else:
        folded = np.zeros(m, dtype=complex)
        folded[: b.size] = twisted
    return np.fft.ifft(folded) * m


@dataclass(frozen=True, eq=False)
class TaylorSeries:
    """Polynomial sum_{k<=N} a_k z^k standing in for an analytic function on the disc."""

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        # Horner from the top coefficient
        out = np.full(z.shape, self.coeffs[-1], dtype=complex)
        for a in self.coeffs[-2::-1]:
            out = out * z + a
        return out

    def on_circle(self, r: float, m: int) -> np.ndarray:
        """Values at r e^{i theta_j} on the m-point midpoint angular grid."""
        k = np.arange(self.coeffs.size)
        with np.errstate(under="ignore"):
            rk = np.power(float(r), k) if r > 0 else (k == 0).astype(float)
        return _circle_fft(self.coeffs * rk, m)

    def derivative(self) -> TaylorSeries:
        if self.degree == 0:
            return TaylorSeries([0.0])
        k = np.arange(1, self.coeffs.size)
        return TaylorSeries(self.coeffs[1:] * k)

    def antiderivative(self) -> TaylorSeries:
        k = np.arange(1, self.coeffs.size + 1)
        return TaylorSeries(np.concatenate([[0.0], self.coeffs / k]))

    def truncate(self, n: int) -> TaylorSeries:
        return TaylorSeries(self.coeffs[: n + 1])

    def padded(self, n: int) -> np.ndarray:
        out = np.zeros(max(n + 1, self.coeffs.size), dtype=complex)
        out[: self.coeffs.size] = self.coeffs
        return out

    def rotate(self, phi: float) -> TaylorSeries:
        """The series of z -> f(e^{i phi} z)."""
        k = np.arange(self.coeffs.size)
        return TaylorSeries(self.coeffs * np.exp(1j * phi * k))

    def trace(self) -> FourierSeries:
        """Boundary values as a Fourier series (no negative frequencies)."""
        return FourierSeries(self.coeffs, nmin=0)

    def __add__(self, other: TaylorSeries) -> TaylorSeries:
        n = max(self.degree, other.degree)
        return TaylorSeries(self.padded(n) + other.padded(n))

    def __sub__(self, other: TaylorSeries) -> TaylorSeries:
        n = max(self.degree, other.degree)
        return TaylorSeries(self.padded(n) - other.padded(n))

    def __mul__(self, c) -> TaylorSeries:
        if isinstance(c, TaylorSeries):
            return cauchy_product(self, c)
        return TaylorSeries(self.coeffs * complex(c))

    __rmul__ = __mul__

    def __neg__(self) -> TaylorSeries:
        return TaylorSeries(-self.coeffs)

    def allclose(self, other: TaylorSeries, atol: float = 1e-12) -> bool:
        n = max(self.degree, other.degree)
        return bool(np.max(np.abs(self.padded(n) - other.padded(n))) <= atol)

    def to_json(self) -> dict:
        return {"coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}

    @classmethod
    def from_json(cls, doc) -> TaylorSeries:
        if isinstance(doc, str):
            doc = json.loads(doc)
        pairs = doc["coeffs"]
        coeffs = [complex(*pair) if isinstance(pair, (list, tuple)) else complex(pair) for pair in pairs]
        return cls(coeffs)

    def __repr__(self) -> str:
        return f"TaylorSeries(degree={self.degree})"


def cauchy_product(f: TaylorSeries, g: TaylorSeries, budget: int | None = None) -> TaylorSeries:
    """Coefficients c_k = sum_{i+j=k} a_i b_j for k <= budget (default: exact product)."""
    c = np.convolve(f.coeffs, g.coeffs)
    if budget is not None:
        c = c[: budget + 1]
    return TaylorSeries(c)


def derivative(f: TaylorSeries) -> TaylorSeries:
    return f.derivative()


def antiderivative(f: TaylorSeries) -> TaylorSeries:
    """The primitive F with F(0) = 0 and F' = f."""
    return f.antiderivative()


@dataclass(frozen=True, eq=False)
class FourierSeries:
    """Trigonometric polynomial sum_{n=nmin}^{nmin+len-1} c_n e^{in theta}."""

    coeffs: np.ndarray
    nmin: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _as_coeffs(self.coeffs))
        object.__setattr__(self, "nmin", int(self.nmin))

    @classmethod
    def from_dict(cls, c: dict[int, complex]) -> FourierSeries:
        lo, hi = min(c), max(c)
        arr = np.zeros(hi - lo + 1, dtype=complex)
        for n, v in c.items():
            arr[n - lo] = v
        return cls(arr, nmin=lo)

    @property
    def frequencies(self) -> np.ndarray:
        return np.arange(self.nmin, self.nmin + self.coeffs.size)

    def coefficient(self, n: int) -> complex:
        i = n - self.nmin
        return complex(self.coeffs[i]) if 0 <= i < self.coeffs.size else 0j

    def nonzero(self) -> tuple[np.ndarray, np.ndarray]:
        mask = self.coeffs != 0
        return self.frequencies[mask], self.coeffs[mask]

    def __call__(self, theta):
        """Boundary value F(e^{i theta})."""
        theta = np.asarray(theta, dtype=float)
        n, c = self.nonzero()
        if n.size == 0:
            return np.zeros(theta.shape, dtype=complex)
        phase = np.exp(1j * np.multiply.outer(theta, n))
        return phase @ c

    def l2_norm_sq(self) -> float:
        """Parseval: (1/2pi) int |F|^2 dtheta."""
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def analytic_part(self) -> TaylorSeries:
        """Nonnegative frequencies as a Taylor series."""
        top = int(self.frequencies[-1])
        out = np.zeros(max(top, 0) + 1, dtype=complex)
        lo = max(self.nmin, 0)
        if top >= lo:
            out[lo : top + 1] = self.coeffs[lo - self.nmin : top + 1 - self.nmin]
        return TaylorSeries(out)

    def antianalytic_part(self) -> TaylorSeries:
        """Series sum_{n>=1} c_{-n} w^n; the harmonic extension is analytic + conj-analytic."""
        top = -self.nmin
        out = np.zeros(max(top, 0) + 1, dtype=complex)
        hi = min(int(self.frequencies[-1]), -1)
        # frequencies -top..hi map to powers top..-hi
        if top >= 1 and hi >= self.nmin:
            neg = self.coeffs[: hi - self.nmin + 1]
            out[-hi : top + 1] = neg[::-1]
        return TaylorSeries(out)

    def harmonic_extension(self, z):
        """Poisson extension: c_n -> c_n r^{|n|} e^{in theta}."""
        z = np.asarray(z, dtype=complex)
        return self.analytic_part()(z) + self.antianalytic_part()(np.conj(z))

    def __mul__(self, c) -> FourierSeries:
        return FourierSeries(self.coeffs * complex(c), self.nmin)

    __rmul__ = __mul__

    def to_json(self) -> dict:
        return {
            "nmin": self.nmin,
            "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, doc) -> FourierSeries:
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls([complex(*pair) for pair in doc["coeffs"]], nmin=int(doc.get("nmin", 0)))

    def __repr__(self) -> str:
        return f"FourierSeries(n={self.nmin}..{self.nmin + self.coeffs.size - 1})"


def as_fourier(F) -> FourierSeries:
    if isinstance(F, FourierSeries):
        return F
    if isinstance(F, TaylorSeries):
        return F.trace()
    raise TypeError(f"expected FourierSeries or TaylorSeries, got {type(F).__name__}")


def gradient_sq(F: FourierSeries, z) -> np.ndarray:
    """|grad F^(z)|^2 with grad = (2 d/dz, 2 d/dzbar) on the harmonic extension."""
    z = np.asarray(z, dtype=complex)
    dz = F.analytic_part().derivative()(z)
    dzbar = F.antianalytic_part().derivative()(np.conj(z))
    return 4.0 * (np.abs(dz) ** 2 + np.abs(dzbar) ** 2)


def poisson_gradient_density(F, params, z) -> np.ndarray:
    """|grad F^(z)|^2 (1-|z|^2)^(p-2+2beta) for the harmonic extension of F."""
    F = as_fourier(F)
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(z) >= 1):
        raise ValueError("poisson_gradient_density needs |z| < 1")
    return gradient_sq(F, z) * (1.0 - np.abs(z) ** 2) ** params.box_weight_exp
