"""Generators for the test-function families used by the experiments."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .series import FourierSeries, TaylorSeries

DEFAULT_DEGREE = 512
FB_TAIL_TOL = 1e-12
MAX_DEGREE = 1 << 18

KINDS = ("monomial", "polynomial", "lacunary", "fbTest", "boundaryLacunary")


class TruncationError(ValueError):
    """The requested series cannot be truncated within the tail tolerance."""


def _complex_param(v) -> complex:
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1] if len(v) > 1 else 0.0)
    return complex(v)


@dataclass(frozen=True)
class FamilySpec:
    """A member of one of the named test families, with truncation degree ``N``."""

    kind: str
    params: dict = field(default_factory=dict)
    N: int = DEFAULT_DEGREE

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}; expected one of {KINDS}")
        if self.N < 0:
            raise ValueError("truncation degree must be nonnegative")

    def to_json(self) -> dict:
        params = {}
        for k, v in self.params.items():
            params[k] = [v.real, v.imag] if isinstance(v, complex) else v
        return {"kind": self.kind, "params": params, "N": self.N}

    @classmethod
    def from_json(cls, doc) -> FamilySpec:
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(doc["kind"], dict(doc.get("params", {})), int(doc.get("N", DEFAULT_DEGREE)))


def monomial(k: int) -> TaylorSeries:
    a = np.zeros(k + 1, dtype=complex)
    a[k] = 1.0
    return TaylorSeries(a)


def random_polynomial(degree: int, seed: int = 0) -> TaylorSeries:
    """Coefficients i.i.d. uniform on the unit square [0,1) x [0,1)i."""
    rng = np.random.default_rng(seed)
    re = rng.random(degree + 1)
    im = rng.random(degree + 1)
    return TaylorSeries(re + 1j * im)


def lacunary(gamma: float = 2.0, K: int = 3) -> TaylorSeries:
    """sum_{k=0..K} 2^{-k gamma} z^{2^k}."""
    a = np.zeros(2**K + 1, dtype=complex)
    for k in range(K + 1):
        a[2**k] = 2.0 ** (-k * gamma)
    return TaylorSeries(a)


def boundary_lacunary(gamma: float = 2.0, K: int = 3) -> FourierSeries:
    """Boundary function sum_{k=0..K} 2^{-k gamma} e^{i 2^k theta}."""
    return lacunary(gamma, K).trace()


def fb_degree(b: complex, N: int = DEFAULT_DEGREE, tol: float = FB_TAIL_TOL) -> int:
    """Smallest admissible truncation degree >= N with |b|^N below ``tol``."""
    rb = abs(b)
    if rb >= 1:
        raise ValueError(f"fbTest needs |b| < 1: got {rb}")
    if rb == 0 or rb**N < tol:
        return N
    need = math.ceil(math.log(tol) / math.log(rb))
    if need > MAX_DEGREE:
        raise TruncationError(f"|b|={rb} needs degree {need} > {MAX_DEGREE} for tail {tol}")
    return max(N, need)


def fb_test(b: complex, beta: float, N: int = DEFAULT_DEGREE) -> TaylorSeries:
    """(1-|b|^2)^{2-2beta} (sigma_b(z) - b) expanded as a geometric series.

    a_0 = 0 and a_k = -(1-|b|^2)^{3-2beta} conj(b)^{k-1}; the degree is raised
    until |b|^N drops below the tail tolerance.
    """
    b = complex(b)
    N = fb_degree(b, max(N, 1))
    k = np.arange(1, N + 1)
    a = np.zeros(N + 1, dtype=complex)
    scale = (1.0 - abs(b) ** 2) ** (3.0 - 2.0 * beta)
    with np.errstate(under="ignore"):
        a[1:] = -scale * np.power(np.conj(b), k - 1)
    return TaylorSeries(a)


def make_family(spec: FamilySpec):
    """Materialize a FamilySpec as a TaylorSeries (or FourierSeries for boundary kinds)."""
    p = spec.params
    if spec.kind == "monomial":
        return monomial(int(p.get("k", 1)))
    if spec.kind == "polynomial":
        degree = int(p.get("degree", min(spec.N, 16)))
        return random_polynomial(degree, int(p.get("seed", 0)))
    if spec.kind in ("lacunary", "boundaryLacunary"):
        gamma = float(p.get("gamma", 2.0))
        K = int(p.get("K", 3))
        if 2**K > spec.N:
            raise ValueError(f"lacunary K={K} needs N >= {2**K}: got N={spec.N}")
        return lacunary(gamma, K) if spec.kind == "lacunary" else boundary_lacunary(gamma, K)
    if spec.kind == "fbTest":
        return fb_test(_complex_param(p.get("b", 0.0)), float(p["beta"]), spec.N)
    raise AssertionError(spec.kind)
