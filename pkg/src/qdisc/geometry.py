"""Disc geometry: the Moebius involution, arcs, Carleson boxes and supremum grids."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

TWO_PI = 2.0 * math.pi


def mobius(a: complex, z):
    """sigma_a(z) = (a - z) / (1 - conj(a) z), the involution of the disc swapping 0 and a."""
    a = complex(a)
    if abs(a) >= 1:
        raise ValueError(f"mobius needs |a| < 1: got |a| = {abs(a)}")
    z = np.asarray(z, dtype=complex)
    out = (a - z) / (1.0 - np.conj(a) * z)
    return out if out.ndim else complex(out)


def one_minus_sigma_sq(a: complex, z):
    """1 - |sigma_a(z)|^2 in the cancellation-free form (1-|a|^2)(1-|z|^2)/|1-conj(a)z|^2."""
    z = np.asarray(z, dtype=complex)
    return (1 - abs(a) ** 2) * (1 - np.abs(z) ** 2) / np.abs(1 - np.conj(a) * z) ** 2


@dataclass(frozen=True)
class Arc:
    """Arc of the unit circle centred at ``center`` (radians) of arclength ``length``."""

    center: float
    length: float

    def __post_init__(self) -> None:
        if not 0.0 < self.length <= TWO_PI + 1e-12:
            raise ValueError(f"arc length must lie in (0, 2pi]: got {self.length}")
        object.__setattr__(self, "center", float(self.center) % TWO_PI)
        object.__setattr__(self, "length", min(float(self.length), TWO_PI))

    @classmethod
    def from_norm(cls, center: float, norm_length: float) -> Arc:
        return cls(center, norm_length * TWO_PI)

    @property
    def norm_length(self) -> float:
        """|I| = arclength / 2pi, in (0, 1]."""
        return self.length / TWO_PI

    @property
    def start(self) -> float:
        return self.center - self.length / 2

    @property
    def end(self) -> float:
        return self.center + self.length / 2

    @property
    def box_depth(self) -> float:
        """Radial depth of S(I): the box is 1 - |I| <= |z| < 1."""
        return self.norm_length

    def contains_angle(self, theta) -> np.ndarray:
        d = (np.asarray(theta) - self.center + math.pi) % TWO_PI - math.pi
        return np.abs(d) <= self.length / 2

    def in_box(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        return (r >= 1 - self.norm_length) & (r < 1) & self.contains_angle(np.angle(z))

    def scaled(self, factor: float) -> Arc:
        """Concentric arc with ``factor`` times the length (capped at the full circle)."""
        return Arc(self.center, min(self.length * factor, TWO_PI))

    def to_json(self) -> dict:
        return {"center": self.center, "length": self.length, "normLength": self.norm_length}


@dataclass(frozen=True)
class ArcGrid:
    """Arcs with ``centers`` equispaced centres and normalized lengths 2^-k, k = 0..k_max."""

    centers: int = 128
    k_max: int = 10
    phase: float = 0.0

    def __post_init__(self) -> None:
        if self.centers < 1 or self.k_max < 0:
            raise ValueError("ArcGrid needs centers >= 1 and k_max >= 0")

    @property
    def center_angles(self) -> np.ndarray:
        return self.phase + TWO_PI * np.arange(self.centers) / self.centers

    @property
    def norm_lengths(self) -> np.ndarray:
        return 2.0 ** -np.arange(self.k_max + 1)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.k_max + 1, self.centers)

    def arc(self, k: int, c: int) -> Arc:
        return Arc.from_norm(self.center_angles[c], self.norm_lengths[k])

    def arcs(self):
        for k in range(self.k_max + 1):
            for c in range(self.centers):
                yield (k, c), self.arc(k, c)

    def to_json(self) -> dict:
        return {"centers": self.centers, "kMax": self.k_max, "phase": self.phase}


@dataclass(frozen=True)
class PointGrid:
    """Disc points with radii 1 - 2^-k (k = 0..k_max, so k = 0 is the origin) and equispaced angles."""

    angles: int = 64
    k_max: int = 10

    @property
    def radii(self) -> np.ndarray:
        return 1.0 - 2.0 ** -np.arange(self.k_max + 1)

    @property
    def angle_values(self) -> np.ndarray:
        return TWO_PI * np.arange(self.angles) / self.angles

    @property
    def shape(self) -> tuple[int, int]:
        return (self.k_max + 1, self.angles)

    def point(self, i: int, j: int) -> complex:
        return complex(self.radii[i] * np.exp(1j * self.angle_values[j]))

    def to_json(self) -> dict:
        return {"angles": self.angles, "kMax": self.k_max}
