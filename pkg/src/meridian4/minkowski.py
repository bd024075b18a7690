"""Minkowski 4-space linear algebra: vectors, the signature-(3,1) metric and
the pseudo-orthonormal (lightlike) basis."""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Vec4",
    "LightlikePair",
    "minkowski_dot",
    "lightlike_basis",
    "from_lightlike",
    "E1",
    "E2",
    "E3",
    "E4",
]

_SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class Vec4:
    """Vector in R^4_1, stored in coordinates w.r.t. the orthonormal basis
    {e1, e2, e3, e4} (the only storage format; lightlike coordinates are a
    conversion)."""

    c1: float
    c2: float
    c3: float
    c4: float

    def __post_init__(self):
        if not all(math.isfinite(c) for c in (self.c1, self.c2, self.c3, self.c4)):
            raise ValueError(f"non-finite Vec4 components: {self}")

    def __add__(self, other: "Vec4") -> "Vec4":
        return Vec4(self.c1 + other.c1, self.c2 + other.c2,
                    self.c3 + other.c3, self.c4 + other.c4)

    def __sub__(self, other: "Vec4") -> "Vec4":
        return Vec4(self.c1 - other.c1, self.c2 - other.c2,
                    self.c3 - other.c3, self.c4 - other.c4)

    def __mul__(self, s: float) -> "Vec4":
        return Vec4(self.c1 * s, self.c2 * s, self.c3 * s, self.c4 * s)

    __rmul__ = __mul__

    def __truediv__(self, s: float) -> "Vec4":
        return self * (1.0 / s)

    def __neg__(self) -> "Vec4":
        return self * -1.0

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3, self.c4])

    @staticmethod
    def from_array(a) -> "Vec4":
        return Vec4(float(a[0]), float(a[1]), float(a[2]), float(a[3]))


def minkowski_dot(a: Vec4, b: Vec4) -> float:
    """Inner product of signature (3,1): a1*b1 + a2*b2 + a3*b3 - a4*b4."""
    return a.c1 * b.c1 + a.c2 * b.c2 + a.c3 * b.c3 - a.c4 * b.c4


E1 = Vec4(1.0, 0.0, 0.0, 0.0)
E2 = Vec4(0.0, 1.0, 0.0, 0.0)
E3 = Vec4(0.0, 0.0, 1.0, 0.0)
E4 = Vec4(0.0, 0.0, 0.0, 1.0)


@dataclass(frozen=True)
class LightlikePair:
    """The lightlike pair xi1 = (e3+e4)/sqrt2, xi2 = (-e3+e4)/sqrt2 with
    <xi1,xi1> = <xi2,xi2> = 0 and <xi1,xi2> = -1."""

    xi1: Vec4
    xi2: Vec4


def lightlike_basis() -> LightlikePair:
    """Return the pseudo-orthonormal lightlike pair (xi1, xi2) in e-coordinates."""
    return LightlikePair(
        xi1=Vec4(0.0, 0.0, 1.0 / _SQRT2, 1.0 / _SQRT2),
        xi2=Vec4(0.0, 0.0, -1.0 / _SQRT2, 1.0 / _SQRT2),
    )


def from_lightlike(a: float, b: float, p: float, q: float) -> Vec4:
    """Convert a*e1 + b*e2 + p*xi1 + q*xi2 to e-coordinates."""
    return Vec4(a, b, (p - q) / _SQRT2, (p + q) / _SQRT2)
