"""Vectors, unit-sphere areas, free-space kernels and the sphere inversion."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

import numpy as np


class GreenError(ValueError):
    """Base class for invalid evaluation requests."""


class SourceCoincidenceError(GreenError):
    """The evaluation point sits on (or numerically at) the source."""


class CenteredSourceError(GreenError):
    """The requested formula needs a source off the ball centre."""


class Method(str, enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


class Flag(str, enum.Enum):
    NEAR_SOURCE_SINGULARITY = "near_source_singularity"
    COLLINEAR_FALLBACK = "collinear_fallback"
    CENTERED_SOURCE = "centered_source"


@dataclass(frozen=True)
class BallSpec:
    dim: int
    radius: float = 1.0

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise GreenError(f"dimension must be a positive integer, got {self.dim!r}")
        if not (self.radius > 0 and math.isfinite(self.radius)):
            raise GreenError(f"radius must be positive and finite, got {self.radius!r}")


@dataclass(frozen=True)
class GreenEval:
    """A Green's function value together with how it was obtained."""

    value: float
    method: Method = Method.CLOSED_FORM
    flags: frozenset = field(default_factory=frozenset)

    def __float__(self):
        return self.value

    def with_flags(self, *extra: Flag) -> "GreenEval":
        return GreenEval(self.value, self.method, self.flags | frozenset(extra))


def as_vector(v: Sequence[float] | float, dim: int | None = None) -> np.ndarray:
    """Convert to a 1-D float array, checking length and finiteness."""
    arr = np.atleast_1d(np.asarray(v, dtype=float))
    if arr.ndim != 1 or arr.size < 1:
        raise GreenError(f"expected a non-empty 1-D vector, got shape {arr.shape}")
    # a non-finite component makes the sum non-finite
    if not math.isfinite(arr.sum()):
        raise GreenError("vector components must be finite")
    if dim is not None and arr.size != dim:
        raise GreenError(f"expected {dim} components, got {arr.size}")
    return arr


def norm(v: np.ndarray) -> float:
    return math.sqrt(float(np.dot(v, v)))


@lru_cache(maxsize=None)
def surface_area(n: int) -> float:
    """Surface area of the unit sphere in R^n, 2 pi^(n/2) / Gamma(n/2).

    Gamma at integers and half-integers is built from the recurrence
    Gamma(x + 1) = x Gamma(x), so no special-function library is involved.
    For odd n the sqrt(pi) factors of numerator and denominator cancel
    analytically.
    """
    if int(n) != n or n < 1:
        raise GreenError(f"dimension must be a positive integer, got {n!r}")
    n = int(n)
    if n % 2 == 0:
        # Gamma(n/2) = (n/2 - 1)!
        return 2.0 * math.pi ** (n // 2) / math.factorial(n // 2 - 1)
    # Gamma(n/2) = sqrt(pi) * prod_{i=1}^{(n-1)/2} (i - 1/2)
    g = 1.0
    for i in range(1, (n - 1) // 2 + 1):
        g *= i - 0.5
    return 2.0 * math.pi ** ((n - 1) // 2) / g


def fundamental_phi(x) -> float:
    """Free-space Laplace kernel with Laplacian delta_0 in R^n."""
    x = as_vector(x)
    return phi_radial(norm(x), x.size)


def phi_radial(r: float, n: int) -> float:
    """:func:`fundamental_phi` as a function of |x| and the dimension."""
    if r == 0.0:
        raise SourceCoincidenceError("fundamental solution is singular at the origin")
    w = surface_area(n)
    if n == 1:
        return r / w
    if n == 2:
        return math.log(r) / w
    return -1.0 / ((n - 2) * w * r ** (n - 2))


def fundamental_psi(x) -> np.ndarray:
    """Gradient of :func:`fundamental_phi`, x / (omega_n |x|^n)."""
    x = as_vector(x)
    r = norm(x)
    if r == 0.0:
        raise SourceCoincidenceError("dipole kernel is singular at the origin")
    return x / (surface_area(x.size) * r ** x.size)


def invert_point(z) -> np.ndarray:
    """Reflection of z across the unit sphere, z / |z|^2."""
    z = as_vector(z)
    r2 = float(np.dot(z, z))
    if r2 == 0.0:
        raise CenteredSourceError("the centre has no finite image point")
    if r2 >= 1.0:
        raise GreenError("inversion is only used for points strictly inside the unit ball")
    return z / r2
