"""Independent numerical machinery: adaptive quadrature and finite differences.

Nothing in here knows about the closed forms; these routines only see
callables and are used to check them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import GreenError, as_vector, norm


class QuadratureError(RuntimeError):
    """Adaptive quadrature ran out of subdivisions."""


class StencilError(GreenError):
    """A finite-difference stencil left the domain of the field."""


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-13
    rel_tol: float = 1e-12
    max_subdivisions: int = 5000

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise GreenError("quadrature tolerances must be positive")
        if int(self.max_subdivisions) != self.max_subdivisions or self.max_subdivisions < 1:
            raise GreenError("max_subdivisions must be a positive integer")


# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
# (abscissae in decreasing order; the last one is the centre).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
# Gauss weights at _XGK[1], _XGK[3], _XGK[5], _XGK[7]
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
_WK = np.concatenate([_WGK[:-1], _WGK[::-1]])
_WG15 = np.zeros(15)
_WG15[[1, 3, 5]] = _WG[:3]
_WG15[[13, 11, 9]] = _WG[:3]
_WG15[7] = _WG[3]

_EPS = np.finfo(float).eps


def _gk15(f, a: np.ndarray, b: np.ndarray):
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    pts = mid[:, None] + half[:, None] * _NODES[None, :]
    vals = np.asarray(f(pts.ravel()), dtype=float).reshape(pts.shape)
    k = half * (vals @ _WK)
    g = half * (vals @ _WG15)
    absk = np.abs(half) * (np.abs(vals) @ _WK)
    return k, np.abs(k - g), absk


def quad_integral(f: Callable, lo: float, hi: float, cfg: QuadratureConfig | None = None) -> float:
    """Adaptive Gauss-Kronrod (7, 15) quadrature of a vectorised integrand.

    ``f`` receives a 1-D array of abscissae and must return the integrand
    values at all of them.  Every pass evaluates all unconverged
    intervals at once and bisects those whose error estimate exceeds their
    length-proportional share of the tolerance.
    """
    cfg = cfg or QuadratureConfig()
    lo, hi = float(lo), float(hi)
    if hi < lo:
        raise GreenError("quadrature requires lo <= hi")
    if hi == lo:
        return 0.0
    width = hi - lo
    a = np.array([lo])
    b = np.array([hi])
    done = 0.0
    done_err = 0.0
    subdivisions = 0
    while True:
        k, err, absk = _gk15(f, a, b)
        if not np.all(np.isfinite(k)):
            raise QuadratureError("integrand is not finite on the interval")
        total = done + k.sum()
        tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
        if done_err + err.sum() <= tol:
            return float(total)
        share = tol * (b - a) / width
        # rounding floor: no rule can resolve below a few ulps of |f|
        ok = (err <= share) | (err <= 50 * _EPS * absk)
        done += k[ok].sum()
        done_err += err[ok].sum()
        a, b = a[~ok], b[~ok]
        if a.size == 0:
            return float(done)
        subdivisions += a.size
        if subdivisions > cfg.max_subdivisions:
            raise QuadratureError(
                f"no convergence after {subdivisions} subdivisions "
                f"(error estimate {done_err + err.sum():.3e}, tolerance {tol:.3e})"
            )
        m = 0.5 * (a + b)
        a, b = np.concatenate([a, m]), np.concatenate([m, b])
        order = np.argsort(a, kind="stable")
        a, b = a[order], b[order]


def _check_inside(points, radius):
    if radius is None:
        return
    for pt in points:
        if norm(pt) > radius * (1.0 + 1e-12):
            raise StencilError("finite-difference stencil leaves the ball")


def fd_gradient(g: Callable, x, h: float = 1e-6, radius: float | None = None) -> np.ndarray:
    """Central-difference gradient of a scalar field."""
    x = as_vector(x)
    out = np.empty(x.size)
    stencil = []
    for i in range(x.size):
        step = np.zeros(x.size)
        step[i] = h
        stencil.append((x + step, x - step))
    _check_inside([p for pair in stencil for p in pair], radius)
    for i, (xp, xm) in enumerate(stencil):
        out[i] = (float(g(xp)) - float(g(xm))) / (2 * h)
    return out


def fd_laplacian(
    g: Callable, x, h: float = 1e-3, radius: float | None = None, richardson: bool = False
) -> float:
    """Sum of central second differences along the coordinate axes.

    With ``richardson`` the steps h and h/2 are combined to cancel the
    O(h^2) truncation term.
    """
    x = as_vector(x)
    g0 = float(g(x))

    def lap(step):
        pts = []
        for i in range(x.size):
            d = np.zeros(x.size)
            d[i] = step
            pts.append((x + d, x - d))
        _check_inside([p for pair in pts for p in pair], radius)
        return sum((float(g(xp)) - g0) + (float(g(xm)) - g0) for xp, xm in pts) / step**2

    if not richardson:
        return lap(h)
    return (4.0 * lap(0.5 * h) - lap(h)) / 3.0


def boundary_normal_derivative(g: Callable, u, h: float = 1e-6, radius: float | None = None) -> float:
    """Outward normal derivative at a point of a sphere centred at the origin.

    Uses the second-order one-sided stencil along nu = u/|u| (points only
    inside the ball), Richardson-extrapolated over h and h/2.
    """
    u = as_vector(u)
    R = norm(u)
    if radius is not None and abs(R - radius) > 1e-12 * max(1.0, radius):
        raise GreenError("boundary point must lie on the sphere")
    nu = u / R
    g0 = float(g(u))

    def one_sided(step):
        g1 = float(g(u - step * nu))
        g2 = float(g(u - 2 * step * nu))
        return (3.0 * (g0 - g1) - (g1 - g2)) / (2 * step)

    return (4.0 * one_sided(0.5 * h) - one_sided(h)) / 3.0
