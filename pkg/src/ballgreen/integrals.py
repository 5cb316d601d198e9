"""Closed forms for the line integrals behind the ball Green's functions.

Three families are evaluated here, all along the segment s -> s x, 0 <= s <= c,
measured from the unit vector e:

* ``primitive_J(j, a)``  = int_0^a (1 + t^2)^(-j/2) dt
* ``z_integral(j, ...)`` = int_0^c |s x - e|^(-j) ds
* ``gamma_integral(k, ...)`` = int_0^c (e.x - 1/s) / |s x - e|^k + 1/s ds

Writing r = |x|, p = e.x / r and A = sqrt(1 - p^2), the squared distance
is |s x - e|^2 = (s r - p)^2 + A^2, and t = (s r - p) / A maps Z_j onto a
difference of primitives J_j.  That difference cancels badly in two
places, so ``z_integral`` switches between three evaluations:

``closed``
    (J_j(t2) - J_j(t1)) / (r A^(j-1)).
``series``
    r c <= 1/4.  The generating function of Gegenbauer polynomials,
    (1 - 2 p h + h^2)^(-j/2) = sum_m C_m^(j/2)(p) h^m with h = s r,
    integrated term by term.  Covers x -> 0 and short segments.
``collinear``
    Both ends of the segment seen from e under a small angle (x almost
    parallel to e).  With t = cot(phi) the primitive becomes
    int sin^(j-2)(phi) dphi, which is expanded in phi; the 1/A^(j-1)
    prefactor is absorbed exactly so that A = 0 is a regular point.

Odd-j primitives: the substitution t = 1/sqrt(z^2 - 1) sends t = a to
z = sqrt(1 + 1/a^2) (not 1 + 1/a^2), and expanding (z^2 - 1)^m gives the
alternating signs (-1)^(m-i).  With w = 1/z = a / sqrt(1 + a^2) this reads

    J_j(a) = sum_{i=0}^{m} C(m, i) (-1)^(m-i) w^(j-2-2i) / (j-2-2i),
    m = (j - 3) / 2,

and J_1(a) = asinh(a) = log(a + sqrt(1 + a^2)).  The uncorrected limit
(and the j = 1 value log(2 a^2 + 1) / 2) disagree with quadrature; see
``scripts/odd_primitive_check.py``.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from .geometry import GreenError, as_vector, norm

SERIES_RC = 0.25
COLLINEAR_ANGLE = 0.5

CLOSED = "closed"
SERIES = "series"
COLLINEAR = "collinear"
ORIGIN = "origin"


def _double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def primitive_J(j: int, a: float) -> float:
    """int_0^a (1 + t^2)^(-j/2) dt for integer j >= 1 (odd in a)."""
    if int(j) != j or j < 1:
        raise GreenError(f"primitive order must be a positive integer, got {j!r}")
    j = int(j)
    a = float(a)
    if a == 0.0:
        return 0.0
    if a < 0.0:
        return -primitive_J(j, -a)
    if j == 1:
        return math.asinh(a)
    if j % 2 == 0:
        if math.isinf(a):
            inner = 0.5 * math.pi
        else:
            inner = math.atan(a)
            one_a2 = 1.0 + a * a
            for i in range(j - 2, 0, -2):
                inner += (
                    _double_factorial(i) / _double_factorial(i - 1)
                    * a / (i * one_a2 ** (i / 2))
                )
        return _double_factorial(j - 3) / _double_factorial(j - 2) * inner
    m = (j - 3) // 2
    w = 1.0 if math.isinf(a) else a / math.sqrt(1.0 + a * a)
    total = 0.0
    for i in range(m + 1):
        e = j - 2 - 2 * i
        total += math.comb(m, i) * (-1) ** (m - i) * w**e / e
    return total


class Chord:
    """Geometry of the segment {s x : 0 <= s <= c} relative to the unit vector e.

    Shared by all integrals of one (x, e) pair so that the projections are
    computed once.
    """

    __slots__ = ("dim", "r", "p", "ph", "A")

    def __init__(self, x, e, validate: bool = True):
        if validate:
            x = as_vector(x)
            e = as_vector(e, x.size)
            if abs(norm(e) - 1.0) > 1e-12:
                raise GreenError("direction e must be a unit vector")
        r = norm(x)
        if validate and r > 1.0 + 1e-12:
            raise GreenError("evaluation point must lie in the closed unit ball")
        self.dim = x.size
        self.r = r
        self.p = float(np.dot(e, x))
        if r == 0.0:
            self.ph = 0.0
            self.A = 1.0
        else:
            self.ph = max(-1.0, min(1.0, self.p / r))
            # sine of the angle between x and e, from the perpendicular part
            self.A = min(1.0, norm(x - self.p * e) / r)

    def q2m1(self, c: float) -> float:
        """|c x - e|^2 - 1, free of cancellation."""
        rc = self.r * c
        return rc * (rc - 2.0 * self.ph)

    def log_q(self, c: float) -> float:
        """log |c x - e|."""
        return 0.5 * math.log1p(self.q2m1(c))


def _check_c(c: float) -> float:
    c = float(c)
    if not (0.0 <= c < 1.0):
        raise GreenError(f"segment length c must lie in [0, 1), got {c!r}")
    return c


@lru_cache(maxsize=64)
def _sinc_power_coeffs(m: int, terms: int = 30) -> tuple:
    """Taylor coefficients in phi^2 of (sin(phi) / phi)^m."""
    base = np.array([(-1) ** k / math.factorial(2 * k + 1) for k in range(terms)])
    out = np.zeros(terms)
    out[0] = 1.0
    for _ in range(m):
        out = np.convolve(out, base)[:terms]
    return tuple(float(v) for v in out)


def _gegenbauer_moment(lam: float, t: float, h: float, c: float, shift: int) -> float:
    """sum_m C_m^(lam)(t) h^m c^(m+1+shift) / (m+1+shift)."""
    prev, cur = 0.0, 1.0
    # |C_m(t)| <= C_m(1); bound the tail with it
    bound = 1.0
    hm = 1.0
    cpow = c ** (1 + shift)
    total = cur * cpow / (1 + shift)
    for m in range(1, 2000):
        if m == 1:
            nxt = 2.0 * lam * t
        else:
            nxt = (2.0 * t * (m + lam - 1) * cur - (m + 2 * lam - 2) * prev) / m
        prev, cur = cur, nxt
        bound *= (m + 2 * lam - 1) / m
        hm *= h
        cpow *= c
        total += cur * hm * cpow / (m + 1 + shift)
        if bound * hm * cpow < 1e-18 * abs(total) and m > 2:
            break
    return total


def _z_collinear(j: int, g: Chord, c: float) -> float:
    """Z_j when both segment ends are seen from e under a small angle."""
    L1 = -g.ph
    L2 = g.r * c - g.ph
    lo, hi = sorted((abs(L1), abs(L2)))
    A = g.A
    rc = g.r * c
    if j == 1:
        slo = math.hypot(lo, A)
        shi = math.hypot(hi, A)
        # asinh(hi/A) - asinh(lo/A), with the ratio's excess over one kept exact
        excess = rc + rc * (hi + lo) / (shi + slo)
        return math.log1p(excess / (lo + slo)) / g.r
    m = j - 2

    def psi(L):
        u = A / L
        return (math.atan(u) / u if u > 0.0 else 1.0) / L

    p_lo, p_hi = psi(lo), psi(hi)
    den = lo * hi + A * A
    w = A * rc / den
    d = rc / den * (math.atan(w) / w if w > 0.0 else 1.0)
    coeffs = _sinc_power_coeffs(m)
    # diff[p] = p_lo^p - p_hi^p, via diff[p] = p_lo diff[p-1] + p_hi^(p-1) d
    diff = d
    hi_pow = 1.0
    power = 1
    total = 0.0
    A2k = 1.0
    for k, a_k in enumerate(coeffs):
        target = m + 1 + 2 * k
        while power < target:
            hi_pow *= p_hi
            diff = p_lo * diff + hi_pow * d
            power += 1
        term = a_k * A2k * diff / target
        total += term
        if k > 1 and abs(term) < 1e-18 * abs(total):
            break
        A2k *= A * A
    return total / g.r


def _z_closed(j: int, g: Chord, c: float) -> float:
    t1 = -g.ph / g.A
    t2 = (g.r * c - g.ph) / g.A
    return (primitive_J(j, t2) - primitive_J(j, t1)) / (g.r * g.A ** (j - 1))


def _is_collinear(g: Chord, c: float) -> bool:
    L1 = -g.ph
    L2 = g.r * c - g.ph
    if L1 * L2 <= 0.0:
        return False
    lo = min(abs(L1), abs(L2))
    return math.atan2(g.A, lo) <= COLLINEAR_ANGLE


def z_chord(j: int, g: Chord, c: float) -> tuple[float, str]:
    """Z_j on a prepared chord; returns (value, regime)."""
    if c == 0.0:
        return 0.0, CLOSED
    if g.r == 0.0:
        return c, ORIGIN
    if g.r * c <= SERIES_RC:
        return _gegenbauer_moment(0.5 * j, g.ph, g.r, c, 0), SERIES
    if _is_collinear(g, c):
        return _z_collinear(j, g, c), COLLINEAR
    return _z_closed(j, g, c), CLOSED


def z_integral(j: int, x, e, c: float) -> float:
    """int_0^c |s x - e|^(-j) ds for |e| = 1, |x| <= 1, 0 <= c < 1."""
    if int(j) != j or j < 1:
        raise GreenError(f"order must be a positive integer, got {j!r}")
    return z_chord(int(j), Chord(x, e), _check_c(c))[0]


def moment_chord(k: int, g: Chord, c: float) -> tuple[float, str]:
    """int_0^c s |s x - e|^(-k) ds; returns (value, regime)."""
    if c == 0.0:
        return 0.0, CLOSED
    if g.r == 0.0:
        return 0.5 * c * c, ORIGIN
    if g.r * c <= SERIES_RC:
        return _gegenbauer_moment(0.5 * k, g.ph, g.r, c, 1), SERIES
    z, regime = z_chord(k, g, c)
    if k == 2:
        radial = 0.5 * math.log1p(g.q2m1(c))
    else:
        radial = -math.expm1((2 - k) * g.log_q(c)) / (k - 2)
    return radial / g.r**2 + g.ph / g.r * z, regime


def gamma1_chord(g: Chord, c: float) -> float:
    """Gamma_1 with the log and arctanh terms merged.

    log((c/2) sqrt(|x|^2 - (e.x)^2)) - arctanh((c e.x - 1)/|cx - e|) equals
    log((1 - c e.x + |cx - e|) / 2), which stays finite on the axis of e;
    the directional log-ratio is rationalised on the side where its
    numerator and denominator would otherwise both vanish.
    """
    if c == 0.0 or g.r == 0.0:
        return 0.0
    if g.dim == 1:
        return 0.0
    rc = g.r * c
    q2m1 = g.q2m1(c)
    qm1 = q2m1 / (math.sqrt(1.0 + q2m1) + 1.0)
    merged = math.log1p(0.5 * (qm1 - c * g.p))
    if g.ph > 0.0:
        directional = -g.ph * math.log1p((qm1 - rc) / (1.0 + g.ph))
    else:
        directional = g.ph * math.log1p((rc + qm1) / (1.0 - g.ph))
    return directional + merged


def gamma1_arctanh_form(x, e, c: float) -> float:
    """Gamma_1 as the sum of a log, a directional log-ratio and an arctanh.

    Singular term by term when x is parallel to e; kept as an independent
    cross-check of :func:`gamma1_chord` off the axis.
    """
    x = as_vector(x)
    e = as_vector(e, x.size)
    r = norm(x)
    p = float(np.dot(e, x))
    q = norm(c * x - e)
    return (
        math.log(0.5 * c * math.sqrt(r * r - p * p))
        + p / r * math.log((c * r * r - p + r * q) / (r - p))
        - math.atanh((c * p - 1.0) / q)
    )


def gamma_chord(k: int, g: Chord, c: float) -> tuple[float, set]:
    """Gamma_k on a prepared chord; returns (value, regimes used)."""
    regimes: set = set()
    if c == 0.0 or g.r == 0.0:
        # the integrand vanishes identically at x = 0
        return 0.0, regimes
    if k == 1 and g.dim == 1:
        return 0.0, regimes
    lq = g.log_q(c)
    total = 0.0
    for j in range(k - 2, 0, -2):
        z, regime = z_chord(j, g, c)
        regimes.add(regime)
        total += -math.expm1(-j * lq) / j - g.p * z
    if k % 2 == 0:
        total += lq
    else:
        total += gamma1_chord(g, c)
    return total, regimes


def gamma_integral(k: int, x, e, c: float) -> float:
    """int_0^c (e.x - 1/s) / |s x - e|^k + 1/s ds, via the closed-form recursion."""
    if int(k) != k or k < 1:
        raise GreenError(f"order must be a positive integer, got {k!r}")
    return gamma_chord(int(k), Chord(x, e), _check_c(c))[0]
