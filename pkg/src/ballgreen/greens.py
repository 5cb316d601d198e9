"""Green's functions of the Neumann-Poisson and EEG problems on balls.

On the unit ball B in R^n the evaluators return fields with

    Laplacian G_z        = delta_z - n / omega_n,   grad G_z . nu = 0 on the sphere,
    Laplacian G_z^(EEG,D) = div(D delta_z),         grad G . nu = 0 on the sphere,

each determined up to an additive function of the source z.  The EEG field
is normalised so that a radial dipole D = |D| z/|z| reproduces the
image-charge form ``greens_eeg_radial`` exactly.  With that choice

    greens_eeg(D, z, x) = -D . grad_z greens_poisson(z, x) + D . z / (omega_n |z|^2),

so differences in x of the two sides agree.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .geometry import (
    BallSpec,
    CenteredSourceError,
    Flag,
    GreenError,
    GreenEval,
    SourceCoincidenceError,
    as_vector,
    phi_radial,
    norm,
    surface_area,
)
from .integrals import COLLINEAR, Chord, gamma_chord, moment_chord, z_chord

COINCIDENCE_TOL = 1e-8
NEAR_SOURCE = 1e-4
CENTERED_TOL = 1e-12
BOUNDARY_SLACK = 1e-12


class Form(str, enum.Enum):
    AUTO = "auto"
    FORM1 = "prop2_form1"
    FORM2 = "prop2_form2"


@dataclass(frozen=True)
class Dipole:
    position: np.ndarray
    moment: np.ndarray

    def __init__(self, position, moment):
        position = as_vector(position)
        moment = as_vector(moment, position.size)
        if norm(moment) == 0.0:
            raise GreenError("dipole moment must be nonzero")
        object.__setattr__(self, "position", position)
        object.__setattr__(self, "moment", moment)


def _point(x, dim: int, radius: float = 1.0) -> np.ndarray:
    x = as_vector(x, dim)
    if norm(x) > radius * (1.0 + BOUNDARY_SLACK):
        raise GreenError("evaluation point lies outside the closed ball")
    return x


def _source(z, radius: float = 1.0) -> np.ndarray:
    z = as_vector(z)
    if norm(z) >= radius:
        raise GreenError("source must lie strictly inside the ball")
    return z


def _separation_flags(x, z) -> set:
    d = norm(x - z)
    if d < COINCIDENCE_TOL:
        raise SourceCoincidenceError(f"evaluation point coincides with the source (|x - z| = {d:.3g})")
    return {Flag.NEAR_SOURCE_SINGULARITY} if d < NEAR_SOURCE else set()


def greens_eeg_radial(c: float, e, x) -> GreenEval:
    """Image-charge field of an outward unit dipole at c e.

    (1/omega_n) [ (e.x - c) / |x - c e|^n - (e.x - 1/c) / (c^n |x - e/c|^n) ]
    """
    e = as_vector(e)
    n = e.size
    if abs(norm(e) - 1.0) > 1e-12:
        raise GreenError("dipole direction must be a unit vector")
    c = float(c)
    if c == 0.0:
        raise CenteredSourceError("radial dipole at the centre has no image; use greens_eeg")
    if not (0.0 < c < 1.0):
        raise GreenError(f"dipole offset must lie in (0, 1), got {c!r}")
    x = _point(x, n)
    z = c * e
    flags = _separation_flags(x, z)
    p = float(np.dot(e, x))
    direct = (p - c) / norm(x - z) ** n
    # c^n |x - e/c|^n = |c x - e|^n
    image = (c * p - 1.0) / (c * norm(c * x - e) ** n)
    return GreenEval((direct - image) / surface_area(n), flags=frozenset(flags))


def greens_poisson(z, x) -> GreenEval:
    """Neumann-Poisson Green's function of the unit ball.

    Phi(x - z) + Gamma_n(x, z/|z|, |z|) / omega_n - |x|^2 / (2 omega_n), and the
    radially symmetric Phi(x) - |x|^2 / (2 omega_n) for a centred source.
    """
    z = _source(z)
    n = z.size
    x = _point(x, n)
    flags = _separation_flags(x, z)
    w = surface_area(n)
    r2 = float(np.dot(x, x))
    c = norm(z)
    if c < CENTERED_TOL:
        flags.add(Flag.CENTERED_SOURCE)
        return GreenEval(phi_radial(math.sqrt(r2), n) - 0.5 * r2 / w, flags=frozenset(flags))
    e = z / c
    gamma, regimes = gamma_chord(n, Chord(x, e, validate=False), c)
    if COLLINEAR in regimes:
        flags.add(Flag.COLLINEAR_FALLBACK)
    value = phi_radial(norm(x - z), n) + gamma / w - 0.5 * r2 / w
    return GreenEval(value, flags=frozenset(flags))


def _eeg_vector(z: np.ndarray, x: np.ndarray, form: Form) -> tuple[np.ndarray, set]:
    """omega_n G^(EEG, D) = D . (returned vector)."""
    n = z.size
    c = norm(z)
    e = z / c
    g = Chord(x, e, validate=False)
    flags: set = set()
    if form is Form.AUTO:
        form = Form.FORM1 if g.r * c <= 0.25 else Form.FORM2
    if form is Form.FORM2 and g.r == 0.0:
        form = Form.FORM1

    zn, reg_a = z_chord(n, g, c)
    zn2, reg_b = z_chord(n + 2, g, c)
    regimes = {reg_a, reg_b}
    log_q = g.log_q(c)
    inv_qn = math.exp(-n * log_q)
    if form is Form.FORM1:
        mom, reg_c = moment_chord(n + 2, g, c)
        regimes.add(reg_c)
        bracket = zn + n * (g.p * mom - zn2)
    else:
        # p/|x|^2 (1 - |cx - e|^-n) + Z_n - n A^2 Z_{n+2}
        one_minus = -math.expm1(-n * log_q)
        bracket = g.ph / g.r * one_minus + zn - n * g.A**2 * zn2
    if COLLINEAR in regimes:
        flags.add(Flag.COLLINEAR_FALLBACK)

    d = x - z
    vec = d / norm(d) ** n
    vec = vec - (c * g.p - 1.0) * inv_qn / c * e
    vec = vec - bracket / c * (x - g.p * e)
    return vec, flags


def greens_eeg(dipole: Dipole, x, form: Form | str = Form.AUTO) -> GreenEval:
    """EEG Green's function of the unit ball for an arbitrary dipole.

    Both algebraic forms are available; ``form="auto"`` uses the one that
    avoids dividing by |x|^2 near the centre.
    """
    form = Form(form)
    z = _source(dipole.position)
    n = z.size
    x = _point(x, n)
    if norm(z) < CENTERED_TOL:
        raise CenteredSourceError("EEG Green's function is undefined for a dipole at the centre")
    flags = _separation_flags(x, z)
    vec, extra = _eeg_vector(z, x, form)
    value = float(np.dot(dipole.moment, vec)) / surface_area(n)
    return GreenEval(value, flags=frozenset(flags | extra))


def greens_poisson_radius(ball: BallSpec, z, x) -> GreenEval:
    """Neumann-Poisson Green's function of the ball of radius R.

    R^(2-n) G_(z/R)(x/R); its Laplacian is delta_z - n / (omega_n R^n).
    """
    R = ball.radius
    z = as_vector(z, ball.dim)
    x = as_vector(x, ball.dim)
    if norm(z) >= R:
        raise GreenError("source must lie strictly inside the ball")
    if norm(x) > R * (1.0 + BOUNDARY_SLACK):
        raise GreenError("evaluation point lies outside the closed ball")
    if norm(x - z) < COINCIDENCE_TOL * R:
        raise SourceCoincidenceError("evaluation point coincides with the source")
    unit = greens_poisson(z / R, _clip(x / R))
    return GreenEval(R ** (2 - ball.dim) * unit.value, unit.method, unit.flags)


def greens_eeg_radius(ball: BallSpec, dipole: Dipole, x, form: Form | str = Form.AUTO) -> GreenEval:
    """EEG Green's function of the ball of radius R, R^(1-n) G^(EEG,D)_(z/R)(x/R)."""
    R = ball.radius
    z = as_vector(dipole.position, ball.dim)
    x = as_vector(x, ball.dim)
    if norm(z) >= R:
        raise GreenError("source must lie strictly inside the ball")
    if norm(x) > R * (1.0 + BOUNDARY_SLACK):
        raise GreenError("evaluation point lies outside the closed ball")
    if norm(x - z) < COINCIDENCE_TOL * R:
        raise SourceCoincidenceError("evaluation point coincides with the source")
    unit = greens_eeg(Dipole(z / R, dipole.moment), _clip(x / R), form)
    return GreenEval(R ** (1 - ball.dim) * unit.value, unit.method, unit.flags)


def _clip(x: np.ndarray) -> np.ndarray:
    # x/R may exceed the unit sphere by an ulp
    r = norm(x)
    return x / r if r > 1.0 else x
