import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from ballgreen.geometry import (
    BallSpec,
    CenteredSourceError,
    Flag,
    GreenError,
    SourceCoincidenceError,
    fundamental_phi,
    surface_area,
)
from ballgreen.greens import (
    Dipole,
    Form,
    greens_eeg,
    greens_eeg_radial,
    greens_eeg_radius,
    greens_poisson,
    greens_poisson_radius,
)
from ballgreen.oracle import boundary_normal_derivative, fd_laplacian, quad_integral
from ballgreen.suite import check_eeg_poisson_relation, gamma_integrand


@st.composite
def point_in_ball(draw, n, radius=1.0):
    v = np.array(draw(st.lists(st.floats(-1, 1), min_size=n, max_size=n)))
    return v / max(np.linalg.norm(v), 1.0) * radius


@st.composite
def source_and_point(draw, max_dim=7):
    n = draw(st.integers(1, max_dim))
    z = draw(point_in_ball(n, 0.9))
    x = draw(point_in_ball(n))
    assume(np.linalg.norm(x - z) > 0.05)
    return z, x


# -- radial EEG -----------------------------------------------------------------

def test_radial_example_off_axis():
    v = greens_eeg_radial(0.5, [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]).value
    by_hand = (-0.5 / 1.25**1.5 + 2.0 / (0.125 * 5**1.5)) / (4 * math.pi)
    assert v == pytest.approx(by_hand, rel=1e-14)
    assert v == pytest.approx(0.08541150521006123, rel=1e-14)


def test_radial_example_at_centre():
    v = greens_eeg_radial(0.5, [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]).value
    assert v == pytest.approx(-1 / (2 * math.pi), rel=1e-14)


def test_radial_errors():
    with pytest.raises(CenteredSourceError):
        greens_eeg_radial(0.0, [1.0, 0.0], [0.1, 0.2])
    with pytest.raises(GreenError):
        greens_eeg_radial(0.5, [2.0, 0.0], [0.1, 0.2])
    with pytest.raises(SourceCoincidenceError):
        greens_eeg_radial(0.5, [1.0, 0.0], [0.5, 0.0])


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_radial_neumann(n, rng):
    e = np.eye(n)[0]
    for _ in range(20):
        u = rng.normal(size=n)
        u /= np.linalg.norm(u)
        d = boundary_normal_derivative(lambda y: greens_eeg_radial(0.6, e, y).value, u, 1e-5, 1.0)
        assert abs(d) <= 1e-6


# -- Poisson --------------------------------------------------------------------

def test_poisson_centered_on_boundary():
    g = greens_poisson([0.0, 0.0, 0.0], [1.0, 0.0, 0.0])
    assert g.value == pytest.approx(-3 / (8 * math.pi), rel=1e-15)
    assert Flag.CENTERED_SOURCE in g.flags


def test_poisson_against_quadrature_of_defining_integral():
    z, x = np.array([0.5, 0.0]), np.array([0.0, 0.5])
    w = surface_area(2)
    gamma = quad_integral(gamma_integrand(2, x, z / 0.5), 0.0, 0.5)
    ref = fundamental_phi(x - z) + gamma / w - 0.125 / w
    assert greens_poisson(z, x).value == pytest.approx(ref, abs=1e-10)


def test_poisson_at_centre_point_is_finite():
    g = greens_poisson([0.3, 0.2, 0.1], [0.0, 0.0, 0.0])
    assert math.isfinite(g.value)
    assert g.value == pytest.approx(fundamental_phi([-0.3, -0.2, -0.1]), rel=1e-15)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 7])
def test_poisson_laplacian(n, rng):
    sink = n / surface_area(n)
    for _ in range(10):
        z = rng.uniform(-0.5, 0.5, n) / math.sqrt(n)
        x = -z + 0.1 * rng.uniform(-1, 1, n) / math.sqrt(n)
        lap = fd_laplacian(lambda y: greens_poisson(z, y).value, x, 1e-3, 1.0, richardson=True)
        assert lap == pytest.approx(-sink, rel=1e-4)


def test_poisson_laplacian_two_dimensions():
    lap = fd_laplacian(lambda y: greens_poisson([0.4, 0.1], y).value, [-0.2, -0.3], 1e-3, richardson=True)
    assert lap == pytest.approx(-1 / math.pi, rel=1e-4)


@settings(max_examples=60, deadline=None)
@given(n=st.integers(1, 6), data=st.data())
def test_poisson_reciprocity_up_to_source_function(n, data):
    z1, z2 = data.draw(point_in_ball(n, 0.8)), data.draw(point_in_ball(n, 0.8))
    x1, x2 = data.draw(point_in_ball(n, 0.8)), data.draw(point_in_ball(n, 0.8))
    pts = [z1, z2, x1, x2]
    assume(min(np.linalg.norm(a - b) for i, a in enumerate(pts) for b in pts[i + 1:]) > 0.05)
    # G_z(x) - G_x(z) = a(z) - a(x): the mixed difference vanishes
    lhs = greens_poisson(z1, x1).value - greens_poisson(z2, x1).value
    lhs -= greens_poisson(z1, x2).value - greens_poisson(z2, x2).value
    rhs = greens_poisson(x1, z1).value - greens_poisson(x1, z2).value
    rhs -= greens_poisson(x2, z1).value - greens_poisson(x2, z2).value
    assert lhs == pytest.approx(rhs, abs=1e-9)


def test_poisson_errors_and_flags():
    with pytest.raises(SourceCoincidenceError):
        greens_poisson([0.5, 0.0], [0.5, 0.0])
    with pytest.raises(GreenError):
        greens_poisson([1.0, 0.0], [0.5, 0.0])
    with pytest.raises(GreenError):
        greens_poisson([0.5, 0.0], [1.1, 0.0])
    with pytest.raises(GreenError):
        greens_poisson([0.5, 0.0], [0.5, 0.0, 0.0])
    near = greens_poisson([0.5, 0.0], [0.5 + 5e-5, 0.0])
    assert Flag.NEAR_SOURCE_SINGULARITY in near.flags
    on_axis = greens_poisson([0.5, 0.0, 0.0], [0.95, 1e-9, 0.0])
    assert Flag.COLLINEAR_FALLBACK in on_axis.flags


# -- general EEG ----------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(sp=source_and_point(), scale=st.floats(0.1, 3.0))
def test_eeg_radial_dipole_matches_image_form(sp, scale):
    z, x = sp
    c = np.linalg.norm(z)
    assume(c > 1e-2)
    e = z / c
    want = scale * greens_eeg_radial(c, e, x).value
    got = greens_eeg(Dipole(z, scale * e), x).value
    assert got == pytest.approx(want, rel=1e-10, abs=1e-13)


def test_eeg_radial_cli_example():
    got = greens_eeg(Dipole([0.5, 0.0, 0.0], [1.0, 0.0, 0.0]), [0.0, 1.0, 0.0]).value
    assert got == pytest.approx(0.08541150521006123, rel=1e-12)


@settings(max_examples=150, deadline=None)
@given(sp=source_and_point(), data=st.data())
def test_eeg_forms_agree(sp, data):
    z, x = sp
    assume(np.linalg.norm(z) > 1e-2 and np.linalg.norm(x) > 1e-2)
    D = np.array(data.draw(st.lists(st.floats(-1, 1), min_size=z.size, max_size=z.size)))
    assume(np.linalg.norm(D) > 1e-2)
    dip = Dipole(z, D)
    f1 = greens_eeg(dip, x, Form.FORM1).value
    f2 = greens_eeg(dip, x, Form.FORM2).value
    assert f1 == pytest.approx(f2, rel=1e-10, abs=1e-12)


def test_eeg_relation_example():
    z, D = np.array([0.5, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
    assert check_eeg_poisson_relation(z, D, np.array([0.0, 0.0, 0.8]), np.array([-0.3, 0.2, -0.1])) <= 1e-6


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_eeg_relation_random(n, rng):
    for _ in range(10):
        z = rng.uniform(0.2, 0.5) * np.eye(n)[0] + 0.1 * rng.normal(size=n) / n
        D = rng.normal(size=n)
        x1, x2 = -z, 0.5 * rng.uniform(-1, 1, n) / math.sqrt(n) - z
        assert check_eeg_poisson_relation(z, D, x1, x2) <= 1e-6


@pytest.mark.parametrize("n", [2, 3, 5])
def test_eeg_harmonic_and_neumann(n, rng):
    z = 0.6 * np.eye(n)[-1]
    dip = Dipole(z, rng.normal(size=n))
    x = -0.3 * np.eye(n)[-1]
    assert abs(fd_laplacian(lambda y: greens_eeg(dip, y).value, x, 1e-3, 1.0, richardson=True)) <= 1e-4
    for _ in range(10):
        u = rng.normal(size=n)
        u /= np.linalg.norm(u)
        assert abs(boundary_normal_derivative(lambda y: greens_eeg(dip, y).value, u, 1e-5, 1.0)) <= 1e-6


def test_eeg_at_centre_point():
    dip = Dipole([0.3, 0.4, 0.0], [0.0, 0.0, 1.0])
    for form in Form:
        assert math.isfinite(greens_eeg(dip, [0.0, 0.0, 0.0], form).value)


def test_eeg_errors():
    with pytest.raises(CenteredSourceError):
        greens_eeg(Dipole([0.0, 0.0], [1.0, 0.0]), [0.5, 0.0])
    with pytest.raises(GreenError):
        Dipole([0.1, 0.0], [0.0, 0.0])
    with pytest.raises(SourceCoincidenceError):
        greens_eeg(Dipole([0.1, 0.0], [1.0, 0.0]), [0.1, 0.0])
    with pytest.raises(ValueError):
        greens_eeg(Dipole([0.1, 0.0], [1.0, 0.0]), [0.5, 0.0], "form3")


# -- rescaled balls ----------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(sp=source_and_point(max_dim=5), data=st.data())
def test_unit_radius_is_identity(sp, data):
    z, x = sp
    ball = BallSpec(z.size, 1.0)
    assert greens_poisson_radius(ball, z, x).value == greens_poisson(z, x).value
    assume(np.linalg.norm(z) > 1e-3)
    dip = Dipole(z, np.ones(z.size))
    assert greens_eeg_radius(ball, dip, x).value == greens_eeg(dip, x).value


def test_scaled_poisson_example():
    v = greens_poisson_radius(BallSpec(3, 2.0), [0.0, 0.0, 0.0], [1.0, 0.0, 0.0]).value
    assert v == pytest.approx(0.5 * (-1 / (2 * math.pi) - 1 / (32 * math.pi)), rel=1e-14)


@pytest.mark.parametrize("R", [0.5, 2.0, 5.0])
@pytest.mark.parametrize("n", [1, 3, 4])
def test_scaled_pde_and_boundary(n, R, rng):
    ball = BallSpec(n, R)
    sink = n / (surface_area(n) * R**n)
    z = 0.4 * R * np.eye(n)[0]
    dip = Dipole(z, rng.normal(size=n))
    x = -0.3 * R * np.eye(n)[0]
    lap = fd_laplacian(lambda y: greens_poisson_radius(ball, z, y).value, x, 1e-3 * R, R, richardson=True)
    assert lap == pytest.approx(-sink, rel=1e-4)
    lap = fd_laplacian(lambda y: greens_eeg_radius(ball, dip, y).value, x, 1e-3 * R, R, richardson=True)
    assert abs(lap) <= 1e-4
    for _ in range(5):
        u = rng.normal(size=n)
        u *= R / np.linalg.norm(u)
        for g in (lambda y: greens_poisson_radius(ball, z, y).value, lambda y: greens_eeg_radius(ball, dip, y).value):
            assert abs(boundary_normal_derivative(g, u, 1e-5 * R, R)) <= 1e-6


def test_scaled_errors():
    ball = BallSpec(2, 2.0)
    with pytest.raises(GreenError):
        greens_poisson_radius(ball, [2.0, 0.0], [0.0, 0.0])
    with pytest.raises(GreenError):
        greens_poisson_radius(ball, [0.5, 0.0], [2.5, 0.0])
    with pytest.raises(SourceCoincidenceError):
        greens_eeg_radius(ball, Dipole([0.5, 0.0], [1.0, 0.0]), [0.5, 0.0])
