"""Decide the radius exponent of the rescaled Green's functions with the PDE oracle.

On the ball of radius R the Poisson Green's function must satisfy
Laplacian G = delta_z - n / (omega_n R^n), and the EEG field must carry a
unit-strength dipole at z.  Writing G_R(x) = R^p G(z/R, x/R), the sink
matches only for p = 2 - n and the dipole strength is 1 only for p = 1 - n.
The Neumann condition holds for any p, so it cannot decide the exponent.

The Poisson table prints the relative Laplacian residual.  The EEG table
prints the ratio of the change of R^p G between two small distances from
the source to the change of the free dipole kernel
D . (x - z) / (omega_n |x - z|^n); the regular part of the field cancels
to O(distance), so the ratio is the dipole strength.  For n = 2 the two
Poisson candidates coincide (p = 0).

    python scripts/scaling_exponents.py --dims 2,3,5 --radii 0.5,2,5
"""

import argparse

import numpy as np

from ballgreen import Dipole, fd_laplacian, greens_eeg, greens_poisson, surface_area


def poisson_residual(n, R, p, rng):
    z = 0.3 * R * np.eye(n)[0]
    x = -0.4 * R * np.eye(n)[0] + 0.1 * R * rng.uniform(-1, 1, n) / np.sqrt(n)

    def g(y):
        return R**p * greens_poisson(z / R, y / R).value

    lap = fd_laplacian(g, x, 1e-3 * R, R, richardson=True)
    sink = n / (surface_area(n) * R**n)
    return abs(lap + sink) / sink


def dipole_strength(n, R, p, rng):
    """Coefficient of the free dipole kernel in the rescaled EEG field near the source."""
    z = 0.3 * R * np.eye(n)[0]
    D = rng.normal(size=n)
    dip = Dipole(z / R, D)
    free = lambda x: float(np.dot(D, x - z)) / (surface_area(n) * np.linalg.norm(x - z) ** n)  # noqa: E731
    u = rng.normal(size=n)
    u /= np.linalg.norm(u)
    # two radii: the regular part changes by O(eps), the singular part by a known factor
    e1, e2 = 1e-3 * R, 2e-3 * R
    v1 = R**p * greens_eeg(dip, (z + e1 * u) / R).value
    v2 = R**p * greens_eeg(dip, (z + e2 * u) / R).value
    f1, f2 = free(z + e1 * u), free(z + e2 * u)
    return (v1 - v2) / (f1 - f2)


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--dims", default="2,3,5")
    ap.add_argument("--radii", default="0.5,2,5")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    dims = [int(t) for t in args.dims.split(",")]
    radii = [float(t) for t in args.radii.split(",")]

    print("Poisson: relative Laplacian residual of R^p G(z/R, x/R)")
    print(f"{'n':>2} {'R':>4} {'p = 2-n':>10} {'p = n-2':>10}")
    for n in dims:
        for R in radii:
            a, b = poisson_residual(n, R, 2 - n, rng), poisson_residual(n, R, n - 2, rng)
            print(f"{n:>2} {R:>4g} {a:>10.1e} {b:>10.1e}")

    print("\nEEG: dipole strength of R^p G(z/R, x/R) near the source (must be 1)")
    print(f"{'n':>2} {'R':>4} {'p = 1-n':>10} {'p = n-1':>10}")
    for n in dims:
        for R in radii:
            a, b = dipole_strength(n, R, 1 - n, rng), dipole_strength(n, R, n - 1, rng)
            print(f"{n:>2} {R:>4g} {a:>10.6f} {b:>10.6f}")


if __name__ == "__main__":
    main()
