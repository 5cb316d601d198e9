"""Check the sign of the |x|^-2 term in the second algebraic form of the EEG field.

The second form replaces the moment integral int_0^c s |s x - e|^-(n+2) ds
of the first form by the boundary term

    (e.x / |x|^2) (1 - |c x - e|^-n)

plus Z_n - n A^2 Z_(n+2).  Writing it with the opposite sign,
(e.x / |x|^2) (|c x - e|^-n - 1), looks equally plausible.  For random
dipoles this script prints the relative difference of each variant to the
first form and the PDE residual and Neumann data of the flipped variant.

    python scripts/eeg_form_sign.py --dims 2,3,5 --samples 200
"""

import argparse

import numpy as np

from ballgreen import Dipole, boundary_normal_derivative, fd_laplacian, greens_eeg, surface_area
from ballgreen.integrals import Chord


def flipped(dip, x):
    """Second form with the opposite sign of the boundary term."""
    z, D = dip.position, dip.moment
    n = z.size
    c = np.linalg.norm(z)
    e = z / c
    x = np.asarray(x, float)
    g = Chord(x, e)
    if g.r == 0.0:
        return greens_eeg(dip, x, "prop2_form2").value
    term = g.ph / g.r * -np.expm1(-n * g.log_q(c))
    correction = 2.0 * term / c * float(np.dot(D, x - g.p * e)) / surface_area(n)
    return greens_eeg(dip, x, "prop2_form2").value + correction


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--dims", default="2,3,5")
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    print(f"{'n':>2} {'form2 vs form1':>15} {'flipped vs form1':>17} {'flipped Laplacian':>18} {'flipped Neumann':>16}")
    for n in (int(t) for t in args.dims.split(",")):
        good, bad, lap, neu = 0.0, 0.0, 0.0, 0.0
        for _ in range(args.samples):
            z = rng.normal(size=n)
            z *= rng.uniform(0.1, 0.8) / np.linalg.norm(z)
            x = rng.normal(size=n)
            x *= rng.uniform(0.2, 0.9) / np.linalg.norm(x)
            if np.linalg.norm(x - z) < 0.2:
                continue
            dip = Dipole(z, rng.normal(size=n))
            f1 = greens_eeg(dip, x, "prop2_form1").value
            f2 = greens_eeg(dip, x, "prop2_form2").value
            ff = flipped(dip, x)
            scale = max(abs(f1), 1e-12)
            good = max(good, abs(f2 - f1) / scale)
            bad = max(bad, abs(ff - f1) / scale)
            if np.linalg.norm(x) < 0.85:
                lap = max(lap, abs(fd_laplacian(lambda y: flipped(dip, y), x, 1e-3, 1.0, richardson=True)))
            u = x / np.linalg.norm(x)
            neu = max(neu, abs(boundary_normal_derivative(lambda y: flipped(dip, y), u, 1e-5, 1.0)))
        print(f"{n:>2} {good:>15.1e} {bad:>17.1e} {lap:>18.1e} {neu:>16.1e}")


if __name__ == "__main__":
    main()
