"""Compare formulas for int_0^a (1 + t^2)^(-j/2) dt at odd j against quadrature.

After t = 1/sqrt(z^2 - 1) the integral runs over z > sqrt(1 + 1/a^2) and
(z^2 - 1)^m, m = (j - 3)/2, expands with signs (-1)^(m - i).  Two
mistakes are easy to make in that derivation: taking the lower limit as
1 + 1/a^2, and using the signs (-1)^i.  This script evaluates

  uncorrected   both mistakes (j = 1 then gives log(2 a^2 + 1) / 2)
  limit only    the correct limit, signs (-1)^i
  signs only    signs (-1)^(m - i), limit 1 + 1/a^2
  library       ballgreen.primitive_J

and prints the error of each against adaptive quadrature.  Only the
library column agrees for every j.  The "limit only" column also agrees
when m is even (j = 3, 7, ...), where the two sign patterns coincide, so
checking j = 3 alone does not expose the sign error.

    python scripts/odd_primitive_check.py --js 1,3,5,7,9 --as 0.3,1,3
"""

import argparse
import math

from ballgreen import primitive_J, quad_integral
from ballgreen.suite import primitive_integrand


def series(j, lower, alternate_from_top):
    """-sum_i s_i C(m, i) L^(2i+2-j) / (2i+2-j), the integral of the expansion from L to infinity."""
    if j == 1:
        # int_L^inf dz / (z^2 - 1) = (1/2) log((L + 1) / (L - 1))
        return 0.5 * math.log((lower + 1) / (lower - 1))
    m = (j - 3) // 2
    total = 0.0
    for i in range(m + 1):
        sign = (-1) ** (m - i) if alternate_from_top else (-1) ** i
        p = 2 * i + 2 - j
        total -= sign * math.comb(m, i) * lower**p / p
    return total


def uncorrected(j, a):
    if j == 1:
        return 0.5 * math.log(2 * a * a + 1)
    m = (j - 3) // 2
    return sum((-1) ** i / (2 * i + 2 - j) * math.comb(m, i) * (1 + 1 / a**2) ** (2 * i + 2 - j) for i in range(m + 1))


def main():
    ap = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    ap.add_argument("--js", default="1,3,5,7,9")
    ap.add_argument("--as", dest="avals", default="0.3,1,3")
    args = ap.parse_args()
    js = [int(t) for t in args.js.split(",")]
    avals = [float(t) for t in args.avals.split(",")]
    if any(j % 2 == 0 or j < 1 for j in js):
        ap.error("--js takes odd positive integers")

    print(f"{'j':>2} {'a':>5} {'quadrature':>18} {'uncorrected':>12} {'limit only':>12} {'signs only':>12} {'library':>10}")
    for j in js:
        for a in avals:
            q = quad_integral(primitive_integrand(j), 0.0, a)
            cols = [
                uncorrected(j, a),
                series(j, math.sqrt(1 + 1 / a**2), False),
                series(j, 1 + 1 / a**2, True),
                primitive_J(j, a),
            ]
            errs = [abs(v - q) for v in cols]
            print(f"{j:>2} {a:>5g} {q:>18.15f} " + " ".join(f"{e:>12.2e}" for e in errs[:3]) + f" {errs[3]:>10.1e}")


if __name__ == "__main__":
    main()
