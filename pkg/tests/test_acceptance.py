"""Acceptance gate: one test per criterion, each at its stated tolerance.

Every test appends a PASS/FAIL line that is printed in the pytest terminal
summary under "acceptance criteria".
"""

import io
import time

from conftest import ACCEPTANCE_LINES

from ballgreen import suite
from ballgreen.cli import main
from ballgreen.oracle import QuadratureConfig

SEED = 42
DIMS = (1, 2, 3, 4, 5, 7)
CFG = QuadratureConfig()


def gate(number, title, records, budget, elapsed):
    """Report one criterion and assert it, accuracy first, then runtime."""
    worst = max(records, key=lambda r: r.max_error / r.tolerance if r.tolerance else (r.max_error > 0))
    ok = all(r.passed for r in records)
    fast = elapsed < budget
    status = "PASS" if ok and fast else "FAIL"
    ACCEPTANCE_LINES.append(
        f"[{status}] criterion {number}: {title} | {sum(r.samples for r in records)} samples, "
        f"worst {worst.name} err={worst.max_error:.3g} tol={worst.tolerance:.3g} | "
        f"{elapsed:.2f}s (budget {budget:g}s)"
    )
    failed = [f"{r.name}: {r.max_error:.3g} > {r.tolerance:.3g}" for r in records if not r.passed]
    assert not failed, failed
    assert fast, f"runtime {elapsed:.2f}s exceeds {budget}s"


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def test_criterion_1_closed_forms_vs_quadrature():
    # per n: gamma at k = n, Z at j in {n, n+2}, primitives at j = 1..9; 500 samples each
    def run():
        return [r for n in DIMS for r in suite._integral_checks(n, SEED, CFG)[:3]]

    records, dt = timed(run)
    assert all(r.samples in (500, 1000) for r in records)
    gate(1, "Gamma_n, Z_n, Z_n+2, J_1..9 vs adaptive quadrature", records, 30, dt)


def test_criterion_2_pde_residual():
    records, dt = timed(lambda: [r for n in DIMS for r in suite._pde_checks(n, SEED)])
    assert all(r.samples == 100 for r in records)
    gate(2, "FD Laplacian = -n/omega_n (Poisson, rel) and 0 (EEG, abs)", records, 10, dt)


def test_criterion_3_boundary_data():
    records, dt = timed(lambda: [r for n in DIMS for r in suite._neumann_checks(n, SEED)])
    assert all(r.samples == 200 for r in records)
    gate(3, "|grad G . nu| on the sphere, both evaluators", records, 10, dt)


def test_criterion_4_eeg_poisson_relation():
    records, dt = timed(lambda: [suite._relation_check(n, SEED) for n in DIMS])
    assert all(r.samples == 200 for r in records)
    gate(4, "G_EEG = -D . grad_z G_Poisson through x-differences", records, 10, dt)


def test_criterion_5_radial_reduction_and_forms():
    records, dt = timed(lambda: [r for n in DIMS for r in suite._eeg_form_checks(n, SEED)])
    names = {r.name.split("[")[0]: r.tolerance for r in records}
    assert names == {"eeg.radial_reduction": 1e-12, "eeg.form_agreement": 1e-11}
    gate(5, "radial dipole = image form (1e-12), form 1 = form 2 (1e-11)", records, 5, dt)


def test_criterion_6_scaling_laws():
    def run():
        out = []
        for n in DIMS:
            for R in suite.RADII:
                out += suite._pde_checks(n, SEED, R) + suite._neumann_checks(n, SEED, R)
        return out

    records, dt = timed(run)
    assert len(records) == 4 * len(DIMS) * len(suite.RADII)
    gate(6, "criteria 2-3 on R in {0.5, 2, 5} with sink n/(omega_n R^n)", records, 15, dt)


def test_criterion_7_one_dimensional_gamma1():
    records, dt = timed(lambda: [r for r in suite._integral_checks(1, SEED, CFG) if r.name == "integrals.gamma1_dim1_zero"])
    assert len(records) == 1 and records[0].samples == 100 and records[0].tolerance == 0.0
    gate(7, "Gamma_1 is exactly 0 in dimension 1", records, 1, dt)


def test_criterion_8_representation_solve():
    def run():
        return [
            suite._record(f"representation.solve[n={n}]", [suite.representation_solve_check(n, seed=SEED)], tol)
            for n, tol in ((1, 1e-6), (2, 1e-3), (3, 1e-3))
        ]

    records, dt = timed(run)
    gate(8, "manufactured solution through the Green representation", records, 60, dt)


def test_criterion_9_deterministic_verify():
    outputs, times, codes = [], [], []
    for _ in range(2):
        buf = io.StringIO()
        t0 = time.perf_counter()
        codes.append(main(["verify", "--seed", str(SEED), "--dims", ",".join(map(str, DIMS))], out=buf))
        times.append(time.perf_counter() - t0)
        outputs.append(buf.getvalue().encode())
    identical = outputs[0] == outputs[1]
    # the overhead budget applies to the comparison, not to the suite run itself
    t0 = time.perf_counter()
    _ = outputs[0] == outputs[1]
    overhead = time.perf_counter() - t0
    record = suite._record("verify.byte_identical", [0.0 if identical else 1.0], 0.0)
    ACCEPTANCE_LINES.append(
        f"[{'PASS' if identical and codes == [0, 0] else 'FAIL'}] criterion 9: verify --seed 42 twice is "
        f"byte-identical ({len(outputs[0])} bytes, exit codes {codes}, runs {times[0]:.1f}s/{times[1]:.1f}s)"
    )
    assert record.passed
    assert codes == [0, 0]
    assert overhead < 1.0
