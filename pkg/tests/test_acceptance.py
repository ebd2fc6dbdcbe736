"""End-to-end acceptance suite; each test prints one PASS/FAIL line."""
import math
import time

import numpy as np
import pytest
from scipy.stats import spearmanr

from conftest import report
from elastinv import (CircleBoundary, ElasticMedium, IncidentWave, ReconstructionConfig, StarCurve,
                      builtin_shape, run_algorithm_I, run_algorithm_II, synthesize_data)
from elastinv import diagnostics
from elastinv.cli import main

pytestmark = pytest.mark.slow

PI = math.pi

# (shape, incidence angle, initial center, noise, epsilon)
PHASED_RUNS = [
    ("apple", 5 * PI / 8, (-0.9, 0.4), 0.01, 0.01),
    ("apple", 5 * PI / 8, (-0.9, 0.4), 0.05, 0.025),
    ("peanut", 7 * PI / 6, (0.75, -0.55), 0.01, 0.006),
    ("peanut", 7 * PI / 6, (0.75, -0.55), 0.05, 0.025),
    ("apple", 4 * PI / 3, (-0.65, 0.4), 0.01, 0.015),
    ("apple", 4 * PI / 3, (1.0, -0.2), 0.01, 0.01),
    ("peanut", 7 * PI / 4, (0.7, 0.3), 0.01, 0.01),
    ("peanut", 7 * PI / 4, (-0.6, -0.55), 0.05, 0.025),
    ("apple", 11 * PI / 6, (-0.7, 0.3), 0.01, 0.01),
    ("apple", 7 * PI / 6, (-0.7, 0.3), 0.01, 0.01),
    ("peanut", 7 * PI / 6, (0.7, 0.3), 0.01, 0.006),
    ("peanut", 5 * PI / 6, (0.7, 0.3), 0.01, 0.006),
]

# (shape, incidence angle, initial center, ball center, noise, epsilon)
PHASELESS_RUNS = [
    ("apple", 11 * PI / 6, (-0.7, 0.3), (5.0, 0.0), 0.01, 0.005),
    ("apple", 11 * PI / 6, (-0.7, 0.3), (5.0, 0.0), 0.05, 0.025),
    ("peanut", 7 * PI / 6, (0.75, -0.55), (9.0, 0.0), 0.01, 0.02),
    ("peanut", 7 * PI / 6, (0.75, -0.55), (9.0, 0.0), 0.05, 0.04),
]


def test_oracle_equivalence():
    errs = {(kind, n): diagnostics.oracle_error(n, kind) for kind in ("P", "S") for n in (32, 64)}
    worst64 = max(errs["P", 64], errs["S", 64])
    drop = min(errs[k, 32] / max(errs[k, 64], 1e-300) for k in ("P", "S"))
    ok = report(1, worst64 <= 1e-8 and drop >= 1e4,
                f"disk oracle max rel err n=64 {worst64:.2e} (tol 1e-08), "
                f"n=32 -> n=64 drop {drop:.2e} (need >= 1e4; "
                f"n=32 errors P {errs['P', 32]:.1e}, S {errs['S', 32]:.1e})")
    assert ok


def test_quadrature_identities():
    results = [r for n in (16, 32, 64) for r in diagnostics.quadrature_identities(n)]
    worst = max(results, key=lambda r: r.value)
    ok = report(2, all(r.passed for r in results),
                f"{len(results)} weight identities, worst {worst.name} = {worst.value:.2e} (tol 1e-12)")
    assert ok


def test_far_field_asymptotics():
    err = max(diagnostics.asymptotic_error(1e3, kind) for kind in ("P", "S"))
    ok = report(3, err <= 5e-3, f"near field at |x|=1e3 vs lifted far field, rel err {err:.2e} (tol 5e-03)")
    assert ok


def test_translation_invariance():
    vals = [diagnostics.translation_phase_error((0.3, 0.2), "apple", kind) for kind in ("P", "S")]
    phased = max(v[0] for v in vals)
    modulus = max(v[1] for v in vals)
    ok = report(4, phased <= 1e-8 and modulus <= 1e-8,
                f"shift (0.3, 0.2): phase relation {phased:.2e}, moduli {modulus:.2e} (tol 1e-08)")
    assert ok


def test_frechet_derivative():
    e1 = diagnostics.frechet_fd_error(step=1e-2)
    e2 = diagnostics.frechet_fd_error(step=5e-3)
    order = math.log2(e1 / e2)
    fine = diagnostics.frechet_fd_error(step=1e-5)
    ok = report(5, fine <= 1e-5 and abs(order - 2) < 0.2,
                f"10 directions: rel err {fine:.2e} at h=1e-5 (tol 1e-05), observed order {order:.2f}")
    assert ok


def _phased_run(medium, shape_name, theta, center, delta, eps):
    shape = builtin_shape(shape_name)
    wave = IncidentWave("S", theta)
    data = synthesize_data(shape, medium, wave, 128, 32, delta=delta, seed=1)
    config = ReconstructionConfig(epsilon=eps, delta=delta)
    t0 = time.perf_counter()
    trace = run_algorithm_I(config, medium, wave, data, StarCurve.circle(center, 0.3), exact=shape)
    return trace, time.perf_counter() - t0


def _rank_corr(trace):
    if len(trace) < 3:
        return float("nan")
    return float(spearmanr(trace.E, trace.Err).statistic)


def test_algorithm_I_end_to_end(medium):
    failures = []
    worst_err = 0.0
    for shape, theta, center, delta, eps in PHASED_RUNS:
        trace, secs = _phased_run(medium, shape, theta, center, delta, eps)
        E, Err = trace.E[-1], trace.Err[-1]
        rho = _rank_corr(trace)
        good = trace.converged and E < eps and secs <= 60 and rho > 0.8 and (delta > 0.01 or Err <= 0.05)
        if delta <= 0.01:
            worst_err = max(worst_err, Err)
        if not good:
            failures.append(f"{shape}@{theta / PI:.3f}pi d={delta}: {trace.status} k={len(trace) - 1} "
                            f"E={E:.3g} Err={Err:.3g} corr={rho:.2f} {secs:.0f}s")
    ok = report(6, not failures,
                f"{len(PHASED_RUNS) - len(failures)}/{len(PHASED_RUNS)} runs pass (worst Err at 1% noise "
                f"{worst_err:.3f}, tol 0.05)" + ("; " + " | ".join(failures) if failures else ""))
    assert ok


def test_algorithm_II_end_to_end(medium_ii):
    failures = []
    for shape_name, theta, center, ball_center, delta, eps in PHASELESS_RUNS:
        shape = builtin_shape(shape_name)
        wave = IncidentWave("S", theta)
        ball = CircleBoundary(ball_center, 0.5)
        data = synthesize_data(shape, medium_ii, wave, 128, 32, reference_ball=ball, delta=delta, seed=1,
                               phaseless=True)
        config = ReconstructionConfig(epsilon=eps, delta=delta, reference_ball=ball)
        trace = run_algorithm_II(config, medium_ii, wave, data, StarCurve.circle(center, 0.3), exact=shape)
        off = float(np.linalg.norm(trace.final_curve.centroid() - shape.centroid()))
        if not (trace.converged and trace.E[-1] < eps and off <= 0.1):
            failures.append(f"{shape_name} d={delta}: {trace.status} k={len(trace) - 1} E={trace.E[-1]:.3g} "
                            f"centroid offset {off:.3f}")
    ok = report(7, not failures,
                f"{len(PHASELESS_RUNS) - len(failures)}/{len(PHASELESS_RUNS)} ball-assisted phaseless runs "
                "reach E<eps with centroid offset <= 0.1" + ("; " + " | ".join(failures) if failures else ""))
    assert ok


def test_exact_recoverability(medium):
    target = StarCurve((0.1, -0.05), [0.4, 0.0, 0.06, 0.01, 0.0, 0.0, 0.0], [0.03, 0.0, -0.02, 0.0, 0.0, 0.0])
    wave = IncidentWave("S", 5 * PI / 8)
    data = synthesize_data(target, medium, wave, 128, 32)
    config = ReconstructionConfig(epsilon=1e-6, max_iters=30)
    trace = run_algorithm_I(config, medium, wave, data, StarCurve.circle((0, 0), 0.3), exact=target)
    best = float(np.nanmin(trace.Err))
    ok = report(8, best <= 1e-3,
                f"M=6 target, noise-free: best Err {best:.2e} within {len(trace) - 1} iterations "
                f"(tol 1e-03, status {trace.status})")
    assert ok


def test_reproducibility(tmp_path, medium):
    cfg = tmp_path / "run.json"
    cfg.write_text("""{
      "medium": {"lambda": 3.88, "mu": 2.56, "omega": 2.199114857512855},
      "wave": {"kind": "S", "theta": 1.9634954084936207},
      "mode": "p", "shape": "apple",
      "initial": {"c1": -0.9, "c2": 0.4, "radius": 0.3},
      "solver": {"delta": 0.01, "seed": 7, "max_iters": 3}
    }""")
    outs = []
    for tag in ("a", "b"):
        data = tmp_path / f"data_{tag}.txt"
        assert main(["make-data", str(cfg), "-o", str(data)]) == 0
        run_dir = tmp_path / f"run_{tag}"
        main(["invert-phased", str(cfg), str(data), "-o", str(run_dir)])
        outs.append([data.read_bytes()] + [(run_dir / f).read_bytes()
                                           for f in ("trace.csv", "final_curve.json", "curves.csv")])
    same = [x == y for x, y in zip(*outs)]
    ok = report(9, all(same), f"data file and three run outputs byte-identical across reruns: {same}")
    assert ok
