"""Acceptance suite: one PASS/FAIL line per criterion, printed in the pytest summary.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""
import math
import time
from dataclasses import replace

import numpy as np
import pytest

from wgqed import amplitudes as amp
from wgqed.memory import round_trip_fidelity
from wgqed.oracle import agreement_suite
from wgqed.params import (
    MemoryParams,
    params_from_solution,
    reference_params_3ls,
    reference_params_4ls,
    solve_gate_conditions,
)
from wgqed.protocol import three_ls_photon_atom_gate, truth_table
from wgqed.pulses import QuadratureGrid, fidelity_3ls, fidelity_4ls, fidelity_sweep, leakage_sweep_4ls

RESULTS: dict[int, str] = {}


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[n] = line
    print(line)
    assert ok, line


def test_criterion_1_fidelity_points():
    p = reference_params_4ls()
    vals, times = {}, []
    for purcell, target in ((20, 0.86), (40, 0.94)):
        t0 = time.perf_counter()
        vals[purcell] = fidelity_4ls(p.with_purcell(purcell), 10.0).fidelity
        times.append(time.perf_counter() - t0)
    ok = abs(vals[20] - 0.86) <= 0.02 and abs(vals[40] - 0.94) <= 0.02 and max(times) < 60
    record(1, ok, f"F(P=20)={vals[20]:.4f} F(P=40)={vals[40]:.4f} (targets 0.86/0.94 +-0.02), "
                  f"slowest point {max(times):.2f}s")


def test_criterion_2_fidelity_shape():
    delta_ts = np.linspace(1, 50, 50)
    purcells = [10, 20, 40, math.inf]
    res = fidelity_sweep(reference_params_4ls(), delta_ts, purcells)
    F = res.column("fidelity").reshape(len(delta_ts), len(purcells))
    monotone = bool(np.all(np.diff(F, axis=0) >= 0))
    ordered = bool(np.all(np.diff(F[:, ::-1], axis=1) <= 0))
    record(2, monotone and ordered, f"non-decreasing in delta_t: {monotone}, ordering inf>=40>=20>=10: {ordered}")


def test_criterion_3_leakage_shape():
    purcells = np.linspace(5, 100, 96)
    res = leakage_sweep_4ls(reference_params_4ls(), 10.0, purcells)
    leak = res.column("leakage")
    decreasing = bool(np.all(np.diff(leak) < 0))
    record(3, decreasing and leak[-1] < 0.10,
           f"strictly decreasing: {decreasing}, P_l(P=100)={leak[-1]:.4f} (< 0.10)")


def test_criterion_4_three_level_scheme():
    p3 = reference_params_3ls()
    f20 = fidelity_3ls(p3.with_purcell(20), 10.0)
    leaks = {P: fidelity_3ls(p3.with_purcell(P), 10.0).leakage for P in (20, 40, 100)}
    ok = f20.fidelity >= 0.95 and all(v <= 0.07 for v in leaks.values())
    record(4, ok, f"F(P=20)={f20.fidelity:.4f} (>= 0.95), P_l(P=20,40,100)="
                  + "/".join(f"{v:.4f}" for v in leaks.values()) + " (<= 0.05+0.02)")


def test_criterion_5_truth_tables():
    p = params_from_solution(1000.0, solve_gate_conditions(1000.0, 600.0, 800.0, 1.0))
    tol = 5 * p.gamma / p.min_detuning
    table = truth_table(p)
    target = {k: (-1) ** (k[0] * k[1]) for k in table.entries}
    errs = {k: abs(v - target[k]) for k, v in table.entries.items()}
    ok4 = errs[(1, 1)] < 1e-9 and all(errs[k] < tol for k in [(0, 0), (0, 1), (1, 0)])

    p3 = reference_params_3ls()
    tol3 = 5 * p3.gamma / p3.min_detuning
    t3 = three_ls_photon_atom_gate(p3)
    exact3 = max(abs(t3[(1, "g")] + 1), abs(t3[(1, "s")] - 1))
    near3 = max(abs(t3[(0, "g")] - 1), abs(t3[(0, "s")] - 1))
    ok3 = exact3 < 1e-12 and near3 < tol3
    record(5, ok4 and ok3,
           "4LS errors " + " ".join(f"{i}{j}={e:.2e}" for (i, j), e in sorted(errs.items()))
           + f" (tol {tol:.2e}, 11 tol 1e-9); 3LS omega1 {exact3:.1e}, omega0 {near3:.2e} (tol {tol3:.2e})")


def test_criterion_6_oracle():
    n = 1000
    dev = agreement_suite(n, seed=2024)
    worst = max(dev.values())
    record(6, worst <= 1e-10, f"{n} samples/family, half lossy, max deviation {worst:.2e} (<= 1e-10)")


def test_criterion_7_properties():
    t0 = time.perf_counter()
    rng = np.random.default_rng(11)
    p = reference_params_4ls()
    flux = 0.0
    for _ in range(2000):
        w = p.omega1 + rng.normal(0, 5)
        r11, r13 = amp.reflect_from_ground(p, w)
        r33, r31 = amp.reflect_from_meta_raman(p, p.omega32 + rng.normal(0, 5))
        flux = max(flux, abs(abs(r11) ** 2 + abs(r13) ** 2 - 1), abs(abs(r33) ** 2 + abs(r31) ** 2 - 1))
    r3 = max(abs(amp.reflect_from_meta_resonant(replace(p, gamma=g), p.omega1, check=False) + 1) for g in (0.1, 1, 10, 100))
    leak = max(abs(fidelity_4ls(p, dt).leakage) for dt in (1, 10, 50))
    mp = MemoryParams()
    mem = min(round_trip_fidelity(mp, *(v / np.linalg.norm(v)))
              for v in rng.normal(size=(200, 2)) + 1j * rng.normal(size=(200, 2)))
    grid = QuadratureGrid()
    refine = max(fidelity_4ls(p.with_purcell(P), dt, grid).grid_residual
                 for P in (10, 20, 40, math.inf) for dt in (1, 10, 50))
    elapsed = time.perf_counter() - t0
    ok = flux <= 1e-12 and r3 <= 1e-12 and leak <= 1e-9 and mem >= 1 - 1e-10 and refine < 1e-5
    record(7, ok, f"flux {flux:.1e}, R3 {r3:.1e}, lossless P_l {leak:.1e}, memory 1-F {1 - mem:.1e}, "
                  f"grid {refine:.1e}, bundle {elapsed:.1f}s")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
