"""Numerical scattering oracle.

Solves the real-space matching problem of a single photon hitting a
delta-coupled emitter in front of a hard wall by dense linear algebra.
Nothing here uses the closed forms in :mod:`wgqed.amplitudes`; agreement
between the two is the test.

Each channel c carries chiral plane waves with wavenumber k_c::

    phi_cR(x) = exp(i k_c x) [inc_c theta(-x) + bR_c theta(x)]
    phi_cL(x) = exp(-i k_c x) [out_c theta(-x) + bL_c theta(x)]

Unknowns are (bR_c, out_c, bL_c) per channel plus the excited amplitude e.
Equations: two delta jump conditions per channel, one hard-wall condition
per channel, and the emitter equation with phi(0) regularized as the mean
of its one-sided limits.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SingularSystem
from .params import SystemParams3LS, SystemParams4LS, validate_params

COND_MAX = 1e12
RESIDUAL_MAX = 1e-10


@dataclass(frozen=True)
class LinearScatterProblem:
    unknowns: tuple
    matrix: np.ndarray
    rhs: np.ndarray

    def solve(self) -> "ScatterSolution":
        cond = np.linalg.cond(self.matrix)
        if not np.isfinite(cond) or cond > COND_MAX:
            raise SingularSystem(f"condition number {cond:.3g} exceeds {COND_MAX:g}")
        x = np.linalg.solve(self.matrix, self.rhs)
        residual = float(np.max(np.abs(self.matrix @ x - self.rhs)))
        if residual > RESIDUAL_MAX:
            raise SingularSystem(f"solve residual {residual:.3g}")
        return ScatterSolution(dict(zip(self.unknowns, x)), cond, residual)


@dataclass(frozen=True)
class ScatterSolution:
    values: dict
    condition_number: float
    residual: float

    def __getitem__(self, key):
        return self.values[key]


def build_problem(ks, incoming, detuning, coupling, a) -> LinearScatterProblem:
    """Assemble the matching equations.

    ks: wavenumber per channel; incoming: incident right-mover amplitude per
    channel; detuning: (excited energy - i loss/2 - total energy);
    coupling: V = sqrt(gamma / 2).
    """
    nch = len(ks)
    n = 3 * nch + 1
    ie = n - 1
    A = np.zeros((n, n), dtype=complex)
    b = np.zeros(n, dtype=complex)
    names = []
    row = 0
    for c, (k, inc) in enumerate(zip(ks, incoming)):
        iR, iout, iL = 3 * c, 3 * c + 1, 3 * c + 2
        names += [f"bR{c}", f"out{c}", f"bL{c}"]
        # (-i d/dx - k) phi_R + V delta e = 0  ->  -i (bR - inc) + V e = 0
        A[row, iR] = -1j
        A[row, ie] = coupling
        b[row] = -1j * inc
        row += 1
        # (i d/dx - k) phi_L + V delta e = 0  ->  i (bL - out) + V e = 0
        A[row, iL] = 1j
        A[row, iout] = -1j
        A[row, ie] = coupling
        row += 1
        # hard wall at x = a
        A[row, iR] = np.exp(1j * k * a)
        A[row, iL] = np.exp(-1j * k * a)
        row += 1
    names.append("e")
    A[row, ie] = detuning
    for c, inc in enumerate(incoming):
        A[row, 3 * c] += coupling / 2
        A[row, 3 * c + 1] += coupling / 2
        A[row, 3 * c + 2] += coupling / 2
        b[row] -= coupling * inc / 2
    return LinearScatterProblem(tuple(names), A, b)


def _v(gamma):
    return np.sqrt(gamma / 2.0)


def oracle_reflect_from_ground(p: SystemParams4LS, omega: float, *, check=True):
    """(r11, r13) from the two-channel problem with the emitter starting in |1>."""
    if check:
        validate_params(p).raise_if_failed()
    # total energy omega; channel |3> photons carry omega - omega13
    prob = build_problem(
        ks=(omega, omega - p.omega13),
        incoming=(1.0, 0.0),
        detuning=p.omega12 - 0.5j * p.gamma_prime - omega,
        coupling=_v(p.gamma),
        a=p.a,
    )
    sol = prob.solve()
    return sol["out0"], sol["out1"]


def oracle_reflect_from_meta(p: SystemParams4LS, omega: float, *, check=True):
    """R3 from the single-channel 3->4 problem."""
    if check:
        validate_params(p).raise_if_failed()
    prob = build_problem((omega,), (1.0,), p.omega34 - 0.5j * p.gamma_prime - omega,
                         _v(p.gamma), p.a)
    return prob.solve()["out0"]


def oracle_reflect_raman(p: SystemParams4LS, omega: float, *, check=True):
    """(r33, r31) from the two-channel problem with the emitter starting in |3>."""
    if check:
        validate_params(p).raise_if_failed()
    # level 2 sits omega32 above |3>; the |1> channel photon carries omega + omega13
    prob = build_problem(
        ks=(omega, omega + p.omega13),
        incoming=(1.0, 0.0),
        detuning=p.omega32 - 0.5j * p.gamma_prime - omega,
        coupling=_v(p.gamma),
        a=p.a,
    )
    sol = prob.solve()
    return sol["out0"], sol["out1"]


def oracle_reflect_3ls(p3: SystemParams3LS, omega: float, *, check=True):
    if check:
        validate_params(p3).raise_if_failed()
    prob = build_problem((omega,), (1.0,), p3.omega_eg - 0.5j * p3.gamma_prime - omega,
                         _v(p3.gamma), p3.a)
    return prob.solve()["out0"]


def random_params(rng, lossy=True) -> SystemParams4LS:
    """Draw a 4LS parameter set that passes validation."""
    from .params import solve_gate_conditions, params_from_solution

    while True:
        a = rng.uniform(0.05, 2.0)
        omega12 = rng.uniform(500.0, 2000.0)
        omega32 = omega12 - rng.uniform(150.0, 400.0)
        omega0 = omega12 + rng.choice([-1, 1]) * rng.uniform(150.0, 400.0)
        gamma = rng.uniform(0.1, 5.0)
        gp = rng.uniform(0.0, gamma) if lossy else 0.0
        try:
            sol = solve_gate_conditions(omega12, omega32, omega0, a, gamma=gamma)
        except Exception:
            continue
        p = params_from_solution(omega12, sol, gamma=gamma, gamma_prime=gp)
        if validate_params(p).ok:
            return p


def random_params_3ls(rng, lossy=True) -> SystemParams3LS:
    a = rng.uniform(0.05, 2.0)
    unit = np.pi / (2 * a)
    odd = lambda x: (2 * np.floor(x / unit / 2) + 1) * unit  # noqa: E731
    gamma = rng.uniform(0.1, 5.0)
    omega_eg = odd(rng.uniform(500.0, 2000.0))
    omega0 = odd(omega_eg + rng.choice([-1, 1]) * rng.uniform(600.0, 900.0))
    return SystemParams3LS(gamma=gamma, gamma_prime=rng.uniform(0.0, gamma) if lossy else 0.0,
                           omega_eg=float(omega_eg), omega0=float(omega0), a=a)


def agreement_suite(n: int = 1000, seed: int = 0) -> dict:
    """Max |closed form - oracle| per amplitude family over random accepted samples."""
    from . import amplitudes as amp

    rng = np.random.default_rng(seed)
    worst = {"ground": 0.0, "meta_resonant": 0.0, "meta_raman": 0.0, "three_level": 0.0}
    for i in range(n):
        p = random_params(rng, lossy=i % 2 == 0)
        # probe near every transition and at random offsets
        center = rng.choice([p.omega12, p.omega32, p.omega0])
        w = center + rng.normal(0.0, 3.0 * p.gamma)
        cf = np.array(amp.reflect_from_ground(p, w, check=False))
        worst["ground"] = max(worst["ground"], float(np.max(np.abs(cf - oracle_reflect_from_ground(p, w, check=False)))))
        worst["meta_resonant"] = max(worst["meta_resonant"], float(abs(
            amp.reflect_from_meta_resonant(p, w, check=False) - oracle_reflect_from_meta(p, w, check=False))))
        cf = np.array(amp.reflect_from_meta_raman(p, w, check=False))
        worst["meta_raman"] = max(worst["meta_raman"], float(np.max(np.abs(cf - oracle_reflect_raman(p, w, check=False)))))
        p3 = random_params_3ls(rng, lossy=i % 2 == 0)
        w3 = p3.omega_eg + rng.normal(0.0, 3.0 * p3.gamma)
        worst["three_level"] = max(worst["three_level"], float(abs(
            amp.reflect_3ls(p3, "g", w3, check=False) - oracle_reflect_3ls(p3, w3, check=False))))
    return worst
