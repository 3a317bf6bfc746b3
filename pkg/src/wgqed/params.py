"""Physical parameter sets and the phase-matching conditions of the gate.

Units: hbar = c = 1. The waveguide decay rate ``gamma`` is the rate unit and
the emitter-mirror distance ``a`` is measured in time units (c/gamma).
The ground state |1> is the energy reference, so ``omega12`` is also the
energy of level 2.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from .errors import BadConfig, InvalidParams, NoValidSolution

TWO_PI = 2.0 * math.pi

DETUNING_FLOOR = 100.0
COND_TOL = 1e-9
NODE_FLOOR = 0.1


_PI = Fraction("3.14159265358979323846264338327950288419716939937510")


def trapping_residual(omega12, omega32, a) -> float:
    """|2 (omega12 + omega32) a mod 2 pi| evaluated exactly on the stored floats."""
    x = 2 * (Fraction(omega12) + Fraction(omega32)) * Fraction(a) / (2 * _PI)
    return float(abs(x - round(x)) * 2 * _PI)


def mirror_residual(omega0, a) -> float:
    """Distance of 2 omega0 a from the nearest odd multiple of pi, evaluated exactly."""
    x = 2 * Fraction(omega0) * Fraction(a) / _PI
    odd = 2 * math.floor(x / 2) + 1
    return float(abs(x - odd) * _PI)


def wrap_phase(phi):
    """Map a phase onto [-pi, pi)."""
    return np.mod(np.asarray(phi) + math.pi, TWO_PI) - math.pi


@dataclass(frozen=True)
class SystemParams4LS:
    gamma: float = 1.0
    gamma_prime: float = 0.0
    omega12: float = 1000.0
    omega32: float = 509 * math.pi - 1000.0
    omega34: float | None = None
    a: float = 1.0
    omega0: float = 509 * math.pi / 2
    omega1: float | None = None
    detuning_floor: float = DETUNING_FLOOR
    cond_tol: float = COND_TOL
    node_floor: float = NODE_FLOOR

    def __post_init__(self):
        # omega34 and omega1 default to the 1->2 resonance
        if self.omega34 is None:
            object.__setattr__(self, "omega34", self.omega12)
        if self.omega1 is None:
            object.__setattr__(self, "omega1", self.omega12)

    @property
    def omega13(self) -> float:
        """Energy of the metastable level |3>."""
        return self.omega12 - self.omega32

    @property
    def purcell(self) -> float:
        return math.inf if self.gamma_prime == 0 else self.gamma / self.gamma_prime

    @property
    def gate_conditions_met(self) -> bool:
        trap = trapping_residual(self.omega12, self.omega32, self.a)
        mirror = mirror_residual(self.omega0, self.a)
        return bool(trap < self.cond_tol and mirror < self.cond_tol)

    @property
    def min_detuning(self) -> float:
        """Smallest detuning of omega0 from the 1->2 and 3->2 transitions."""
        return min(abs(self.omega0 - self.omega12), abs(self.omega0 - self.omega32))

    def with_purcell(self, purcell: float) -> "SystemParams4LS":
        gp = 0.0 if math.isinf(purcell) else self.gamma / purcell
        return replace(self, gamma_prime=gp)


@dataclass(frozen=True)
class SystemParams3LS:
    gamma: float = 1.0
    gamma_prime: float = 0.0
    omega_eg: float = 1001 * math.pi / 2
    a: float = 1.0
    omega0: float = 1201 * math.pi / 2
    omega1: float | None = None
    detuning_floor: float = DETUNING_FLOOR
    cond_tol: float = COND_TOL

    def __post_init__(self):
        if self.omega1 is None:
            object.__setattr__(self, "omega1", self.omega_eg)

    def detuning(self, omega):
        """Delta(omega) = omega_eg - omega."""
        return self.omega_eg - omega

    @property
    def purcell(self) -> float:
        return math.inf if self.gamma_prime == 0 else self.gamma / self.gamma_prime

    @property
    def min_detuning(self) -> float:
        return abs(self.omega0 - self.omega_eg)

    @property
    def gate_conditions_met(self) -> bool:
        c0 = mirror_residual(self.omega0, self.a)
        c1 = mirror_residual(self.omega_eg, self.a)
        return bool(c0 < self.cond_tol and c1 < self.cond_tol)

    def with_purcell(self, purcell: float) -> "SystemParams3LS":
        gp = 0.0 if math.isinf(purcell) else self.gamma / purcell
        return replace(self, gamma_prime=gp)


@dataclass(frozen=True)
class MemoryParams:
    """M-type five-level memory: g->e0 at omega0, g->e1 at omega1, s_i->e_i at omega_es."""

    gamma: float = 1.0
    gamma_prime: float = 0.0
    omega_e0g: float = 1000.0
    omega_e1g: float = 1000.0 + 64 * math.pi
    omega_es: float = 509 * math.pi - 1000.0
    a: float = 1.0
    detuning_floor: float = DETUNING_FLOOR
    cond_tol: float = COND_TOL

    def branch(self, i: int) -> SystemParams4LS:
        """The Lambda branch serving qubit frequency i, as a relabeled 4LS."""
        w = (self.omega_e0g, self.omega_e1g)[i]
        other = (self.omega_e1g, self.omega_e0g)[i]
        return SystemParams4LS(
            gamma=self.gamma,
            gamma_prime=self.gamma_prime,
            omega12=w,
            omega32=self.omega_es,
            a=self.a,
            omega0=other,
            detuning_floor=self.detuning_floor,
            cond_tol=self.cond_tol,
        )


@dataclass(frozen=True)
class ConditionSolution:
    a: float
    omega32: float
    omega0: float
    n1: int
    n0: int
    residuals: dict = field(default_factory=dict)

    @property
    def m(self) -> int:
        return 2 * self.n0 + 1


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    residual: float


@dataclass(frozen=True)
class ValidationReport:
    checks: tuple

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [asdict(c) for c in self.checks],
        }

    def raise_if_failed(self):
        if not self.ok:
            raise InvalidParams(self)


def _check(name, ok, residual=0.0):
    return Check(name, bool(ok), float(residual))


def validate_params(p) -> ValidationReport:
    """Check every model invariant of a parameter set and report each one.

    Never raises; callers that need valid params use ``raise_if_failed``.
    """
    if isinstance(p, SystemParams3LS):
        return _validate_3ls(p)
    if isinstance(p, MemoryParams):
        return _validate_memory(p)
    floor = p.detuning_floor * p.gamma
    trap = trapping_residual(p.omega12, p.omega32, p.a)
    mirror = mirror_residual(p.omega0, p.a)
    node = abs(np.exp(1j * wrap_phase(2 * p.omega1 * p.a)) - 1)
    checks = (
        # gamma = 0 is the decoupled-mirror limit and stays admissible
        _check("gamma >= 0", p.gamma >= 0, min(p.gamma, 0.0)),
        _check("gamma_prime >= 0", p.gamma_prime >= 0, min(p.gamma_prime, 0.0)),
        _check("a > 0", p.a > 0, p.a),
        _check("omega1 == omega12", p.omega1 == p.omega12, p.omega1 - p.omega12),
        _check("omega34 == omega12", p.omega34 == p.omega12, p.omega34 - p.omega12),
        _check("omega13 > 0", p.omega13 > 0, p.omega13),
        _check("|omega32 - omega12| >= floor", abs(p.omega32 - p.omega12) >= floor,
               abs(p.omega32 - p.omega12)),
        _check("|omega0 - omega12| >= floor", abs(p.omega0 - p.omega12) >= floor,
               abs(p.omega0 - p.omega12)),
        _check("trapping condition", trap < p.cond_tol, trap),
        _check("mirror condition", mirror < p.cond_tol, mirror),
        _check("node guard", node > p.node_floor, node),
    )
    return ValidationReport(checks)


def _validate_3ls(p: SystemParams3LS) -> ValidationReport:
    floor = p.detuning_floor * p.gamma
    c0 = mirror_residual(p.omega0, p.a)
    c1 = mirror_residual(p.omega_eg, p.a)
    checks = (
        _check("gamma >= 0", p.gamma >= 0, min(p.gamma, 0.0)),
        _check("gamma_prime >= 0", p.gamma_prime >= 0, min(p.gamma_prime, 0.0)),
        _check("a > 0", p.a > 0, p.a),
        _check("omega1 == omega_eg", p.omega1 == p.omega_eg, p.omega1 - p.omega_eg),
        _check("|omega0 - omega_eg| >= floor", abs(p.omega0 - p.omega_eg) >= floor,
               abs(p.omega0 - p.omega_eg)),
        _check("omega0 condition", c0 < p.cond_tol, c0),
        _check("omega_eg condition", c1 < p.cond_tol, c1),
    )
    return ValidationReport(checks)


def _validate_memory(p: MemoryParams) -> ValidationReport:
    floor = p.detuning_floor * p.gamma
    checks = [
        _check("gamma >= 0", p.gamma >= 0, min(p.gamma, 0.0)),
        _check("gamma_prime >= 0", p.gamma_prime >= 0, min(p.gamma_prime, 0.0)),
        _check("a > 0", p.a > 0, p.a),
        _check("|omega0 - omega1| >= floor", abs(p.omega_e0g - p.omega_e1g) >= floor,
               abs(p.omega_e0g - p.omega_e1g)),
    ]
    for i, w in enumerate((p.omega_e0g, p.omega_e1g)):
        trap = trapping_residual(w, p.omega_es, p.a)
        node = abs(np.exp(1j * wrap_phase(2 * w * p.a)) - 1)
        checks += [
            _check(f"branch {i}: omega_es < omega_{i}", p.omega_es < w, w - p.omega_es),
            _check(f"branch {i}: |omega_es - omega_{i}| >= floor",
                   abs(w - p.omega_es) >= floor, abs(w - p.omega_es)),
            _check(f"branch {i}: trapping condition", trap < p.cond_tol, trap),
            _check(f"branch {i}: node guard", node > NODE_FLOOR, node),
        ]
    return ValidationReport(tuple(checks))


def solve_gate_conditions(omega12, omega32_target, omega0_target, a_target,
                          detuning_floor=DETUNING_FLOOR, gamma=1.0) -> ConditionSolution:
    """Snap omega32 and omega0 onto the nearest lattice points meeting both conditions.

    The distance ``a`` is held fixed. ``2(omega12 + omega32) a = 2 n1 pi`` and
    ``2 omega0 a = (2 n0 + 1) pi``. Both frequencies are rounded once from
    exact rationals, so the residuals are bounded by half an ulp times 2a
    (below 1e-12 rad while omega * a stays under about 4e3).
    """
    if min(omega12, omega32_target, omega0_target, a_target) <= 0:
        raise NoValidSolution("all inputs must be positive")
    a = float(a_target)
    n1 = int(round((omega12 + omega32_target) * a / math.pi))
    omega32 = float(n1 * _PI / Fraction(a) - Fraction(omega12))
    m = int(round(2 * omega0_target * a / math.pi))
    if m % 2 == 0:
        # nearest odd integer; ties go down
        m = m + 1 if 2 * omega0_target * a / math.pi > m else m - 1
    omega0 = float(m * _PI / (2 * Fraction(a)))
    residuals = {
        "trapping": trapping_residual(omega12, omega32, a),
        "mirror": mirror_residual(omega0, a),
    }
    floor = detuning_floor * gamma
    if omega32 <= 0 or omega0 <= 0:
        raise NoValidSolution(f"non-positive frequency after rounding (omega32={omega32}, omega0={omega0})")
    if abs(omega32 - omega12) < floor:
        raise NoValidSolution(f"|omega32 - omega12| = {abs(omega32 - omega12):.4g} below detuning floor")
    if abs(omega0 - omega12) < floor:
        raise NoValidSolution(f"|omega0 - omega12| = {abs(omega0 - omega12):.4g} below detuning floor")
    return ConditionSolution(a=a, omega32=omega32, omega0=omega0, n1=n1, n0=(m - 1) // 2,
                             residuals=residuals)


def params_from_solution(omega12, sol: ConditionSolution, **kw) -> SystemParams4LS:
    return SystemParams4LS(omega12=omega12, omega32=sol.omega32, omega0=sol.omega0, a=sol.a, **kw)


def reference_params_4ls(purcell: float = math.inf, a: float = 0.1) -> SystemParams4LS:
    """Gate-ready parameters used for the pulse metrics.

    The emitter sits at a field antinode (``exp(2i omega1 a) = -1``), which
    maximizes the coupling of the trapping transition; ``a`` is short so the
    mirror round trip adds little phase spread across a pulse.
    """
    unit = math.pi / (2 * a)
    omega12 = (2 * round(1000.0 / unit / 2 - 0.5) + 1) * unit
    sol = solve_gate_conditions(omega12, omega12 - 220.0, omega12 + 280.0, a)
    return params_from_solution(omega12, sol).with_purcell(purcell)


def reference_params_3ls(purcell: float = math.inf, a: float = 0.1) -> SystemParams3LS:
    unit = math.pi / (2 * a)
    odd = lambda x: (2 * round(x / unit / 2 - 0.5) + 1) * unit  # noqa: E731
    return SystemParams3LS(omega_eg=odd(1000.0), omega0=odd(1300.0), a=a).with_purcell(purcell)


_KINDS = {"4ls": SystemParams4LS, "3ls": SystemParams3LS, "memory": MemoryParams}


def params_from_dict(data: dict, kind: str = "4ls"):
    """Build a parameter set from a flat mapping with the dataclass field names."""
    cls = _KINDS[kind]
    names = {f.name for f in fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise BadConfig(f"unknown {kind} parameter(s): {sorted(unknown)}")
    try:
        return cls(**{k: (None if v is None else float(v)) for k, v in data.items()})
    except (TypeError, ValueError) as exc:
        raise BadConfig(str(exc)) from exc


def load_params(path, kind: str = "4ls"):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise BadConfig(f"cannot read {path}: {exc}") from exc
    if "params" in data and isinstance(data["params"], dict):
        data = data["params"]
    return params_from_dict(data, kind)


def params_to_dict(p) -> dict:
    return asdict(p)
