"""Gaussian-pulse gate fidelity and leakage.

Pulses have spectral amplitude g(w) with integral |g|^2 dw = 1, so
g^2(w) = exp(-w^2/sigma^2) / (sigma sqrt(pi)) and the temporal width is
dT = 1/(2 sigma).

Leakage follows the definition P_l = 1 - <phi_f|phi_f>^2 (the squared norm
is squared again). ``GateMetrics.norm`` keeps <phi_f|phi_f> so the linear
form 1 - <phi_f|phi_f> is available too.
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import amplitudes as amp
from .errors import GridNotConverged, PulseOverlap
from .params import SystemParams3LS, SystemParams4LS, validate_params

GRID_TOL = 1e-4
OVERLAP_SIGMAS = 20.0


@dataclass(frozen=True)
class PulseSpec:
    center: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    @classmethod
    def from_delta_t(cls, center: float, delta_t: float) -> "PulseSpec":
        return cls(center, 1.0 / (2.0 * delta_t))

    @property
    def delta_t(self) -> float:
        return 1.0 / (2.0 * self.sigma)

    def g2(self, omega):
        x = (np.asarray(omega) - self.center) / self.sigma
        return np.exp(-x * x) / (self.sigma * math.sqrt(math.pi))

    def g(self, omega):
        return np.sqrt(self.g2(omega))


@dataclass(frozen=True)
class QuadratureGrid:
    half_width: float = 6.0
    points_per_dim: int = 301
    scheme: str = "gauss-legendre"

    def __post_init__(self):
        if self.points_per_dim < 51 or self.points_per_dim % 2 == 0:
            raise ValueError("points_per_dim must be odd and >= 51")
        if self.scheme not in ("gauss-legendre", "trapezoid"):
            raise ValueError(f"unknown scheme {self.scheme!r}")

    def nodes(self, sigma: float):
        """Offsets from the pulse center and their weights."""
        n = self.points_per_dim
        h = self.half_width * sigma
        if self.scheme == "gauss-legendre":
            x, w = np.polynomial.legendre.leggauss(n)
            return x * h, w * h
        x = np.linspace(-h, h, n)
        w = np.full(n, 2 * h / (n - 1))
        w[[0, -1]] *= 0.5
        return x, w

    def refined(self) -> "QuadratureGrid":
        return QuadratureGrid(self.half_width, 2 * self.points_per_dim - 1, self.scheme)


@dataclass(frozen=True)
class GateMetrics:
    fidelity: float
    leakage: float
    grid_residual: float
    norm: float = float("nan")

    @property
    def leakage_linear(self) -> float:
        return 1.0 - self.norm


def _gauss(x, sigma):
    return np.exp(-0.5 * (x / sigma) ** 2) / math.sqrt(sigma * math.sqrt(math.pi))


def _terms_4ls(p: SystemParams4LS, sigma: float, grid: QuadratureGrid, c_trivial_phase: bool):
    """Quadrature pieces of the overlap with the target and of the output norm.

    A and B share nodes around omega1, C sits around omega32. Returns a dict
    of the branch overlaps (s1: all photons unshifted, s2 / s3: B or A
    Raman-shifted with C released) and branch norms.
    """
    x, w = grid.nodes(sigma)
    d = p.omega13
    g = _gauss(x, sigma)
    wa = w * g * g
    # input weight times the target amplitude at the shifted frequency
    w_shift_down = w * g * _gauss(x - d, sigma)
    w_shift_up = w * g * _gauss(x + d, sigma)

    wq = p.omega1 + x
    r11, r13 = amp.reflect_from_ground(p, wq, check=False)
    r33t, r31t = amp.reflect_from_meta_raman(p, wq - d, check=False)
    R3 = amp.reflect_from_meta_resonant(p, wq, check=False)

    f1 = np.outer(r11 ** 2, r11) + np.outer(r13 * r31t, R3)
    f2 = np.outer(r11 * R3, r13)
    f3 = np.outer(r11 * r13, r11) + np.outer(r13 * r33t, R3)

    wc = p.omega32 + x
    r33c, r31c = amp.reflect_from_meta_raman(p, wc, check=False)
    pass_c = -amp.mirror_phase(wc, p.a) if c_trivial_phase else np.ones_like(wc, dtype=complex)

    c1 = np.sum(wa * pass_c)
    c_release = np.sum(w_shift_up * r31c)
    s1 = np.einsum("i,j,ij->", wa, wa, f1) * c1
    s2 = np.einsum("i,j,ij->", wa, w_shift_down, f2) * c_release
    s3 = np.einsum("i,j,ij->", w_shift_down, wa, f3) * c_release

    n1 = np.einsum("i,j,ij->", wa, wa, np.abs(f1) ** 2) * np.sum(wa * np.abs(pass_c) ** 2)
    c3 = np.sum(wa * (np.abs(r33c) ** 2 + np.abs(r31c) ** 2))
    n23 = (np.einsum("i,j,ij->", wa, wa, np.abs(f2) ** 2)
           + np.einsum("i,j,ij->", wa, wa, np.abs(f3) ** 2)) * c3
    return {
        "s1": s1, "s2": s2, "s3": s3,
        "s1_2d": np.einsum("i,j,ij->", wa, wa, f1), "c_weight": c1,
        "norm": float(np.real(n1 + n23)),
    }


def _eval_4ls(p, sigma, grid, c_trivial_phase):
    t = _terms_4ls(p, sigma, grid, c_trivial_phase)
    # target carries an overall minus sign
    overlap = -(t["s1"] + t["s2"] + t["s3"])
    return float(abs(overlap) ** 2), 1.0 - t["norm"] ** 2, t["norm"]


def _eval_3ls(p3, sigma, grid):
    x, w = grid.nodes(sigma)
    wq = p3.omega1 + x
    weight = w * _gauss(x, sigma) ** 2
    rg = amp.reflect_3ls(p3, "g", wq, check=False)
    rs = amp.reflect_3ls(p3, "s", wq, check=False)
    fid = abs(0.5 * np.sum(weight * (rg - rs))) ** 2
    norm = float(np.sum(weight * (np.abs(rg) ** 2 + 1.0) / 2.0))
    return float(fid), 1.0 - norm ** 2, norm


def _with_residual(evaluate, grid, check_grid):
    f, l, n = evaluate(grid)
    f2, l2, _ = evaluate(grid.refined())
    residual = max(abs(f - f2), abs(l - l2))
    if check_grid and residual > GRID_TOL:
        raise GridNotConverged(f"grid residual {residual:.3g} > {GRID_TOL:g}")
    return GateMetrics(f, l, residual, n)


def fidelity_4ls(p: SystemParams4LS, delta_t: float, grid: QuadratureGrid = QuadratureGrid(),
                 c_trivial_phase: bool = False, check_grid: bool = True) -> GateMetrics:
    """Pulse-averaged fidelity and leakage of the 4LS photon-photon gate.

    A and B pulses are centered at omega1, C at omega32; the target is
    -|phi_A>|phi_B>|phi_C>|1>.
    """
    validate_params(p).raise_if_failed()
    sigma = 1.0 / (2.0 * delta_t)
    if p.omega13 < OVERLAP_SIGMAS * sigma:
        raise PulseOverlap(f"omega13 = {p.omega13:.4g} < {OVERLAP_SIGMAS:g} sigma = {OVERLAP_SIGMAS * sigma:.4g}")
    return _with_residual(lambda gr: _eval_4ls(p, sigma, gr, c_trivial_phase), grid, check_grid)


def fidelity_3ls(p3: SystemParams3LS, delta_t: float, grid: QuadratureGrid = QuadratureGrid(),
                 check_grid: bool = True) -> GateMetrics:
    """Photon-atom gate with the atom in (|g> + |s>)/sqrt(2), pulse at omega1."""
    validate_params(p3).raise_if_failed()
    sigma = 1.0 / (2.0 * delta_t)
    return _with_residual(lambda gr: _eval_3ls(p3, sigma, gr), grid, check_grid)


CSV_HEADER = ("delta_t", "purcell", "fidelity", "leakage", "grid_residual")


def _fmt(v: float) -> str:
    if math.isinf(v):
        return "inf"
    return f"{v:.12g}"


@dataclass
class SweepResult:
    rows: list = field(default_factory=list)
    scheme: str = "4ls"

    def column(self, name: str) -> np.ndarray:
        return np.array([r[name] for r in self.rows], dtype=float)

    @property
    def monotone_leakage(self) -> bool:
        """Leakage strictly decreasing along the rows' Purcell order."""
        rows = sorted(self.rows, key=lambda r: r["purcell"])
        vals = [r["leakage"] for r in rows]
        return all(b < a for a, b in zip(vals, vals[1:]))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in self.rows:
            writer.writerow([_fmt(r[k]) for k in CSV_HEADER])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [{k: (None if math.isinf(r[k]) else float(f"{r[k]:.12g}")) if k == "purcell"
                 else float(f"{r[k]:.12g}") for k in CSV_HEADER} for r in self.rows]
        return json.dumps({"scheme": self.scheme, "rows": rows}, indent=2)


def _row(p, delta_t, purcell, grid, kwargs):
    q = p.with_purcell(purcell)
    if isinstance(q, SystemParams3LS):
        m = fidelity_3ls(q, delta_t, grid, **kwargs)
    else:
        m = fidelity_4ls(q, delta_t, grid, **kwargs)
    return {"delta_t": float(delta_t), "purcell": float(purcell), **asdict(m)}


def fidelity_sweep(p, delta_t_values, purcell_values, grid: QuadratureGrid = QuadratureGrid(),
                   workers: int | None = None, **kwargs) -> SweepResult:
    """Cartesian (delta_t, purcell) sweep; rows come back in input order."""
    jobs = [(dt, pf) for dt in delta_t_values for pf in purcell_values]
    scheme = "3ls" if isinstance(p, SystemParams3LS) else "4ls"
    if not jobs:
        return SweepResult([], scheme)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(lambda job: _row(p, job[0], job[1], grid, kwargs), jobs))
    return SweepResult(rows, scheme)


def leakage_sweep_4ls(p: SystemParams4LS, delta_t: float, purcell_values,
                      grid: QuadratureGrid = QuadratureGrid(), workers: int | None = None,
                      **kwargs) -> SweepResult:
    return fidelity_sweep(p, [delta_t], purcell_values, grid, workers, **kwargs)
