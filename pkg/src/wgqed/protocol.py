"""Four-step photon-photon phase gate and the three-level alternative.

A :class:`MultiPhotonState` is a sparse superposition over (photon modes,
emitter level). Photon modes are tracked symbolically as a base frequency
plus an integer number of ``omega13`` shifts, so branches that return to
the same frequency merge exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Iterable

import numpy as np

from . import amplitudes as amp
from .errors import AtomNotDisentangled
from .params import SystemParams3LS, SystemParams4LS, validate_params


@dataclass(frozen=True)
class PhotonMode:
    label: str
    base: float
    shift: int = 0
    freq: float = field(default=float("nan"), compare=False, hash=False)

    def shifted(self, p: SystemParams4LS, by: int) -> "PhotonMode":
        s = self.shift + by
        return PhotonMode(self.label, self.base, s, self.base + s * p.omega13)


def _mode(label, omega):
    return PhotonMode(label, float(omega), 0, float(omega))


@dataclass(frozen=True)
class Term:
    photons: tuple
    emitter: object
    amplitude: complex

    def photon(self, label: str) -> PhotonMode:
        for m in self.photons:
            if m.label == label:
                return m
        raise KeyError(label)


class MultiPhotonState:
    """Immutable superposition; duplicate (photons, emitter) keys are summed."""

    def __init__(self, terms: Iterable[Term] = ()):
        merged: dict = {}
        modes: dict = {}
        for t in terms:
            photons = tuple(sorted(t.photons, key=lambda m: m.label))
            key = (photons, t.emitter)
            merged[key] = merged.get(key, 0j) + complex(t.amplitude)
            modes.setdefault(key, photons)
        self._terms = tuple(Term(modes[k], k[1], a) for k, a in merged.items())

    @property
    def terms(self) -> tuple:
        return self._terms

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def norm2(self) -> float:
        return float(sum(abs(t.amplitude) ** 2 for t in self._terms))

    def amplitude(self, freqs: dict, emitter, tol: float = 1e-9) -> complex:
        """Sum of amplitudes whose photons sit at ``freqs`` (label -> frequency)."""
        total = 0j
        for t in self._terms:
            if t.emitter != emitter or len(t.photons) != len(freqs):
                continue
            if all(abs(t.photon(k).freq - w) <= tol * max(1.0, abs(w)) for k, w in freqs.items()):
                total += t.amplitude
        return total

    def pruned(self, atol: float = 0.0) -> "MultiPhotonState":
        return MultiPhotonState(t for t in self._terms if abs(t.amplitude) > atol)

    def __repr__(self):
        rows = []
        for t in self._terms:
            ph = ", ".join(f"{m.label}:{m.freq:.6g}" for m in t.photons)
            rows.append(f"  {t.amplitude:.6g} |{ph}; {t.emitter}>")
        return "MultiPhotonState(\n" + "\n".join(rows) + "\n)"


def _checked(p):
    validate_params(p).raise_if_failed()


def _scatter_ground(p, term: Term, label: str):
    """Photon ``label`` hits the emitter in |1>: keeps frequency or is trapped."""
    m = term.photon(label)
    r11, r13 = amp.reflect_from_ground(p, m.freq, check=False)
    rest = tuple(x for x in term.photons if x.label != label)
    yield Term(rest + (m,), 1, term.amplitude * complex(r11))
    yield Term(rest + (m.shifted(p, -1),), 3, term.amplitude * complex(r13))


def _scatter_raman(p, term: Term, label: str):
    """Photon ``label`` drives 3->2 with the emitter in |3>: elastic or released."""
    m = term.photon(label)
    r33, r31 = amp.reflect_from_meta_raman(p, m.freq, check=False)
    rest = tuple(x for x in term.photons if x.label != label)
    yield Term(rest + (m,), 3, term.amplitude * complex(r33))
    yield Term(rest + (m.shifted(p, +1),), 1, term.amplitude * complex(r31))


def _scatter_resonant(p, term: Term, label: str):
    m = term.photon(label)
    R3 = amp.reflect_from_meta_resonant(p, m.freq, check=False)
    yield Term(term.photons, 3, term.amplitude * complex(R3))


def step1_trap(p: SystemParams4LS, omega_A: float) -> MultiPhotonState:
    _checked(p)
    start = Term((_mode("A", omega_A),), 1, 1.0)
    return MultiPhotonState(_scatter_ground(p, start, "A"))


def step2_phase(p: SystemParams4LS, state: MultiPhotonState, omega_B: float) -> MultiPhotonState:
    _checked(p)
    out = []
    for t in state:
        t = Term(t.photons + (_mode("B", omega_B),), t.emitter, t.amplitude)
        if t.emitter == 1:
            out.extend(_scatter_ground(p, t, "B"))
        else:
            # 3->2 is far detuned from qubit frequencies and neglected
            out.extend(_scatter_resonant(p, t, "B"))
    return MultiPhotonState(out)


def step3_retrieve_A(p: SystemParams4LS, state: MultiPhotonState) -> MultiPhotonState:
    """Send the outgoing A photon back in."""
    _checked(p)
    out = []
    for t in state:
        if t.emitter == 1:
            out.extend(_scatter_ground(p, t, "A"))
        elif t.photon("A").shift < 0:
            # A was trapped: its Raman-shifted photon undoes the transfer
            out.extend(_scatter_raman(p, t, "A"))
        else:
            out.extend(_scatter_resonant(p, t, "A"))
    return MultiPhotonState(out)


def step4_retrieve_B(p: SystemParams4LS, state: MultiPhotonState, omega_C: float,
                     c_trivial_phase: bool = False) -> MultiPhotonState:
    """Send the auxiliary C photon; it only interacts if the emitter is in |3>.

    With ``c_trivial_phase`` the |1> branch also picks up the bare mirror
    phase ``-exp(2i omega_C a)``; by default C passes with unit amplitude.
    """
    _checked(p)
    out = []
    passthrough = complex(-amp.mirror_phase(omega_C, p.a)) if c_trivial_phase else 1.0
    for t in state:
        t = Term(t.photons + (_mode("C", omega_C),), t.emitter, t.amplitude)
        if t.emitter == 1:
            out.append(Term(t.photons, 1, t.amplitude * passthrough))
        else:
            out.extend(_scatter_raman(p, t, "C"))
    return MultiPhotonState(out)


def run_protocol(p: SystemParams4LS, omega_A: float, omega_B: float, omega_C: float,
                 c_trivial_phase: bool = False) -> MultiPhotonState:
    s = step1_trap(p, omega_A)
    s = step2_phase(p, s, omega_B)
    s = step3_retrieve_A(p, s)
    return step4_retrieve_B(p, s, omega_C, c_trivial_phase=c_trivial_phase)


@dataclass(frozen=True)
class TruthTable:
    entries: dict

    def __getitem__(self, key):
        return self.entries[key]

    @property
    def conditional_phase(self) -> complex:
        """e11 e00 / (e01 e10): invariant under local diagonal phases; -1 for a CZ."""
        e = self.entries
        keys = list(e)
        (k00, k01, k10, k11) = keys
        return e[k11] * e[k00] / (e[k01] * e[k10])

    def to_json(self) -> dict:
        out = {}
        for (i, j), v in self.entries.items():
            out[f"{i}{j}"] = [float(np.real(v)), float(np.imag(v))]
        return out


def _target_amplitude(p, state: MultiPhotonState, wi: float, wj: float) -> complex:
    """Filter the photon left at omega32, relabel C' as B, read |wi, wj; 1>."""
    tol = 1e-9
    close = lambda x, y: abs(x - y) <= tol * max(1.0, abs(y))  # noqa: E731
    total = 0j
    for t in state:
        if t.emitter != 1:
            continue
        A, B, C = (t.photon(k) for k in "ABC")
        if close(C.freq, p.omega32) and close(B.freq, wj) and close(A.freq, wi):
            total += t.amplitude
        elif close(B.freq, p.omega32) and close(C.freq, wj) and close(A.freq, wi):
            total += t.amplitude
    return total


def truth_table(p: SystemParams4LS, c_trivial_phase: bool = False,
                normalize: bool = False) -> TruthTable:
    """Gate amplitudes for the four center-frequency inputs.

    With ``normalize`` each entry is divided by the same entry of the
    decoupled (gamma = 0) mirror-only protocol.
    """
    _checked(p)
    freqs = (p.omega0, p.omega1)
    entries = {}
    for i in (0, 1):
        for j in (0, 1):
            out = run_protocol(p, freqs[i], freqs[j], p.omega32, c_trivial_phase)
            entries[(i, j)] = _target_amplitude(p, out, freqs[i], freqs[j])
    if normalize:
        ref = truth_table(replace(p, gamma=0.0), c_trivial_phase)
        entries = {k: v / ref[k] for k, v in entries.items()}
    return TruthTable(entries)


def three_ls_photon_atom_gate(p3: SystemParams3LS) -> TruthTable:
    validate_params(p3).raise_if_failed()
    freqs = (p3.omega0, p3.omega1)
    return TruthTable({
        (i, atom): complex(amp.reflect_3ls(p3, atom, freqs[i], check=False))
        for i in (0, 1) for atom in ("g", "s")
    })


def rotation(theta: float) -> np.ndarray:
    """Real rotation on (|g>, |s>)."""
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]])


def _entropy(rho: np.ndarray) -> float:
    lam = np.linalg.eigvalsh(rho)
    lam = lam[lam > 1e-300]
    return float(-np.sum(lam * np.log(lam)))


def three_ls_photon_photon_gate(p3: SystemParams3LS, rotation_angle_convention=rotation,
                                entropy_tol: float | None = None) -> TruthTable:
    """Reflect A, rotate pi/2, reflect B, rotate -pi/2, reflect A again.

    The atom starts in (|g> + |s>)/sqrt(2) and must factor out at the end.
    ``entropy_tol`` defaults to ``max(1e-9, (5 gamma / detuning)^2)`` because
    the omega0 phases are only exact to first order in gamma / detuning.
    """
    validate_params(p3).raise_if_failed()
    if entropy_tol is None:
        entropy_tol = max(1e-9, (5 * p3.gamma / p3.min_detuning) ** 2)
    freqs = (p3.omega0, p3.omega1)
    reflect = {
        i: np.diag([amp.reflect_3ls(p3, "g", freqs[i], check=False),
                    amp.reflect_3ls(p3, "s", freqs[i], check=False)])
        for i in (0, 1)
    }
    plus = np.array([1.0, 1.0]) / math.sqrt(2)
    atom = {}
    for i in (0, 1):
        for j in (0, 1):
            v = reflect[i] @ plus
            v = rotation_angle_convention(math.pi / 2) @ v
            v = reflect[j] @ v
            v = rotation_angle_convention(-math.pi / 2) @ v
            atom[(i, j)] = reflect[i] @ v
    # joint state for a uniform photon input; rows index photon pairs
    joint = np.array([atom[k] for k in sorted(atom)]) / 2.0
    joint = joint / np.linalg.norm(joint)
    rho_atom = joint.T @ joint.conj()
    S = _entropy(rho_atom)
    if S > entropy_tol:
        raise AtomNotDisentangled(f"atom-photon entanglement entropy {S:.3g} > {entropy_tol:.3g}")
    ref = atom[(0, 0)] / np.linalg.norm(atom[(0, 0)])
    return TruthTable({k: complex(np.vdot(ref, v)) for k, v in sorted(atom.items())})
