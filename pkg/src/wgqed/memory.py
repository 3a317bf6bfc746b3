"""Five-level M-type photon memory.

Each qubit frequency drives its own Lambda branch g -> e_i -> s_i, so a
branch is a relabeled 4LS trapping step (omega12 -> omega_i, omega32 ->
omega_es). Storage keeps the trapping phase r13 = -1 per branch; it is a
global phase and is reported, not removed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .amplitudes import reflect_from_ground, reflect_from_meta_raman
from .params import MemoryParams, validate_params


@dataclass(frozen=True)
class MatterQubit:
    alpha: complex  # on |s0>
    beta: complex  # on |s1>

    @property
    def norm2(self) -> float:
        return abs(self.alpha) ** 2 + abs(self.beta) ** 2


def _branch_freqs(mp: MemoryParams):
    return (mp.omega_e0g, mp.omega_e1g)


def store(mp: MemoryParams, alpha: complex, beta: complex):
    """Map alpha|w0> + beta|w1> onto alpha'|s0> + beta'|s1>; returns (qubit, C frequency)."""
    validate_params(mp).raise_if_failed()
    out = []
    for i, (c, w) in enumerate(zip((alpha, beta), _branch_freqs(mp))):
        _, r13 = reflect_from_ground(mp.branch(i), w, check=False)
        out.append(complex(c) * complex(r13))
    return MatterQubit(*out), mp.omega_es


def retrieve(mp: MemoryParams, q: MatterQubit):
    """Send the auxiliary photon at omega_es back in; returns (alpha, beta) of the photon qubit."""
    validate_params(mp).raise_if_failed()
    out = []
    for i, c in enumerate((q.alpha, q.beta)):
        _, r31 = reflect_from_meta_raman(mp.branch(i), mp.omega_es, check=False)
        out.append(complex(c) * complex(r31))
    return tuple(out)


def round_trip_fidelity(mp: MemoryParams, alpha: complex, beta: complex) -> float:
    """|<in|out>|^2 after store then retrieve, for a normalized input."""
    q, _ = store(mp, alpha, beta)
    a2, b2 = retrieve(mp, q)
    return float(abs(np.conj(alpha) * a2 + np.conj(beta) * b2) ** 2)
