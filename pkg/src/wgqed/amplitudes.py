"""Closed-form single-photon reflection amplitudes.

Every emitter sits a distance ``a`` in front of a perfect mirror, so each
scattering event is pure reflection. The ``*_amplitudes`` kernels take raw
frequencies and broadcast over numpy arrays; the ``reflect_*`` wrappers take
a validated parameter set.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .params import TWO_PI, SystemParams3LS, SystemParams4LS, validate_params


def mirror_phase(omega, a):
    """exp(2i omega a), with the phase reduced mod 2 pi first."""
    return np.exp(1j * np.mod(2.0 * np.asarray(omega, dtype=float) * a, TWO_PI))


def lambda_amplitudes(omega, omega_res, omega_shift, gamma, gamma_prime, a):
    """Reflection off a Lambda transition pair sharing one excited level.

    The photon at ``omega`` drives the resonance at ``omega_res``; the emitter
    may relax through the other leg, emitting at ``omega + omega_shift``.
    Returns ``(elastic, raman)``. For the ground state ``omega_res = omega12``
    and ``omega_shift = -omega13``; for the metastable state ``omega_res =
    omega32`` and ``omega_shift = +omega13``.
    """
    omega = np.asarray(omega, dtype=float)
    e = mirror_phase(omega, a)
    e_shift = mirror_phase(omega + omega_shift, a)
    if gamma == 0:
        # decoupled emitter: bare mirror, also on exact resonance where 0/0
        return -e, np.zeros_like(e)
    half_g = 0.5j * gamma
    den = omega_res - 0.5j * gamma_prime - omega + half_g * (e_shift + e - 2.0)
    elastic = e * (-omega_res + 0.5j * gamma_prime + omega - half_g * (e_shift - np.conj(e))) / den
    raman = half_g * (e - 1.0) * (e_shift - 1.0) / den
    return elastic, raman


def two_level_amplitude(omega, omega_res, gamma, gamma_prime, a):
    """Reflection off a single two-level transition in front of the mirror."""
    omega = np.asarray(omega, dtype=float)
    e = mirror_phase(omega, a)
    if gamma == 0:
        return -e
    d = omega_res - 0.5j * gamma_prime - omega
    return (-d * e + 0.5j * gamma * (1.0 - e)) / (d - 0.5j * gamma * (1.0 - e))


class AtomState(str, Enum):
    g = "g"
    s = "s"


@dataclass(frozen=True)
class ShiftedFrequencies:
    omega: float
    omega_tilde: float
    omega_bar: float

    @classmethod
    def of(cls, p: SystemParams4LS, omega: float) -> "ShiftedFrequencies":
        return cls(omega, omega - p.omega13, omega + p.omega13)


@dataclass(frozen=True)
class ReflectionSet:
    r11: complex
    r13: complex
    r33: complex
    r31: complex
    R3: complex

    def as_dict(self) -> dict:
        return {k: getattr(self, k) for k in ("r11", "r13", "r33", "r31", "R3")}


def _ensure_valid(p):
    validate_params(p).raise_if_failed()


def reflect_from_ground(p: SystemParams4LS, omega, *, check=True):
    """(r11, r13): emitter starts in |1>; r13 emits at omega - omega13 into |3>."""
    if check:
        _ensure_valid(p)
    return lambda_amplitudes(omega, p.omega12, -p.omega13, p.gamma, p.gamma_prime, p.a)


def reflect_from_meta_resonant(p: SystemParams4LS, omega, *, check=True):
    """R3: emitter in |3>, photon on the 3->4 transition (3->2 neglected)."""
    if check:
        _ensure_valid(p)
    return two_level_amplitude(omega, p.omega34, p.gamma, p.gamma_prime, p.a)


def reflect_from_meta_raman(p: SystemParams4LS, omega, *, check=True):
    """(r33, r31): emitter in |3>, photon on 3->2; r31 emits at omega + omega13 into |1>."""
    if check:
        _ensure_valid(p)
    return lambda_amplitudes(omega, p.omega32, p.omega13, p.gamma, p.gamma_prime, p.a)


def reflect_3ls(p: SystemParams3LS, atom, omega, *, check=True):
    if check:
        _ensure_valid(p)
    atom = AtomState(atom)
    if atom is AtomState.s:
        return -mirror_phase(omega, p.a)
    return two_level_amplitude(omega, p.omega_eg, p.gamma, p.gamma_prime, p.a)


def reflection_set(p: SystemParams4LS, omega: float, *, check=True) -> ReflectionSet:
    if check:
        _ensure_valid(p)
    r11, r13 = reflect_from_ground(p, omega, check=False)
    r33, r31 = reflect_from_meta_raman(p, omega, check=False)
    R3 = reflect_from_meta_resonant(p, omega, check=False)
    return ReflectionSet(*(complex(v) for v in (r11, r13, r33, r31, R3)))
