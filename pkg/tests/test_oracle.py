from dataclasses import replace

import numpy as np
import pytest

from wgqed import amplitudes as amp
from wgqed.errors import SingularSystem
from wgqed.oracle import (
    build_problem,
    oracle_reflect_3ls,
    oracle_reflect_from_ground,
    oracle_reflect_from_meta,
    oracle_reflect_raman,
    random_params,
    random_params_3ls,
)

N = 1000
TOL = 1e-10


@pytest.fixture(scope="module")
def samples():
    rng = np.random.default_rng(7)
    out = []
    for i in range(N):
        p = random_params(rng, lossy=i % 2 == 0)
        center = rng.choice([p.omega12, p.omega32, p.omega0])
        out.append((p, center + rng.normal(0, 3 * p.gamma), random_params_3ls(rng, lossy=i % 2 == 0)))
    return out


def test_ground_agreement(samples):
    worst = max(np.max(np.abs(np.array(amp.reflect_from_ground(p, w)) - oracle_reflect_from_ground(p, w)))
                for p, w, _ in samples)
    assert worst <= TOL


def test_meta_resonant_agreement(samples):
    worst = max(abs(amp.reflect_from_meta_resonant(p, w) - oracle_reflect_from_meta(p, w)) for p, w, _ in samples)
    assert worst <= TOL


def test_raman_agreement(samples):
    worst = max(np.max(np.abs(np.array(amp.reflect_from_meta_raman(p, w)) - oracle_reflect_raman(p, w)))
                for p, w, _ in samples)
    assert worst <= TOL


def test_three_level_agreement(samples):
    worst = 0.0
    for _, _, p3 in samples:
        w = p3.omega_eg + 0.7 * p3.gamma
        worst = max(worst, abs(amp.reflect_3ls(p3, "g", w) - oracle_reflect_3ls(p3, w)))
    assert worst <= TOL


def test_samples_include_loss(samples):
    assert sum(p.gamma_prime > 0 for p, _, _ in samples) >= N // 2


def test_oracle_flux_conservation(samples):
    for p, w, _ in samples[:200]:
        q = replace(p, gamma_prime=0.0)
        a1, a3 = oracle_reflect_from_ground(q, w)
        assert abs(abs(a1) ** 2 + abs(a3) ** 2 - 1) < TOL
        b3, b1 = oracle_reflect_raman(q, w)
        assert abs(abs(b3) ** 2 + abs(b1) ** 2 - 1) < TOL


def test_decoupled_oracle(example_params):
    p = replace(example_params, gamma=0.0)
    w = 1003.3
    a1, a3 = oracle_reflect_from_ground(p, w)
    assert a1 == pytest.approx(-np.exp(2j * w * p.a), abs=1e-12) and abs(a3) < 1e-15


def test_table_values_from_oracle(example_params, ref3):
    p = example_params
    r33, r31 = oracle_reflect_raman(p, p.omega32)
    assert abs(r33) < 1e-10 and abs(r31 + 1) < 1e-10
    assert abs(oracle_reflect_3ls(ref3, ref3.omega_eg) + 1) < 1e-10


def test_solution_residual_reported(example_params):
    prob = build_problem((1000.0, 400.0), (1.0, 0.0), 3.0 - 0.1j, np.sqrt(0.5), 1.0)
    sol = prob.solve()
    assert sol.residual < 1e-10 and sol.condition_number < 1e12
    assert prob.matrix.shape == (7, 7)


def test_singular_system():
    # decoupled emitter on exact resonance leaves e undetermined
    prob = build_problem((10.0,), (1.0,), 0.0, 0.0, 1.0)
    with pytest.raises(SingularSystem):
        prob.solve()
