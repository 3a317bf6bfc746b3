import math

import numpy as np
import pytest
from scipy import integrate

from wgqed import amplitudes as amp
from wgqed.errors import GridNotConverged, PulseOverlap
from wgqed.params import reference_params_3ls, reference_params_4ls
from wgqed.pulses import (
    CSV_HEADER,
    PulseSpec,
    QuadratureGrid,
    _terms_4ls,
    fidelity_3ls,
    fidelity_4ls,
    fidelity_sweep,
    leakage_sweep_4ls,
)


def test_pulse_normalized():
    pulse = PulseSpec.from_delta_t(1000.0, 10.0)
    val, _ = integrate.quad(pulse.g2, 990, 1010, points=[1000.0])
    assert val == pytest.approx(1, abs=1e-12)
    assert pulse.delta_t == pytest.approx(10.0)
    assert pulse.g(1000.3) ** 2 == pytest.approx(pulse.g2(1000.3))


def test_grid_validation():
    with pytest.raises(ValueError):
        QuadratureGrid(points_per_dim=50)
    with pytest.raises(ValueError):
        QuadratureGrid(scheme="simpson")
    assert QuadratureGrid().refined().points_per_dim == 601


def quad_3ls(p3, delta_t):
    """Adaptive-quadrature oracle for the photon-atom gate."""
    pulse = PulseSpec.from_delta_t(p3.omega1, delta_t)
    lo, hi = p3.omega1 - 8 * pulse.sigma, p3.omega1 + 8 * pulse.sigma

    def integral(f):
        re, _ = integrate.quad(lambda w: (pulse.g2(w) * f(w)).real, lo, hi, epsabs=1e-13, limit=200)
        im, _ = integrate.quad(lambda w: (pulse.g2(w) * f(w)).imag, lo, hi, epsabs=1e-13, limit=200)
        return re + 1j * im

    rg = lambda w: amp.reflect_3ls(p3, "g", w, check=False)
    rs = lambda w: amp.reflect_3ls(p3, "s", w, check=False)
    fid = abs(0.5 * integral(lambda w: rg(w) - rs(w))) ** 2
    norm = integral(lambda w: (abs(rg(w)) ** 2 + 1) / 2).real
    return fid, 1 - norm ** 2


@pytest.mark.parametrize("purcell,delta_t", [(20, 10), (5, 3), (100, 1), (math.inf, 30)])
def test_3ls_against_adaptive_quadrature(purcell, delta_t):
    p3 = reference_params_3ls(purcell)
    m = fidelity_3ls(p3, delta_t)
    f, l = quad_3ls(p3, delta_t)
    assert m.fidelity == pytest.approx(f, abs=1e-8)
    assert m.leakage == pytest.approx(l, abs=1e-8)


def short_pulse_limit(P):
    # every branch evaluated at the line centers
    return ((4 * P / (4 * P + 1)) ** 2 * (2 * P - 1) / (2 * P + 1)) ** 2


@pytest.mark.parametrize("purcell", [10, 20, 100])
def test_4ls_long_pulse_limit(purcell):
    p = reference_params_4ls(purcell)
    m = fidelity_4ls(p, 2000.0)
    assert m.fidelity == pytest.approx(short_pulse_limit(purcell), abs=2e-3)


def test_4ls_long_pulse_lossless_is_ideal():
    m = fidelity_4ls(reference_params_4ls(math.inf), 2000.0)
    assert m.fidelity == pytest.approx(1, abs=1e-3)
    assert abs(m.leakage) < 1e-9


def test_4ls_factorized_c_weight():
    p = reference_params_4ls(20)
    sigma = 1 / 20
    t = _terms_4ls(p, sigma, QuadratureGrid(), False)
    assert t["s1"] == pytest.approx(t["s1_2d"] * t["c_weight"], abs=1e-8)
    assert t["c_weight"] == pytest.approx(1, abs=1e-8)


def test_4ls_independent_grid():
    p = reference_params_4ls(40)
    a = fidelity_4ls(p, 10.0)
    b = fidelity_4ls(p, 10.0, QuadratureGrid(half_width=8, points_per_dim=801, scheme="trapezoid"))
    assert a.fidelity == pytest.approx(b.fidelity, abs=1e-6)
    assert a.leakage == pytest.approx(b.leakage, abs=1e-6)


@pytest.mark.parametrize("delta_t", [1.0, 10.0, 50.0])
def test_grid_converged(delta_t):
    m = fidelity_4ls(reference_params_4ls(20), delta_t)
    assert m.grid_residual < 1e-5


def test_bounds_and_lossless_leakage():
    for purcell in (5, 20, math.inf):
        for dt in (1, 10, 50):
            m = fidelity_4ls(reference_params_4ls(purcell), dt)
            assert 0 <= m.fidelity <= 1 + 1e-12
            assert -1e-9 <= m.leakage <= 1
            if math.isinf(purcell):
                assert abs(m.leakage) < 1e-9
    assert abs(fidelity_3ls(reference_params_3ls(math.inf), 10).leakage) < 1e-9


def test_leakage_linear_property():
    m = fidelity_3ls(reference_params_3ls(20), 10)
    assert m.leakage_linear == pytest.approx(1 - m.norm)
    assert m.leakage == pytest.approx(1 - m.norm ** 2)


def test_pulse_overlap_raised():
    with pytest.raises(PulseOverlap):
        fidelity_4ls(reference_params_4ls(20), 0.01)


def test_grid_not_converged():
    with pytest.raises(GridNotConverged):
        fidelity_4ls(reference_params_4ls(20), 50.0, QuadratureGrid(half_width=1.5, points_per_dim=51,
                                                                     scheme="trapezoid"))


def test_monotone_in_purcell():
    res = leakage_sweep_4ls(reference_params_4ls(), 10.0, [5, 10, 20, 40, 100])
    assert res.monotone_leakage
    assert np.all(np.diff(res.column("fidelity")) > 0)


def test_monotone_in_delta_t_lossless():
    res = fidelity_sweep(reference_params_4ls(), [1, 3, 10, 30, 50], [math.inf])
    assert np.all(np.diff(res.column("fidelity")) > 0)


def test_sweep_order_and_csv():
    res = fidelity_sweep(reference_params_4ls(), [5, 10], [20, math.inf], workers=4)
    assert [(r["delta_t"], r["purcell"]) for r in res.rows] == [(5, 20), (5, math.inf), (10, 20), (10, math.inf)]
    lines = res.to_csv().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[2].split(",")[1] == "inf"
    assert res.to_csv() == fidelity_sweep(reference_params_4ls(), [5, 10], [20, math.inf], workers=1).to_csv()


def test_empty_sweep():
    res = fidelity_sweep(reference_params_4ls(), [], [20])
    assert res.rows == [] and res.to_csv().strip() == ",".join(CSV_HEADER)


def test_3ls_sweep_scheme():
    assert fidelity_sweep(reference_params_3ls(), [10], [20]).scheme == "3ls"
