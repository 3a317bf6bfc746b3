import math

import numpy as np
import pytest

from wgqed.params import SystemParams4LS, reference_params_3ls, reference_params_4ls, solve_gate_conditions, params_from_solution


@pytest.fixture
def example_params():
    """Omega12 = 1000, a = 1, with omega32 and omega0 snapped onto the conditions."""
    sol = solve_gate_conditions(1000.0, 600.0, 800.0, 1.0)
    return params_from_solution(1000.0, sol)


@pytest.fixture
def ref4():
    return reference_params_4ls()


@pytest.fixture
def ref3():
    return reference_params_3ls()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)



def pytest_terminal_summary(terminalreporter):
    import sys

    mod = next((m for name, m in sys.modules.items() if name.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
