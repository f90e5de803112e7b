import pytest
from gmpy2 import mpfr

from jacobi_pvi import PrecisionContext, WeightParams

PARAM_SETS = [("1", "1", "1"), ("1.5", "2", "0.5"), ("2", "1", "-0.5")]
T_GRID = ["-0.25", "-0.5", "-1", "-2", "-5"]


def rel_err(value, exact, ctx):
    """Relative error of a multiprecision value against an exact or mpfr reference."""
    with ctx.local():
        ref = ctx.real(exact)
        diff = abs(mpfr(value) - ref)
        return diff / abs(ref) if ref != 0 else diff


@pytest.fixture
def ctx50():
    return PrecisionContext(50)


@pytest.fixture
def unit_params():
    """alpha = beta = gamma = 1, t = -1: every quantity is rational."""
    return WeightParams.create(1, 1, 1, -1, digits=50)


def pytest_terminal_summary(terminalreporter):
    module = __import__("sys").modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.summary_lines():
        terminalreporter.write_line(line)
