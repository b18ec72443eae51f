import numpy as np
import pytest

from skewrand import _kernels

BACKENDS = {
    "numba": {
        "walk_class_counts": _kernels.walk_class_counts_jit,
        "pairing_is_simple": _kernels.pairing_is_simple_jit,
        "sw_round": _kernels.sw_round_jit,
        "ks_statistic": _kernels.ks_statistic_jit,
    },
    "numpy": {
        "walk_class_counts": _kernels.walk_class_counts_np,
        "pairing_is_simple": _kernels.pairing_is_simple_np,
        "sw_round": _kernels.sw_round_np,
        "ks_statistic": _kernels.ks_statistic_np,
    },
}


@pytest.fixture(params=sorted(BACKENDS))
def kernels(request):
    return BACKENDS[request.param]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES = []


def record_criterion(name, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
