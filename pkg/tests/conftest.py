from __future__ import annotations

import numpy as np
import pytest

from frwspin.charts import Chart
from frwspin.scale_factor import ScaleFactor
from frwspin.verification import random_sl2c, sample_points


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(params=[ScaleFactor.constant(2.0), ScaleFactor.cosh(1.0),
                        ScaleFactor.polynomial(2.0, 0.3, -0.2, 0.05)], ids=str)
def sf(request):
    return request.param


@pytest.fixture
def north(rng):
    return sample_points(Chart.NORTH, 20, rng)


@pytest.fixture
def south(rng):
    return sample_points(Chart.SOUTH, 20, rng)


@pytest.fixture
def spherical(rng):
    return sample_points(Chart.SPHERICAL, 20, rng)


@pytest.fixture
def sl2c(rng):
    return random_sl2c(50, rng)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
