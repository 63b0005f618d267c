# Copyright 2019 The painleve developers
#
# This file is part of painleve.
#
# painleve is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version. See <http://www.gnu.org/licenses/>.

import pytest

from painleve import model


def pytest_addoption(parser):
    parser.addoption("-S", "--slow", action="store_true", default=False,
                     help="Run long reproductions of the reference runs")


def pytest_runtest_setup(item):
    if 'slow' in item.keywords and not item.config.getoption("--slow"):
        pytest.skip("pass --slow option to run")


def pytest_configure(config):
    config.addinivalue_line("markers",
                            "slow: long reproduction of the reference runs")


@pytest.fixture(scope="module")
def params():
    return model.RobotParams.standard()
