#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# Copyright (C) 2024 Pygkbo developers
#
# This program is free software: you can redistribute it and/or modify it under
# the terms of the GNU Lesser General Public License as published by the Free
# Software Foundation, either version 3 of the License, or (at your option) any
# later version.
#
# This program is distributed in the hope that it will be useful, but WITHOUT
# ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS
# FOR A PARTICULAR PURPOSE.  See the GNU Lesser General Public License for more
# details.
#
# You should have received a copy of the GNU Lesser General Public License along
# with this program.  If not, see <http://www.gnu.org/licenses/>.
"""Shared test configuration and fixtures."""

import pytest

from pygkbo.objectives import register_objective, unregister_objective
from pygkbo.swarm import RngStream
from pygkbo.test.utils import create_sphere_objective


def pytest_addoption(parser):
    """Add the option enabling the long Monte Carlo tests."""
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run slow Monte Carlo reproduction tests")


def pytest_configure(config):
    """Register the 'slow' marker."""
    config.addinivalue_line("markers", "slow: long Monte Carlo test, only run with --runslow")


def pytest_collection_modifyitems(config, items):
    """Skip slow tests unless --runslow is given."""
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def rng():
    """Create a seeded random stream."""
    return RngStream(12345)


@pytest.fixture
def sphere_objective():
    """Create a 2D convex quadratic objective with minimizer (1, 1)."""
    return create_sphere_objective(2)


@pytest.fixture
def registered_sphere():
    """Register the quadratic test objective under 'test_sphere' for the duration of a test."""
    register_objective("test_sphere", lambda d: create_sphere_objective(d))
    yield "test_sphere"
    unregister_objective("test_sphere")
