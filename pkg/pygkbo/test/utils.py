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
"""Utilities for testing."""

import numpy as np

from pygkbo.objectives import Objective
from pygkbo.swarm import FOLLOWER, LEADER, Swarm


def sphere(z):
    """Squared distance to the origin, evaluated row-wise."""
    return np.sum(z ** 2, axis=-1)


def create_sphere_objective(dimension=2, minimizer=1.0, low=-2.0, high=0.0):
    """Create a convex quadratic objective with a known minimizer."""
    return Objective("test_sphere", sphere,
                     minimizer=np.full(dimension, minimizer),
                     init_low=np.full(dimension, low),
                     init_high=np.full(dimension, high))


def create_swarm(positions, leaders=()):
    """Create a swarm with the given leader indices, all others followers."""
    positions = np.asarray(positions, dtype=np.float64)
    if positions.ndim == 1:
        positions = positions[:, np.newaxis]
    labels = np.full(positions.shape[0], FOLLOWER, dtype=np.int8)
    labels[list(leaders)] = LEADER
    return Swarm(positions, labels)


class FixedNormalStream:
    """Random stream returning prescribed normals and delegating other draws."""

    def __init__(self, rng, normals):
        self._rng = rng
        self._normals = np.asarray(normals, dtype=np.float64)

    def normal(self, shape):
        """Get the prescribed normals reshaped to *shape*."""
        return np.broadcast_to(self._normals, shape).copy()

    def __getattr__(self, name):
        """Delegate everything else to the wrapped stream."""
        return getattr(self._rng, name)
