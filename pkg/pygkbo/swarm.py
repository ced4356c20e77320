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
"""Particle containers and random number streams."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from pygkbo._compat import ArrayLike
from pygkbo.utils import as_vector
from pygkbo.utils.errors import DimensionError

FOLLOWER = 0
LEADER = 1


class Particle(NamedTuple):
    """Single agent: a position in R^d and a leadership label."""

    position: np.ndarray
    label: int

    @property
    def is_leader(self):
        """Check if the particle is a leader."""
        return self.label == LEADER


class Swarm:
    """Ordered collection of N particles.

    Positions are stored as an ``(N, d)`` float64 array and labels as an
    ``(N,)`` int8 array of ``FOLLOWER``/``LEADER`` values. Swarms are treated
    as immutable: the update operations return new swarms.
    """

    def __init__(self, positions: ArrayLike, labels: ArrayLike = None):
        positions = np.array(positions, dtype=np.float64)
        if positions.ndim != 2:
            raise DimensionError("positions must be an (N, d) array, got shape {0}".format(positions.shape))
        if labels is None:
            labels = np.zeros(positions.shape[0], dtype=np.int8)
        labels = np.array(labels, dtype=np.int8)
        if labels.shape != (positions.shape[0],):
            raise DimensionError("labels must have shape ({0},), got {1}".format(positions.shape[0], labels.shape))
        if np.any((labels != FOLLOWER) & (labels != LEADER)):
            raise ValueError("labels must be 0 (follower) or 1 (leader)")
        positions.setflags(write=False)
        labels.setflags(write=False)
        self.positions = positions
        self.labels = labels

    @classmethod
    def from_particles(cls, particles):
        """Create a swarm from an iterable of :class:`Particle`."""
        particles = list(particles)
        positions = np.stack([as_vector(p.position) for p in particles])
        return cls(positions, [p.label for p in particles])

    def __len__(self):
        """Get the number of particles."""
        return self.positions.shape[0]

    def __getitem__(self, index):
        """Get particle *index*."""
        return Particle(self.positions[index], int(self.labels[index]))

    def __iter__(self):
        """Iterate over the particles in index order."""
        for index in range(len(self)):
            yield self[index]

    def __eq__(self, other):
        """Check bitwise equality of positions and labels."""
        if not isinstance(other, Swarm):
            return NotImplemented
        return (np.array_equal(self.positions, other.positions)
                and np.array_equal(self.labels, other.labels))

    def __repr__(self):
        """Get a short representation."""
        return "<Swarm N={0} d={1} leaders={2}>".format(self.n, self.dimension, self.n_leaders)

    @property
    def n(self):
        """Number of particles."""
        return self.positions.shape[0]

    @property
    def dimension(self):
        """Dimension of the search space."""
        return self.positions.shape[1]

    @property
    def leaders(self):
        """Boolean mask of the leaders."""
        return self.labels == LEADER

    @property
    def followers(self):
        """Boolean mask of the followers."""
        return self.labels == FOLLOWER

    @property
    def n_leaders(self):
        """Number of leaders."""
        return int(np.count_nonzero(self.labels))

    @property
    def n_followers(self):
        """Number of followers."""
        return self.n - self.n_leaders

    def masses(self):
        """Get the label masses ``(rho0, rho1)`` as fractions of N."""
        rho1 = self.n_leaders / self.n
        return 1.0 - rho1, rho1

    def means(self):
        """Get the per-label centres of mass, ``None`` for an empty label."""
        out = []
        for mask in (self.followers, self.leaders):
            out.append(self.positions[mask].mean(axis=0) if mask.any() else None)
        return tuple(out)

    def with_positions(self, positions: ArrayLike) -> Swarm:
        """Get a new swarm with the same labels and new positions."""
        return Swarm(positions, self.labels)

    def with_labels(self, labels: ArrayLike) -> Swarm:
        """Get a new swarm with the same positions and new labels."""
        return Swarm(self.positions, labels)


class RngStream:
    """Reproducible stream of random draws for a single run.

    Wraps a :class:`numpy.random.Generator` seeded from a
    :class:`numpy.random.SeedSequence` so that identical seeds give identical
    draw sequences. Draws are always taken as whole arrays in particle index
    order.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._seed_seq = np.random.SeedSequence(self.seed)
        self._gen = np.random.Generator(np.random.PCG64(self._seed_seq))

    def __repr__(self):
        """Get a short representation."""
        return "<RngStream seed={0}>".format(self.seed)

    def normal(self, shape):
        """Draw standard normal samples."""
        return self._gen.standard_normal(shape)

    def uniform(self, shape):
        """Draw uniform samples in ``[0, 1)``."""
        return self._gen.random(shape)

    def integers(self, high, size):
        """Draw integers uniformly from ``[0, high)``."""
        return self._gen.integers(0, high, size=size)

    def choice(self, candidates, size):
        """Choose *size* distinct elements of *candidates* uniformly."""
        return self._gen.choice(candidates, size=size, replace=False)


def uniform_box(n: int, low: ArrayLike, high: ArrayLike, rng: RngStream) -> Swarm:
    """Draw *n* followers uniformly in the box ``[low, high]``."""
    low = as_vector(low, name="low")
    high = as_vector(high, low.shape[0], name="high")
    positions = low + (high - low) * rng.uniform((n, low.shape[0]))
    return Swarm(positions)


def gaussian_box(n: int, low: ArrayLike, high: ArrayLike, rng: RngStream) -> Swarm:
    """Draw *n* followers normally distributed around the box centre.

    The per-axis standard deviation is a quarter of the box width and the
    samples are not truncated to the box.
    """
    low = as_vector(low, name="low")
    high = as_vector(high, low.shape[0], name="high")
    centre = 0.5 * (low + high)
    scale = 0.25 * (high - low)
    positions = centre + scale * rng.normal((n, low.shape[0]))
    return Swarm(positions)


INITIALIZERS = {
    "uniform_box": uniform_box,
    "gaussian_box": gaussian_box,
}
