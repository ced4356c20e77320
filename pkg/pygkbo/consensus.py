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
"""Gibbs-weighted consensus point of a swarm."""

from __future__ import annotations

from typing import Optional

import numpy as np

from pygkbo.swarm import Swarm
from pygkbo.utils.errors import ConfigurationError, DimensionError, EstimatorUndefinedError

CONSENSUS_SELECTORS = ("all", "followers", "leaders")


def check_selector(selector: str) -> str:
    """Validate a consensus selector name."""
    if selector not in CONSENSUS_SELECTORS:
        raise ConfigurationError("unknown consensus selector '{0}', expected one of {1}".format(
            selector, CONSENSUS_SELECTORS))
    return selector


def selector_mask(swarm: Swarm, selector: str) -> np.ndarray:
    """Get the boolean mask of the particles used by *selector*."""
    check_selector(selector)
    if selector == "followers":
        return swarm.followers
    if selector == "leaders":
        return swarm.leaders
    return np.ones(swarm.n, dtype=bool)


def gibbs_weights(energies: np.ndarray, alpha: float) -> np.ndarray:
    """Get the unnormalized weights ``exp(-alpha (E - min E))``.

    Subtracting the minimum leaves the normalized weights unchanged and keeps
    the largest weight at exactly 1, so no overflow happens for any alpha.
    Weights of clearly worse particles underflow to 0.
    """
    energies = np.asarray(energies, dtype=np.float64)
    return np.exp(-alpha * (energies - energies.min()))


def weighted_mean(swarm: Swarm, objective, alpha: float, selector: str = "all",
                  energies: Optional[np.ndarray] = None) -> np.ndarray:
    """Compute the consensus point over the whole swarm or a label subset.

    Args:
        swarm: Particles to average.
        objective: Cost function, only evaluated when *energies* is None.
        alpha: Nonnegative inverse temperature. ``alpha = 0`` gives the plain
            mean of the selected positions.
        selector: One of ``"all"``, ``"followers"`` or ``"leaders"``. The
            weights are renormalized over the selected subset.
        energies: Precomputed energies of all N particles.

    Returns:
        The consensus point as a ``(d,)`` array, a convex combination of the
        selected positions.

    Raises:
        EstimatorUndefinedError: if the selected subset is empty.

    """
    if alpha < 0:
        raise ConfigurationError("alpha must be nonnegative, got {0}".format(alpha))
    mask = selector_mask(swarm, selector)
    if not mask.any():
        raise EstimatorUndefinedError("consensus point over '{0}' is undefined: no such particles".format(selector))
    if energies is None:
        energies = objective.evaluate(swarm.positions)
    energies = np.asarray(energies, dtype=np.float64)
    if energies.shape != (swarm.n,):
        raise DimensionError("expected {0} energies, got shape {1}".format(swarm.n, energies.shape))
    positions = swarm.positions[mask]
    weights = gibbs_weights(energies[mask], alpha)
    # elementwise product and numpy's sum keep the reduction order fixed
    return (weights[:, np.newaxis] * positions).sum(axis=0) / weights.sum()
