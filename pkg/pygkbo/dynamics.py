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
"""Position updates of the particle methods.

One call advances a swarm by one time step of size ``epsilon``:

* ``gkbo``: leaders relax towards the consensus point, then every follower
  relaxes towards a randomly selected (already updated) leader and diffuses.
* ``kbo``: every particle relaxes towards the consensus point and diffuses.
* ``ga`` / ``ga_modified``: children (followers) jump onto a random parent
  (leader) and mutate, parents stay put.

Drifts are scaled by ``nu * epsilon`` and noise by ``sigma * sqrt(epsilon)``.
Labels and the number of particles are never changed here.
"""

from __future__ import annotations

import dataclasses
import math
import warnings
from typing import Optional

import numpy as np

from pygkbo.consensus import check_selector, weighted_mean
from pygkbo.swarm import RngStream, Swarm
from pygkbo.utils.errors import ConfigurationError, DimensionError, ParameterWarning

METHODS = ("gkbo", "kbo", "ga", "ga_modified")
DIFFUSIONS = ("isotropic", "anisotropic")


@dataclasses.dataclass(frozen=True)
class DynamicsConfig:
    """Parameters of the particle update.

    ``interaction_prob`` is the probability that an agent takes part in the
    update during a step; 1 means every agent interacts every step.
    """

    method: str = "gkbo"
    nu_F: float = 1.0
    nu_L: float = 10.0
    sigma_F: float = 4.0
    alpha: float = 5e6
    epsilon: float = 0.1
    diffusion: str = "anisotropic"
    consensus: str = "all"
    interaction_prob: float = 1.0

    def validate(self):
        """Check the parameters, raising :class:`ConfigurationError` on invalid values."""
        if self.method not in METHODS:
            raise ConfigurationError("unknown method '{0}', expected one of {1}".format(self.method, METHODS))
        if self.diffusion not in DIFFUSIONS:
            raise ConfigurationError("unknown diffusion '{0}', expected one of {1}".format(
                self.diffusion, DIFFUSIONS))
        check_selector(self.consensus)
        if not self.nu_F > 0 or not self.nu_L > 0:
            raise ConfigurationError("nu_F and nu_L must be positive")
        if not self.sigma_F >= 0:
            raise ConfigurationError("sigma_F must be nonnegative, got {0}".format(self.sigma_F))
        if not self.alpha > 0:
            raise ConfigurationError("alpha must be positive, got {0}".format(self.alpha))
        if not 0 < self.epsilon <= 1:
            raise ConfigurationError("epsilon must be in (0, 1], got {0}".format(self.epsilon))
        if not 0 < self.interaction_prob <= 1:
            raise ConfigurationError("interaction_prob must be in (0, 1], got {0}".format(self.interaction_prob))
        if self.method == "gkbo" and self.nu_L * self.epsilon > 1:
            warnings.warn("nu_L * epsilon = {0} > 1: leaders overshoot the consensus point".format(
                self.nu_L * self.epsilon), ParameterWarning, stacklevel=2)
        if self.method == "kbo" and self.nu_F * self.epsilon > 1:
            warnings.warn("nu_F * epsilon = {0} > 1: particles overshoot the consensus point".format(
                self.nu_F * self.epsilon), ParameterWarning, stacklevel=2)
        return self


def diffusion_action(kind: str, xhat, x, xi) -> np.ndarray:
    """Apply the diffusion matrix ``D(x)`` built around *xhat* to the noise *xi*.

    *x* and *xi* can be single vectors or ``(N, d)`` arrays.

    ``isotropic`` scales the whole noise vector by ``|xhat - x|_2``,
    ``anisotropic`` scales component j by ``(xhat - x)_j``.
    """
    xhat = np.asarray(xhat, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    xi = np.asarray(xi, dtype=np.float64)
    if x.shape != xi.shape or x.shape[-1:] != xhat.shape[-1:]:
        raise DimensionError("mismatching shapes: xhat {0}, x {1}, xi {2}".format(xhat.shape, x.shape, xi.shape))
    diff = xhat - x
    if kind == "anisotropic":
        return diff * xi
    if kind == "isotropic":
        return np.linalg.norm(diff, axis=-1, keepdims=True) * xi
    raise ConfigurationError("unknown diffusion '{0}', expected one of {1}".format(kind, DIFFUSIONS))


def _prepare(swarm: Swarm, objective, cfg: DynamicsConfig, rng: RngStream, xhat):
    if swarm.dimension != objective.dimension:
        raise DimensionError("swarm dimension {0} does not match objective dimension {1}".format(
            swarm.dimension, objective.dimension))
    if xhat is None:
        xhat = weighted_mean(swarm, objective, cfg.alpha, cfg.consensus)
    if cfg.interaction_prob < 1:
        active = rng.uniform(swarm.n) < cfg.interaction_prob
    else:
        active = np.ones(swarm.n, dtype=bool)
    return np.asarray(xhat, dtype=np.float64), active


def gkbo_step(swarm: Swarm, objective, cfg: DynamicsConfig, rng: RngStream,
              xhat: Optional[np.ndarray] = None) -> Swarm:
    """Advance a labelled swarm by one GKBO step.

    The step has two phases around the consensus point *xhat* of the step
    start. First every leader moves deterministically,
    ``y' = y + nu_L eps (xhat - y)``. Then every follower picks a leader k
    uniformly and moves with
    ``x' = x + nu_F eps (y_k' - x) + sigma_F sqrt(eps) D(xhat, x) xi``,
    where ``y_k'`` is the already updated leader position.

    Without leaders the followers only diffuse.
    """
    xhat, active = _prepare(swarm, objective, cfg, rng, xhat)
    eps = cfg.epsilon
    positions = swarm.positions
    new = positions.copy()

    leaders = swarm.leaders & active
    new[leaders] = positions[leaders] + cfg.nu_L * eps * (xhat - positions[leaders])
    leader_positions = new[swarm.leaders]

    followers = np.flatnonzero(swarm.followers & active)
    x = positions[followers]
    if leader_positions.shape[0]:
        picks = rng.integers(leader_positions.shape[0], size=followers.shape[0])
        drift = cfg.nu_F * eps * (leader_positions[picks] - x)
    else:
        drift = 0.0
    xi = rng.normal(x.shape)
    new[followers] = x + drift + cfg.sigma_F * math.sqrt(eps) * diffusion_action(cfg.diffusion, xhat, x, xi)
    return swarm.with_positions(new)


def kbo_step(swarm: Swarm, objective, cfg: DynamicsConfig, rng: RngStream,
             xhat: Optional[np.ndarray] = None) -> Swarm:
    """Advance a swarm by one KBO step, ignoring labels.

    Every particle moves with
    ``x' = x + nu_F eps (xhat - x) + sigma_F sqrt(eps) D(xhat, x) xi``.
    """
    xhat, active = _prepare(swarm, objective, cfg, rng, xhat)
    eps = cfg.epsilon
    idx = np.flatnonzero(active)
    x = swarm.positions[idx]
    xi = rng.normal(x.shape)
    new = swarm.positions.copy()
    new[idx] = (x + cfg.nu_F * eps * (xhat - x)
                + cfg.sigma_F * math.sqrt(eps) * diffusion_action(cfg.diffusion, xhat, x, xi))
    return swarm.with_positions(new)


def ga_step(swarm: Swarm, objective, cfg: DynamicsConfig, rng: RngStream,
            modified: bool = False, xhat: Optional[np.ndarray] = None) -> Swarm:
    """Advance a swarm by one genetic-algorithm step.

    Leaders are the parents and never move. Each child (follower) jumps onto
    a uniformly chosen parent with probability ``min(1, nu_F eps)`` and is then
    mutated, by ``sigma_F sqrt(eps) xi`` for the standard variant or by
    ``sigma_F sqrt(eps) D(xhat, x) xi`` evaluated at the post-jump position
    for the *modified* one. Without parents children only mutate.
    """
    xhat, active = _prepare(swarm, objective, cfg, rng, xhat)
    eps = cfg.epsilon
    parents = swarm.positions[swarm.leaders]
    children = np.flatnonzero(swarm.followers & active)
    x = swarm.positions[children]
    if parents.shape[0]:
        jump = rng.uniform(children.shape[0]) < min(1.0, cfg.nu_F * eps)
        picks = rng.integers(parents.shape[0], size=children.shape[0])
        x = np.where(jump[:, np.newaxis], parents[picks], x)
    xi = rng.normal(x.shape)
    if modified:
        noise = diffusion_action(cfg.diffusion, xhat, x, xi)
    else:
        noise = xi
    new = swarm.positions.copy()
    new[children] = x + cfg.sigma_F * math.sqrt(eps) * noise
    return swarm.with_positions(new)


def step(swarm: Swarm, objective, cfg: DynamicsConfig, rng: RngStream,
         xhat: Optional[np.ndarray] = None) -> Swarm:
    """Advance *swarm* by one step of the method selected in *cfg*."""
    if cfg.method == "gkbo":
        return gkbo_step(swarm, objective, cfg, rng, xhat=xhat)
    if cfg.method == "kbo":
        return kbo_step(swarm, objective, cfg, rng, xhat=xhat)
    if cfg.method in ("ga", "ga_modified"):
        return ga_step(swarm, objective, cfg, rng, modified=cfg.method == "ga_modified", xhat=xhat)
    raise ConfigurationError("unknown method '{0}', expected one of {1}".format(cfg.method, METHODS))
