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
"""Leader emergence strategies.

Three strategies change the labels of a swarm after each position update:

* :class:`RandomTransition`: followers become leaders with probability
  ``eps * pi_fl`` and leaders become followers with ``eps * pi_lf``.
* :class:`WeightedTransition`: the ``floor(rho1_target * N)`` agents with the
  smallest weight (closest in energy to the current best agent) are leaders.
* :class:`MixedTransition`: a fraction ``p_bar`` of the leader slots is filled
  by the weighted rule, the rest uniformly at random. Random leaders keep
  their slot until they retire with probability ``eps * pi_lf``.

Positions are never modified by a transition.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from typing import Optional

import numpy as np

from pygkbo.swarm import FOLLOWER, LEADER, RngStream, Swarm
from pygkbo.utils.errors import ConfigurationError, UndefinedEquilibriumError

STRATEGIES = ("random", "weighted", "mixed")


def stationary_masses(pi_fl: float, pi_lf: float):
    """Get the equilibrium masses ``(rho0, rho1)`` for constant transition rates.

    Raises:
        UndefinedEquilibriumError: if both rates are zero.

    """
    if pi_fl < 0 or pi_lf < 0:
        raise ConfigurationError("transition rates must be nonnegative")
    total = pi_fl + pi_lf
    if total == 0:
        raise UndefinedEquilibriumError("no equilibrium is defined when both transition rates are zero")
    return pi_lf / total, pi_fl / total


def agent_weights(energies: np.ndarray) -> np.ndarray:
    """Get the weight of every agent of a swarm from its energies.

    The weight of agent i is the fraction of agents strictly closer in energy
    to the current best agent than agent i is. The best agent has weight 0
    and weights lie in ``[0, 1 - 1/N]``.
    """
    energies = np.asarray(energies, dtype=np.float64)
    distance = np.abs(energies.min() - energies)
    return np.searchsorted(np.sort(distance), distance, side="left") / energies.shape[0]


def agent_weight(swarm: Swarm, objective, i: int, energies: Optional[np.ndarray] = None) -> float:
    """Get the weight of agent *i*, see :func:`agent_weights`."""
    if energies is None:
        energies = objective.evaluate(swarm.positions)
    return float(agent_weights(energies)[i])


def weighted_ranking(energies: np.ndarray) -> np.ndarray:
    """Get agent indices ordered by weight, then energy, then index."""
    energies = np.asarray(energies, dtype=np.float64)
    weights = agent_weights(energies)
    return np.lexsort((np.arange(energies.shape[0]), energies, weights))


def leader_count(rho1_target: float, n: int) -> int:
    """Get the number of leader slots, at least one for a positive target."""
    count = int(math.floor(rho1_target * n))
    if rho1_target > 0 and n >= 1:
        count = max(count, 1)
    return min(count, n)


class TransitionPolicy(ABC):
    """Base class of the leader emergence strategies."""

    name = None

    @abstractmethod
    def validate(self, epsilon: float):
        """Check the parameters for time step *epsilon*."""

    @abstractmethod
    def expected_leader_fraction(self) -> float:
        """Get the long-run leader mass this policy aims at."""

    @abstractmethod
    def apply(self, swarm: Swarm, energies: np.ndarray, epsilon: float, rng: RngStream) -> Swarm:
        """Get the relabelled swarm."""

    def params(self) -> dict:
        """Get the flat parameters of the policy for reports."""
        return {"strategy": self.name}


class RandomTransition(TransitionPolicy):
    """Labels flip independently with constant rates ``pi_fl`` and ``pi_lf``."""

    name = "random"

    def __init__(self, pi_fl: float = 0.2, pi_lf: float = 0.2):
        self.pi_fl = float(pi_fl)
        self.pi_lf = float(pi_lf)

    def __repr__(self):
        """Get a short representation."""
        return "RandomTransition(pi_fl={0}, pi_lf={1})".format(self.pi_fl, self.pi_lf)

    def validate(self, epsilon: float):
        """Check that both rates give valid per-step probabilities."""
        if self.pi_fl < 0 or self.pi_lf < 0:
            raise ConfigurationError("transition rates must be nonnegative")
        if epsilon * max(self.pi_fl, self.pi_lf) > 1:
            raise ConfigurationError("epsilon * rate = {0} is not a probability".format(
                epsilon * max(self.pi_fl, self.pi_lf)))
        return self

    def expected_leader_fraction(self) -> float:
        """Get the stationary leader mass."""
        return stationary_masses(self.pi_fl, self.pi_lf)[1]

    def apply(self, swarm, energies, epsilon, rng):
        """Flip every label independently."""
        draws = rng.uniform(swarm.n)
        leaders = swarm.leaders
        to_leader = ~leaders & (draws < epsilon * self.pi_fl)
        to_follower = leaders & (draws < epsilon * self.pi_lf)
        labels = swarm.labels.copy()
        labels[to_leader] = LEADER
        labels[to_follower] = FOLLOWER
        return swarm.with_labels(labels)

    def params(self):
        """Get the flat parameters of the policy for reports."""
        return {"strategy": self.name, "pi_fl": self.pi_fl, "pi_lf": self.pi_lf}


class WeightedTransition(TransitionPolicy):
    """The best ranked agents become leaders, all others followers.

    With *damped* set, an agent whose rank-target label differs from its
    current label only switches with probability ``epsilon``.
    """

    name = "weighted"

    def __init__(self, rho1_target: float = 0.5, damped: bool = False):
        self.rho1_target = float(rho1_target)
        self.damped = bool(damped)

    def __repr__(self):
        """Get a short representation."""
        return "WeightedTransition(rho1_target={0}, damped={1})".format(self.rho1_target, self.damped)

    def validate(self, epsilon: float):
        """Check the target leader fraction."""
        if not 0 < self.rho1_target < 1:
            raise ConfigurationError("rho1_target must be in (0, 1), got {0}".format(self.rho1_target))
        return self

    def expected_leader_fraction(self) -> float:
        """Get the target leader mass."""
        return self.rho1_target

    def target_labels(self, swarm, energies, rng, epsilon: float = 1.0):
        """Get the labels prescribed by the ranking."""
        labels = np.full(swarm.n, FOLLOWER, dtype=np.int8)
        labels[weighted_ranking(energies)[:leader_count(self.rho1_target, swarm.n)]] = LEADER
        return labels

    def apply(self, swarm, energies, epsilon, rng):
        """Relabel the swarm by rank."""
        target = self.target_labels(swarm, energies, rng, epsilon=epsilon)
        if self.damped:
            keep = rng.uniform(swarm.n) >= epsilon
            target = np.where(keep, swarm.labels, target)
        return swarm.with_labels(target)

    def params(self):
        """Get the flat parameters of the policy for reports."""
        return {"strategy": self.name, "rho1_target": self.rho1_target, "weighted_damped": self.damped}


class MixedTransition(WeightedTransition):
    """A fraction *p_bar* of the leader slots is filled by rank, the rest at random.

    A randomly chosen leader keeps its slot from step to step and retires
    with probability ``epsilon * pi_lf``. Vacant random slots are filled
    uniformly among the agents that are neither ranked nor kept, so
    ``epsilon * pi_lf == 1`` redraws all random slots at every step.
    *pi_fl* is reported but unused, entries follow from the vacancies.
    """

    name = "mixed"

    def __init__(self, rho1_target: float = 0.5, p_bar: float = 0.5, pi_fl: float = 0.2, pi_lf: float = 0.2,
                 damped: bool = False):
        super().__init__(rho1_target, damped=damped)
        self.p_bar = float(p_bar)
        self.pi_fl = float(pi_fl)
        self.pi_lf = float(pi_lf)

    def __repr__(self):
        """Get a short representation."""
        return "MixedTransition(rho1_target={0}, p_bar={1}, pi_lf={2}, damped={3})".format(
            self.rho1_target, self.p_bar, self.pi_lf, self.damped)

    def validate(self, epsilon: float):
        """Check the target leader fraction, the weighted share and the retirement rate."""
        super().validate(epsilon)
        if not 0 <= self.p_bar <= 1:
            raise ConfigurationError("p_bar must be in [0, 1], got {0}".format(self.p_bar))
        if self.pi_fl < 0 or self.pi_lf < 0:
            raise ConfigurationError("pi_fl and pi_lf must be nonnegative")
        if epsilon * self.pi_lf > 1:
            raise ConfigurationError("epsilon * pi_lf must not exceed 1, got {0}".format(epsilon * self.pi_lf))
        return self

    def target_labels(self, swarm, energies, rng, epsilon: float = 1.0):
        """Get labels with weighted slots first, then kept and newly drawn random leaders."""
        total = leader_count(self.rho1_target, swarm.n)
        by_rank = int(math.floor(self.p_bar * total))
        labels = np.full(swarm.n, FOLLOWER, dtype=np.int8)
        labels[weighted_ranking(energies)[:by_rank]] = LEADER
        open_slots = total - by_rank
        if open_slots == 0:
            return labels
        retired = rng.uniform(swarm.n) < epsilon * self.pi_lf
        kept = np.flatnonzero((swarm.labels == LEADER) & (labels == FOLLOWER) & ~retired)
        if kept.size > open_slots:
            kept = rng.choice(kept, open_slots)
        labels[kept] = LEADER
        if open_slots > kept.size:
            labels[rng.choice(np.flatnonzero(labels == FOLLOWER), open_slots - kept.size)] = LEADER
        return labels

    def params(self):
        """Get the flat parameters of the policy for reports."""
        params = super().params()
        params.update(p_bar=self.p_bar, pi_fl=self.pi_fl, pi_lf=self.pi_lf)
        return params


def create_transition_policy(strategy: str, pi_fl: float = 0.2, pi_lf: float = 0.2, rho1_target: float = 0.5,
                             p_bar: float = 0.5, weighted_damped: bool = False) -> TransitionPolicy:
    """Create the transition policy named *strategy* from flat parameters."""
    if strategy == "random":
        return RandomTransition(pi_fl, pi_lf)
    if strategy == "weighted":
        return WeightedTransition(rho1_target, damped=weighted_damped)
    if strategy == "mixed":
        return MixedTransition(rho1_target, p_bar, pi_fl, pi_lf, damped=weighted_damped)
    raise ConfigurationError("unknown transition strategy '{0}', expected one of {1}".format(strategy, STRATEGIES))


def apply_transition(swarm: Swarm, objective, policy: TransitionPolicy, epsilon: float, rng: RngStream,
                     energies: Optional[np.ndarray] = None) -> Swarm:
    """Update the labels of *swarm* according to *policy*.

    *energies* are the energies at the current (post position update)
    positions; they are computed when not given.
    """
    if energies is None and not isinstance(policy, RandomTransition):
        energies = objective.evaluate(swarm.positions)
    return policy.apply(swarm, energies, epsilon, rng)
