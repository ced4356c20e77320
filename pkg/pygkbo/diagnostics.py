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
"""Population moments, accuracy and decay-rate estimates.

All moments use the empirical measure with weight ``1/N`` per particle, so the
label masses are fractions of the swarm and the unnormalized first moments of
both labels add up to the swarm mean.
"""

from __future__ import annotations

import dataclasses
from typing import Iterable, Optional

import numpy as np

from pygkbo.consensus import weighted_mean
from pygkbo.swarm import Swarm
from pygkbo.utils.errors import DecayFitError, EstimatorUndefinedError

MIN_DECAY_SAMPLES = 10

TRACE_COLUMNS = ("iteration", "t", "rho0", "rho1", "e0", "e1", "v0", "v1", "V", "total_variance",
                 "mean_gap", "accuracy", "best_energy")


@dataclasses.dataclass
class MomentSnapshot:
    """Moments of a labelled swarm at time *t*.

    ``M0``/``M1`` and ``mean_gap`` are None when the corresponding label is
    empty. The unnormalized moments ``m0``/``m1``, ``e0``/``e1`` and the
    variances ``v0``/``v1`` of an empty label are zero since they are sums
    over no particles.
    """

    t: float
    rho0: float
    rho1: float
    m0: np.ndarray
    m1: np.ndarray
    M0: Optional[np.ndarray]
    M1: Optional[np.ndarray]
    e0: float
    e1: float
    v0: float
    v1: float
    V: float
    m: np.ndarray
    total_variance: float
    mean_gap: Optional[float]
    xhat: np.ndarray
    accuracy: float
    best_energy: float
    iteration: int = 0


def accuracy(xhat, minimizer) -> float:
    """Get the max-norm distance between the consensus point and the minimizer."""
    return float(np.max(np.abs(np.asarray(xhat, dtype=np.float64) - np.asarray(minimizer, dtype=np.float64))))


def is_success(acc: float, tol: float = 0.25) -> bool:
    """Check if a final accuracy counts as a successful run (``acc <= tol``)."""
    return bool(acc <= tol)


def total_variance(swarm: Swarm) -> float:
    """Get the variance of all positions about the swarm mean."""
    centred = swarm.positions - swarm.positions.mean(axis=0)
    return float(np.sum(centred ** 2) / swarm.n)


def _label_moments(positions, mask, n):
    selected = positions[mask]
    m = selected.sum(axis=0) / n
    e = float(np.sum(selected ** 2) / n)
    if not mask.any():
        return m, None, e, 0.0
    mean = selected.mean(axis=0)
    v = float(np.sum((selected - mean) ** 2) / n)
    return m, mean, e, v


def snapshot(swarm: Swarm, objective, alpha: float, selector: str = "all", t: float = 0.0,
             xhat: Optional[np.ndarray] = None, energies: Optional[np.ndarray] = None,
             iteration: int = 0) -> MomentSnapshot:
    """Compute the moments of *swarm*.

    When *xhat* is not given the consensus point is computed with *alpha*
    over *selector*, falling back to the whole swarm if that label is empty.
    """
    if energies is None:
        energies = objective.evaluate(swarm.positions)
    if xhat is None:
        try:
            xhat = weighted_mean(swarm, objective, alpha, selector, energies=energies)
        except EstimatorUndefinedError:
            xhat = weighted_mean(swarm, objective, alpha, "all", energies=energies)
    n = swarm.n
    positions = swarm.positions
    m0, M0, e0, v0 = _label_moments(positions, swarm.followers, n)
    m1, M1, e1, v1 = _label_moments(positions, swarm.leaders, n)
    rho0, rho1 = swarm.masses()
    mean_gap = None
    if M0 is not None and M1 is not None:
        mean_gap = float(np.sum((M0 - M1) ** 2))
    return MomentSnapshot(
        t=float(t), rho0=rho0, rho1=rho1,
        m0=m0, m1=m1, M0=M0, M1=M1,
        e0=e0, e1=e1, v0=v0, v1=v1, V=v0 + v1,
        m=m0 + m1, total_variance=total_variance(swarm),
        mean_gap=mean_gap,
        xhat=np.asarray(xhat, dtype=np.float64),
        accuracy=accuracy(xhat, objective.global_min_location),
        best_energy=float(np.min(energies)),
        iteration=int(iteration))


def snapshot_row(snap: MomentSnapshot) -> dict:
    """Get the scalar columns of a snapshot, see ``TRACE_COLUMNS``."""
    return {name: getattr(snap, name) for name in TRACE_COLUMNS}


def snapshot_rows(trace: Iterable[MomentSnapshot]) -> list:
    """Get the rows of a trace file."""
    return [snapshot_row(snap) for snap in trace]


def decay_series(trace: Iterable[MomentSnapshot], attr: str) -> list:
    """Get ``(t, value)`` pairs of a snapshot attribute.

    The series stops before the first missing or nonpositive value so it can
    be handed to :func:`fit_decay_rate`.
    """
    series = []
    for snap in trace:
        value = getattr(snap, attr)
        if value is None or not value > 0:
            break
        series.append((snap.t, float(value)))
    return series


def fit_decay_rate(series):
    """Fit ``value ~ C exp(-rate t)`` by least squares on the log values.

    Args:
        series: Sequence of ``(t, value)`` pairs with positive values.

    Returns:
        ``(rate, r_squared)``. A constant series gives rate 0 and r² 1.

    Raises:
        DecayFitError: for fewer than 10 samples or a nonpositive value.

    """
    data = np.asarray(list(series), dtype=np.float64)
    if data.ndim != 2 or data.shape[0] < MIN_DECAY_SAMPLES:
        raise DecayFitError("at least {0} samples are needed to fit a decay rate".format(MIN_DECAY_SAMPLES))
    t, values = data[:, 0], data[:, 1]
    if not np.all(values > 0):
        raise DecayFitError("decay series must be positive, truncate it at the first nonpositive value")
    logs = np.log(values)
    slope, intercept = np.polyfit(t, logs, 1)
    residuals = logs - (slope * t + intercept)
    ss_tot = float(np.sum((logs - logs.mean()) ** 2))
    ss_res = float(np.sum(residuals ** 2))
    r_squared = 1.0 if np.ptp(logs) == 0 else 1.0 - ss_res / ss_tot
    return float(-slope), r_squared
