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
"""Run the optimizers end to end, repeat runs and sweep parameter grids.

A single run draws the initial swarm (all followers), then iterates

1. position update of the configured method,
2. label transitions (not for KBO),
3. recomputation of the consensus point,
4. stall check ``|xhat_new - xhat_old|_inf <= delta_stall``,

until ``N_t`` iterations are done or the stall counter reaches ``j_stall``.
The stall counter is cumulative unless ``stall_reset`` is set, in which case
any larger step resets it to zero.

Repeated runs are scheduled with :func:`dask.delayed` on the threaded
scheduler and collected in submission order, so results do not depend on
the number of workers.
"""

from __future__ import annotations

import dataclasses
import itertools
import logging
import time
from typing import Optional

import dask
import numpy as np

from pygkbo import THREADS
from pygkbo.consensus import weighted_mean
from pygkbo.diagnostics import accuracy, is_success, snapshot
from pygkbo.dynamics import DynamicsConfig, step
from pygkbo.objectives import create_objective, default_init_region
from pygkbo.swarm import INITIALIZERS, RngStream, Swarm
from pygkbo.transitions import apply_transition, create_transition_policy
from pygkbo.utils.errors import ConfigurationError, DimensionError, EstimatorUndefinedError, ObjectiveNotFound

LOG = logging.getLogger(__name__)

GUARD_BOX = 1e8

_DYNAMICS_KEYS = tuple(field.name for field in dataclasses.fields(DynamicsConfig))


@dataclasses.dataclass(frozen=True)
class RunConfig:
    """Complete configuration of one run.

    The transition parameters are kept flat; :attr:`transition` builds the
    policy. Defaults reproduce the translated Rastrigin benchmark in 20
    dimensions with 200 particles.
    """

    dynamics: DynamicsConfig = dataclasses.field(default_factory=DynamicsConfig)
    strategy: str = "random"
    pi_fl: float = 0.2
    pi_lf: float = 0.2
    rho1_target: float = 0.5
    p_bar: float = 0.5
    weighted_damped: bool = False
    objective: str = "rastrigin_translated"
    d: int = 20
    N: int = 200
    N_t: int = 10000
    j_stall: int = 1000
    delta_stall: float = 1e-4
    stall_reset: bool = False
    success_tol: float = 0.25
    init: str = "uniform_box"
    seed: int = 0
    trace_every: int = 0
    record_timing: bool = False

    @property
    def transition(self):
        """Get the transition policy."""
        return create_transition_policy(self.strategy, pi_fl=self.pi_fl, pi_lf=self.pi_lf,
                                        rho1_target=self.rho1_target, p_bar=self.p_bar,
                                        weighted_damped=self.weighted_damped)

    @classmethod
    def from_flat(cls, **flat) -> RunConfig:
        """Create a config from flat keys, see :meth:`replace`."""
        return cls().replace(**flat)

    def flat(self) -> dict:
        """Get all parameters as one flat dictionary."""
        params = dataclasses.asdict(self.dynamics)
        for field in dataclasses.fields(self):
            if field.name != "dynamics":
                params[field.name] = getattr(self, field.name)
        return params

    def replace(self, **flat) -> RunConfig:
        """Get a copy with some flat parameters replaced.

        Keys can name :class:`DynamicsConfig` fields as well as fields of this
        class.

        Raises:
            ConfigurationError: on unknown keys.

        """
        dyn_changes = {key: flat.pop(key) for key in list(flat) if key in _DYNAMICS_KEYS}
        own_keys = {field.name for field in dataclasses.fields(self)} - {"dynamics"}
        unknown = set(flat) - own_keys
        if unknown:
            raise ConfigurationError("unknown run parameter(s): {0}".format(", ".join(sorted(unknown))))
        dynamics = dataclasses.replace(self.dynamics, **dyn_changes)
        return dataclasses.replace(self, dynamics=dynamics, **flat)

    def validate(self) -> RunConfig:
        """Check the configuration before any run starts.

        Raises:
            ConfigurationError: on invalid values.
            ObjectiveNotFound: if the objective is not registered.

        """
        self.dynamics.validate()
        if self.dynamics.method != "kbo":
            self.transition.validate(self.dynamics.epsilon)
        if self.N < 2:
            raise ConfigurationError("N must be at least 2, got {0}".format(self.N))
        if self.N_t < 1:
            raise ConfigurationError("N_t must be at least 1, got {0}".format(self.N_t))
        if self.j_stall < 1:
            raise ConfigurationError("j_stall must be at least 1, got {0}".format(self.j_stall))
        if not self.delta_stall > 0:
            raise ConfigurationError("delta_stall must be positive, got {0}".format(self.delta_stall))
        if not self.success_tol > 0:
            raise ConfigurationError("success_tol must be positive, got {0}".format(self.success_tol))
        if self.init not in INITIALIZERS:
            raise ConfigurationError("unknown init '{0}', expected one of {1}".format(
                self.init, tuple(INITIALIZERS)))
        if self.trace_every < 0:
            raise ConfigurationError("trace_every must be nonnegative")
        if self.seed < 0:
            raise ConfigurationError("seed must be nonnegative")
        try:
            create_objective(self.objective, self.d)
        except DimensionError as err:
            raise ConfigurationError(str(err))
        return self


@dataclasses.dataclass
class RunResult:
    """Outcome of a single run.

    ``final_accuracy`` is infinite for a diverged run and NaN for a run that
    raised, so ``success`` always equals ``final_accuracy <= success_tol``.
    """

    iterations_used: int
    stalled: bool
    final_xhat: Optional[np.ndarray]
    final_accuracy: float
    success: bool
    seed: int
    wall_time: float = 0.0
    trace: list = dataclasses.field(default_factory=list)
    diverged: bool = False
    error: Optional[str] = None
    final_best_energy: float = float("nan")
    run_id: int = 0


@dataclasses.dataclass
class ExperimentReport:
    """Aggregate of M runs at one grid point."""

    experiment_id: str
    params: dict
    M: int
    runs: list
    success_rate: float
    iter_mean: float
    iter_min: float
    iter_max: float
    acc_mean: float = float("nan")
    acc_median: float = float("nan")
    error: Optional[str] = None

    @classmethod
    def from_runs(cls, experiment_id: str, cfg: RunConfig, runs, M: Optional[int] = None, error=None,
                  params: Optional[dict] = None):
        """Aggregate *runs* into a report, *params* default to the flat *cfg*.

        The accuracy statistics cover the runs that did not raise, a
        diverged run enters with infinite accuracy.
        """
        runs = list(runs)
        M = len(runs) if M is None else M
        if runs:
            iterations = np.array([run.iterations_used for run in runs], dtype=np.float64)
            success_rate = sum(run.success for run in runs) / M
            iter_mean, iter_min, iter_max = float(iterations.mean()), float(iterations.min()), float(iterations.max())
        else:
            success_rate = 0.0
            iter_mean = iter_min = iter_max = float("nan")
        accuracies = np.array([run.final_accuracy for run in runs if run.error is None], dtype=np.float64)
        if accuracies.size:
            acc_mean, acc_median = float(accuracies.mean()), float(np.median(accuracies))
        else:
            acc_mean = acc_median = float("nan")
        return cls(experiment_id=experiment_id, params=cfg.flat() if params is None else params, M=M, runs=runs,
                   success_rate=success_rate, iter_mean=iter_mean, iter_min=iter_min, iter_max=iter_max,
                   acc_mean=acc_mean, acc_median=acc_median, error=error)


class _ConsensusTracker:
    """Consensus point of a run, falling back to the whole swarm for an empty label."""

    def __init__(self, objective, dynamics: DynamicsConfig, run_label: str):
        self.objective = objective
        self.alpha = dynamics.alpha
        self.selector = dynamics.consensus
        self.run_label = run_label
        self._fallback_logged = False

    def __call__(self, swarm: Swarm, energies: np.ndarray) -> np.ndarray:
        try:
            return weighted_mean(swarm, self.objective, self.alpha, self.selector, energies=energies)
        except EstimatorUndefinedError:
            if not self._fallback_logged:
                LOG.info("%s: no %s to average, using the whole swarm for the consensus point",
                         self.run_label, self.selector)
                self._fallback_logged = True
            return weighted_mean(swarm, self.objective, self.alpha, "all", energies=energies)


def _is_diverged(swarm: Swarm, energies: np.ndarray, xhat: np.ndarray) -> bool:
    """Check for overflowed positions or energies and a consensus point outside the guard box.

    Single particles may wander far out, only the consensus point is boxed.
    """
    if not (np.all(np.isfinite(swarm.positions)) and np.all(np.isfinite(energies))):
        return True
    return not (np.all(np.isfinite(xhat)) and np.all(np.abs(xhat) <= GUARD_BOX))


def run_single(cfg: RunConfig, seed: Optional[int] = None, swarm: Optional[Swarm] = None,
               run_id: int = 0) -> RunResult:
    """Run one optimization.

    Args:
        cfg: Run configuration, validated before the loop starts.
        seed: Seed of the run, ``cfg.seed`` by default.
        swarm: Optional initial swarm replacing the drawn one.
        run_id: Index of the run within its experiment.

    """
    cfg.validate()
    seed = cfg.seed if seed is None else int(seed)
    run_label = "run {0} (seed {1})".format(run_id, seed)
    dyn = cfg.dynamics
    objective = create_objective(cfg.objective, cfg.d)
    rng = RngStream(seed)
    if swarm is None:
        low, high = default_init_region(objective)
        swarm = INITIALIZERS[cfg.init](cfg.N, low, high, rng)
    elif swarm.dimension != objective.dimension:
        raise DimensionError("initial swarm has dimension {0}, expected {1}".format(swarm.dimension, cfg.d))
    policy = cfg.transition if dyn.method != "kbo" else None
    consensus = _ConsensusTracker(objective, dyn, run_label)
    LOG.debug("Starting %s: %s", run_label, cfg.flat())

    start = time.perf_counter()
    energies = objective.evaluate(swarm.positions)
    xhat = consensus(swarm, energies)
    trace = []
    if cfg.trace_every:
        trace.append(snapshot(swarm, objective, dyn.alpha, t=0.0, xhat=xhat, energies=energies))

    iteration = 0
    stall_count = 0
    diverged = False
    no_leader_logged = False
    while iteration < cfg.N_t and stall_count < cfg.j_stall:
        if dyn.method != "kbo" and swarm.n_leaders == 0 and not no_leader_logged:
            LOG.info("%s: no leaders at iteration %d, followers only diffuse", run_label, iteration)
            no_leader_logged = True
        with np.errstate(over="ignore", invalid="ignore"):
            swarm = step(swarm, objective, dyn, rng, xhat=xhat)
            iteration += 1
            energies = objective.evaluate(swarm.positions)
            if np.all(np.isfinite(energies)):
                if policy is not None:
                    swarm = apply_transition(swarm, objective, policy, dyn.epsilon, rng, energies=energies)
                new_xhat = consensus(swarm, energies)
            else:
                new_xhat = xhat
        if _is_diverged(swarm, energies, new_xhat):
            LOG.warning("%s diverged at iteration %d, aborting", run_label, iteration)
            diverged = True
            break
        if np.max(np.abs(new_xhat - xhat)) <= cfg.delta_stall:
            stall_count += 1
        elif cfg.stall_reset:
            stall_count = 0
        xhat = new_xhat
        if cfg.trace_every and iteration % cfg.trace_every == 0:
            trace.append(snapshot(swarm, objective, dyn.alpha, t=iteration * dyn.epsilon, xhat=xhat,
                                  energies=energies, iteration=iteration))
    wall_time = time.perf_counter() - start

    final_accuracy = float("inf") if diverged else accuracy(xhat, objective.global_min_location)
    result = RunResult(
        iterations_used=iteration,
        stalled=stall_count >= cfg.j_stall,
        final_xhat=None if diverged else xhat,
        final_accuracy=final_accuracy,
        success=is_success(final_accuracy, cfg.success_tol),
        seed=seed,
        wall_time=wall_time,
        trace=trace,
        diverged=diverged,
        final_best_energy=float("nan") if diverged else float(np.min(energies)),
        run_id=run_id)
    LOG.debug("Finished %s after %d iterations, accuracy %g", run_label, iteration, final_accuracy)
    return result


def _run_guarded(cfg: RunConfig, seed: int, run_id: int) -> RunResult:
    try:
        return run_single(cfg, seed=seed, run_id=run_id)
    except Exception as err:
        LOG.warning("Run %d (seed %d) failed: %s", run_id, seed, err)
        return RunResult(iterations_used=0, stalled=False, final_xhat=None, final_accuracy=float("nan"),
                         success=False, seed=seed, error="{0}: {1}".format(type(err).__name__, err),
                         run_id=run_id)


def _compute_runs(batches, threads):
    """Run all ``(cfg, base_seed, M)`` batches and get one list of results per batch."""
    threads = THREADS if threads is None else threads
    if threads < 1:
        raise ConfigurationError("threads must be at least 1, got {0}".format(threads))
    tasks = []
    for cfg, base_seed, M in batches:
        tasks.append([dask.delayed(_run_guarded, pure=False)(cfg, base_seed + run_id, run_id)
                      for run_id in range(M)])
    flat_tasks = [task for batch in tasks for task in batch]
    results = dask.compute(*flat_tasks, scheduler="threads", num_workers=threads) if flat_tasks else ()
    out = []
    pos = 0
    for batch in tasks:
        out.append(list(results[pos:pos + len(batch)]))
        pos += len(batch)
    return out


def run_experiment(cfg: RunConfig, M: int = 20, base_seed: Optional[int] = None, threads: Optional[int] = None,
                   experiment_id: str = "exp0000") -> ExperimentReport:
    """Repeat a run M times with seeds ``base_seed + 0, ..., base_seed + M - 1``.

    Failing runs are recorded as unsuccessful, they never abort the batch.

    Raises:
        ConfigurationError: if the configuration is invalid or ``M < 1``.

    """
    if M < 1:
        raise ConfigurationError("M must be at least 1, got {0}".format(M))
    cfg.validate()
    base_seed = cfg.seed if base_seed is None else int(base_seed)
    runs, = _compute_runs([(cfg, base_seed, M)], threads)
    return ExperimentReport.from_runs(experiment_id, cfg, runs, M)


def derive_seed(base_seed: int, grid_index: int) -> int:
    """Get the base seed of grid point *grid_index* of a sweep.

    The seed only depends on ``(base_seed, grid_index)``, adding grid points
    never changes the seeds of existing ones.
    """
    state = np.random.SeedSequence([int(base_seed), int(grid_index)]).generate_state(1, np.uint64)
    return int(state[0])


def sweep_grid(axes) -> list:
    """Get the grid points of a sweep as a list of flat dicts.

    *axes* maps parameter names to value lists and spans their cartesian
    product. A list of such mappings gives the concatenation of their
    grids, for grids that are not a single product.
    """
    if isinstance(axes, dict):
        axes = [axes]
    if not axes or not all(axes):
        raise ConfigurationError("a sweep needs at least one axis")
    points = []
    for group in axes:
        names = list(group)
        for name in names:
            if not isinstance(group[name], (list, tuple)) or not group[name]:
                raise ConfigurationError("sweep axis '{0}' must be a nonempty list".format(name))
        points.extend(dict(zip(names, values)) for values in itertools.product(*(group[name] for name in names)))
    return points


def sweep(template: RunConfig, axes, M: int = 20, base_seed: Optional[int] = None,
          threads: Optional[int] = None) -> list:
    """Run an experiment at every point of a parameter grid.

    Grid point i uses the base seed ``derive_seed(base_seed, i)``. Points with
    an invalid configuration get a report without runs and the error message.
    """
    if M < 1:
        raise ConfigurationError("M must be at least 1, got {0}".format(M))
    base_seed = template.seed if base_seed is None else int(base_seed)
    points = []
    for index, changes in enumerate(sweep_grid(axes)):
        experiment_id = "exp{0:04d}".format(index)
        try:
            cfg = template.replace(**changes).validate()
        except (ConfigurationError, ObjectiveNotFound, TypeError) as err:
            LOG.warning("Skipping %s %s: %s", experiment_id, changes, err)
            points.append((experiment_id, template, changes, str(err)))
            continue
        points.append((experiment_id, cfg, derive_seed(base_seed, index), None))

    batches = [(cfg, seed, M) for _, cfg, seed, error in points if error is None]
    results = iter(_compute_runs(batches, threads))
    reports = []
    for experiment_id, cfg, extra, error in points:
        if error is None:
            reports.append(ExperimentReport.from_runs(experiment_id, cfg, next(results), M))
        else:
            reports.append(ExperimentReport.from_runs(experiment_id, cfg, [], M, error=error,
                                                       params=dict(cfg.flat(), **extra)))
        LOG.debug("%s: success rate %.2f", experiment_id, reports[-1].success_rate)
    return reports
