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
"""Benchmark cost functions and the registry used to look them up by name.

All builtin objectives are translated so that their global minimizer sits at
``x = (1, ..., 1)`` with minimum value 0, and each comes with an
initialization hypercube that does *not* contain the minimizer.

Objectives evaluate row-wise: an ``(N, d)`` array of positions returns ``N``
energies, a single ``(d,)`` vector returns a float.
"""

from __future__ import annotations

import warnings
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from pygkbo._compat import ArrayLike, entry_points
from pygkbo.utils import as_points, as_vector
from pygkbo.utils.errors import DimensionError, ObjectiveNotFound

ObjectiveFactory = Callable[[int], "Objective"]
OBJECTIVE_REGISTRY: dict[str, ObjectiveFactory] = {}

TRANSLATION = 1.0


class Objective:
    """Cost function :math:`E: R^d \\to R` with known minimizer and init region.

    Args:
        name: Identifier of the objective, used in reports.
        func: Function evaluated on an ``(N, d)`` array of points *centred at
            the origin*, returning ``N`` energies. The objective evaluates
            ``func(x - minimizer)``.
        minimizer: Location of the global minimizer, its length fixes the
            dimension.
        init_low, init_high: Corners of the default initialization box.
        min_value: Value of the global minimum.

    """

    def __init__(self, name: str, func: Callable[[np.ndarray], np.ndarray], minimizer: ArrayLike,
                 init_low: ArrayLike, init_high: ArrayLike, min_value: float = 0.0):
        self.name = name
        self._func = func
        self.global_min_location = as_vector(minimizer, name="minimizer")
        self.global_min_location.setflags(write=False)
        self.dimension = self.global_min_location.shape[0]
        self.global_min_value = float(min_value)
        self.init_low = as_vector(init_low, self.dimension, name="init_low")
        self.init_high = as_vector(init_high, self.dimension, name="init_high")
        if not np.all(self.init_low < self.init_high):
            raise ValueError("Initialization box of '{0}' is degenerate: low={1}, high={2}".format(
                name, self.init_low, self.init_high))
        self.init_low.setflags(write=False)
        self.init_high.setflags(write=False)

    def __repr__(self):
        """Get a short representation of the objective."""
        return "<Objective {0} d={1}>".format(self.name, self.dimension)

    def __call__(self, x: ArrayLike):
        """Evaluate the objective, see :meth:`evaluate`."""
        return self.evaluate(x)

    def evaluate(self, x: ArrayLike):
        """Evaluate the cost at one point or at each row of an ``(N, d)`` array.

        Raises:
            DimensionError: if the trailing dimension is not ``self.dimension``.

        """
        arr = np.asarray(x, dtype=np.float64)
        points = as_points(arr, self.dimension)
        energies = np.asarray(self._func(points - self.global_min_location), dtype=np.float64)
        if arr.ndim <= 1:
            return float(energies[0])
        return energies

    def untranslated(self, x: ArrayLike):
        """Evaluate the classical, origin-centred variant of the function at *x*."""
        arr = np.asarray(x, dtype=np.float64)
        energies = np.asarray(self._func(as_points(arr, self.dimension)), dtype=np.float64)
        if arr.ndim <= 1:
            return float(energies[0])
        return energies

    def contains_minimizer(self, low: Optional[ArrayLike] = None, high: Optional[ArrayLike] = None) -> bool:
        """Check if the minimizer lies inside a box, by default the init box."""
        low = self.init_low if low is None else as_vector(low, self.dimension)
        high = self.init_high if high is None else as_vector(high, self.dimension)
        x = self.global_min_location
        return bool(np.all((low <= x) & (x <= high)))


def rastrigin(z):
    """Rastrigin function centred at the origin, evaluated row-wise."""
    return np.sum(z ** 2 - 10.0 * np.cos(2 * np.pi * z) + 10.0, axis=-1)


def ackley(z):
    """Ackley function centred at the origin, evaluated row-wise."""
    return (-20.0 * np.exp(-0.2 * np.sqrt(np.mean(z ** 2, axis=-1)))
            - np.exp(np.mean(np.cos(2 * np.pi * z), axis=-1))
            + 20.0 + np.e)


def griewank(z):
    """Griewank function centred at the origin, evaluated row-wise."""
    i = np.arange(1, z.shape[-1] + 1)
    return 1.0 + np.sum(z ** 2, axis=-1) / 4000.0 - np.prod(np.cos(z / np.sqrt(i)), axis=-1)


def rosenbrock(z):
    """Rosenbrock function shifted so its minimum sits at the origin.

    The ``(1 - x_i)^2`` terms run over all coordinates so that the function is
    not constant for ``d = 1``.
    """
    x = z + 1.0
    valley = np.sum(100.0 * (x[..., 1:] - x[..., :-1] ** 2) ** 2, axis=-1)
    return valley + np.sum((1.0 - x) ** 2, axis=-1)


def salomon(z):
    """Salomon function centred at the origin, evaluated row-wise."""
    r = np.sqrt(np.sum(z ** 2, axis=-1))
    return 1.0 - np.cos(2 * np.pi * r) + 0.1 * r


def _translated_factory(name, func, low, high):
    def _create(dimension: int) -> Objective:
        if int(dimension) < 1:
            raise DimensionError("Objective dimension must be positive, got {0}".format(dimension))
        dimension = int(dimension)
        return Objective(name, func,
                         minimizer=np.full(dimension, TRANSLATION),
                         init_low=np.full(dimension, low),
                         init_high=np.full(dimension, high))
    _create.__doc__ = "Create the translated {0} objective in *dimension* dimensions.".format(func.__name__)
    return _create


def register_objective(name: str, factory: ObjectiveFactory) -> None:
    """Register a callable creating an :class:`Objective` for a given dimension.

    Examples:
        Register a custom objective::

            register_objective("sphere", lambda d: Objective("sphere", lambda z: (z ** 2).sum(-1),
                                                             np.ones(d), -np.ones(d), np.zeros(d)))

        Register from a third-party package (in your setup.py)::

            entry_points = {
                "pygkbo.objectives": [
                    "my_objective = mypkg.mymodule:create_my_objective",
                ],
            }

    """
    if name in OBJECTIVE_REGISTRY:
        raise ValueError(
            f"Objective with name '{name}' is already registered. "
            "Use 'unregister_objective' to make the name available.")
    OBJECTIVE_REGISTRY[name] = factory


def unregister_objective(name: str) -> None:
    """Remove a previously registered objective."""
    del OBJECTIVE_REGISTRY[name]


@lru_cache(1)
def _load_entry_point_objectives():
    """Load objectives provided by other packages through entry points."""
    for entry_point in entry_points(group="pygkbo.objectives"):
        try:
            factory = entry_point.load()
        except ImportError:
            warnings.warn(f"Unable to load objective from plugin: {entry_point.name}", stacklevel=3)
        else:
            if entry_point.name not in OBJECTIVE_REGISTRY:
                register_objective(entry_point.name, factory)


def list_objectives() -> list[str]:
    """Get sorted list of registered objective names."""
    _load_entry_point_objectives()
    return sorted(OBJECTIVE_REGISTRY.keys())


def create_objective(name: str, dimension: int) -> Objective:
    """Create the registered objective *name* in *dimension* dimensions.

    Raises:
        ObjectiveNotFound: if *name* is not registered.

    """
    _load_entry_point_objectives()
    try:
        factory = OBJECTIVE_REGISTRY[name]
    except KeyError:
        raise ObjectiveNotFound('Objective "{0}" is not registered, available: {1}'.format(
            name, ", ".join(sorted(OBJECTIVE_REGISTRY))))
    return factory(dimension)


def evaluate(objective: Objective, x: ArrayLike):
    """Evaluate *objective* at *x*."""
    return objective.evaluate(x)


def default_init_region(objective, dimension: Optional[int] = None):
    """Get the initialization hypercube ``(low, high)`` of an objective.

    *objective* can be an :class:`Objective` or the name of a registered one,
    in which case *dimension* is required.
    """
    if not isinstance(objective, Objective):
        if dimension is None:
            raise ValueError("'dimension' is required when the objective is given by name")
        objective = create_objective(objective, dimension)
    return objective.init_low.copy(), objective.init_high.copy()


for _name, _func, _low, _high in (
        ("rastrigin_translated", rastrigin, -4.12, 0.0),
        ("ackley_translated", ackley, -5.0, 0.0),
        ("griewank_translated", griewank, -10.0, 0.0),
        ("rosenbrock_translated", rosenbrock, -3.0, 0.0),
        ("salomon_translated", salomon, -5.0, 0.0)):
    register_objective(_name, _translated_factory(_name, _func, _low, _high))
del _name, _func, _low, _high
