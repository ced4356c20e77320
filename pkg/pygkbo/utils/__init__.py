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
# You should have received a copy of the GNU Lesser General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.
"""Miscellaneous utility functions for pygkbo."""

import numpy as np

from .errors import DimensionError


def as_vector(x, dimension=None, name="x"):
    """Convert *x* to a 1D float64 array and optionally check its length.

    Raises:
        DimensionError: if *dimension* is given and does not match.
    """
    vec = np.asarray(x, dtype=np.float64)
    if vec.ndim == 0:
        vec = vec.reshape(1)
    if vec.ndim != 1:
        raise DimensionError('{0} must be a vector, got shape {1}'.format(name, vec.shape))
    if dimension is not None and vec.shape[0] != dimension:
        raise DimensionError('{0} has length {1}, expected {2}'.format(name, vec.shape[0], dimension))
    return vec


def as_points(x, dimension=None, name="x"):
    """Convert *x* to a 2D ``(N, d)`` float64 array of points.

    A single vector is promoted to a one row array.
    """
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim <= 1:
        arr = as_vector(arr, dimension, name=name)[np.newaxis, :]
    elif arr.ndim != 2:
        raise DimensionError('{0} must be a vector or an (N, d) array, got shape {1}'.format(name, arr.shape))
    if dimension is not None and arr.shape[1] != dimension:
        raise DimensionError('{0} has dimension {1}, expected {2}'.format(name, arr.shape[1], dimension))
    return arr


def recursive_dict_update(d, u):
    """Recursive dictionary update.

    Copied from:

        http://stackoverflow.com/questions/3232943/update-value-of-a-nested-dictionary-of-varying-depth

    """
    for k, v in u.items():
        if isinstance(v, dict):
            r = recursive_dict_update(d.get(k, {}), v)
            d[k] = r
        else:
            d[k] = u[k]
    return d
