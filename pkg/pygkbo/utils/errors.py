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
"""Special exceptions and warnings specific to pygkbo."""


class ConfigurationError(ValueError):
    """Error raised when a run or experiment configuration is invalid."""


class DimensionError(ValueError):
    """Error raised when a vector does not match the objective dimension."""


class ObjectiveNotFound(KeyError):
    """Exception raised when an objective id is not registered."""


class EstimatorUndefinedError(ValueError):
    """Error raised when the consensus point is computed over an empty subset."""


class UndefinedEquilibriumError(ZeroDivisionError):
    """Error raised when both transition rates are zero."""


class DecayFitError(ValueError):
    """Error raised when a series cannot be fitted by an exponential decay."""


class ParameterWarning(UserWarning):
    """Warning raised when a parameter combination is valid but likely unintended."""
