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
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Lesser General Public License for more details.
#
# You should have received a copy of the GNU Lesser General Public License along
# with this program.  If not, see <http://www.gnu.org/licenses/>.
"""Pygkbo package for particle-based global optimization with followers and leaders."""

import os

THREADS = int(os.getenv('PYGKBO_THREADS', 1))

from pygkbo import objectives  # noqa
from pygkbo.consensus import weighted_mean  # noqa
from pygkbo.dynamics import DynamicsConfig, ga_step, gkbo_step, kbo_step  # noqa
from pygkbo.harness import RunConfig, run_experiment, run_single, sweep  # noqa
from pygkbo.objectives import (  # noqa
    Objective,
    create_objective,
    list_objectives,
    register_objective,
)
from pygkbo.report import emit_report  # noqa
from pygkbo.swarm import Particle, RngStream, Swarm  # noqa
from pygkbo.transitions import apply_transition, create_transition_policy, stationary_masses  # noqa

from ._compat import PackageNotFoundError, version  # noqa

try:
    __version__ = version("pygkbo")
except PackageNotFoundError:
    __version__ = "0+unknown"

__all__ = ['objectives', 'THREADS', 'Objective', 'create_objective', 'list_objectives', 'register_objective',
           'Swarm', 'Particle', 'RngStream', 'weighted_mean', 'DynamicsConfig', 'gkbo_step', 'kbo_step', 'ga_step',
           'apply_transition', 'create_transition_policy', 'stationary_masses', 'RunConfig', 'run_single',
           'run_experiment', 'sweep', 'emit_report']
