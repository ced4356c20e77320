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
"""Experiment configuration files and presets.

A configuration file is a sectioned key/value file::

    [dynamics]
    method = gkbo
    sigma_F = 4.0

    [transition]
    strategy = weighted
    rho1_target = 0.5

    [experiment]
    objective = rastrigin_translated
    d = 20
    M = 20

    [sweep]
    sigma_F = 4.0, 5.0
    p_bar = 0.0, 0.5, 1.0

Every key mirrors a run parameter and unknown keys are errors. The optional
``[sweep]`` section holds lists of values; subsections of ``[sweep]`` give
several grids that are concatenated.

Presets of the benchmark experiments are shipped as YAML in
``pygkbo/etc/experiments.yaml``.
"""

from __future__ import annotations

import dataclasses
import io
import os
import pathlib
from typing import Optional, Union

import yaml
from configobj import ConfigObj, ConfigObjError

from pygkbo import THREADS
from pygkbo.harness import RunConfig
from pygkbo.utils import recursive_dict_update
from pygkbo.utils.errors import ConfigurationError

PRESET_FILE = os.path.join(os.path.dirname(__file__), "etc", "experiments.yaml")


def _to_bool(value):
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("true", "yes", "on", "1"):
        return True
    if text in ("false", "no", "off", "0"):
        return False
    raise ValueError("not a boolean: {0!r}".format(value))


def _to_int(value):
    if isinstance(value, bool):
        raise ValueError("not an integer: {0!r}".format(value))
    if isinstance(value, float):
        if not value.is_integer():
            raise ValueError("not an integer: {0!r}".format(value))
        return int(value)
    return int(value)


CONVERTERS = {
    "dynamics": {
        "method": str,
        "nu_F": float,
        "nu_L": float,
        "sigma_F": float,
        "alpha": float,
        "epsilon": float,
        "diffusion": str,
        "consensus": str,
        "interaction_prob": float,
    },
    "transition": {
        "strategy": str,
        "pi_fl": float,
        "pi_lf": float,
        "rho1_target": float,
        "p_bar": float,
        "weighted_damped": _to_bool,
    },
    "experiment": {
        "objective": str,
        "d": _to_int,
        "N": _to_int,
        "N_t": _to_int,
        "j_stall": _to_int,
        "delta_stall": float,
        "stall_reset": _to_bool,
        "success_tol": float,
        "init": str,
        "seed": _to_int,
        "trace_every": _to_int,
        "record_timing": _to_bool,
        "M": _to_int,
        "threads": _to_int,
    },
}

# keys of the [experiment] section that are not run parameters
_BATCH_KEYS = ("M", "threads")
_KEY_SECTION = {key: section for section, keys in CONVERTERS.items() for key in keys}


@dataclasses.dataclass
class Experiment:
    """A run configuration with its batch settings and optional sweep axes."""

    name: str
    run: RunConfig
    M: int = 20
    threads: int = THREADS
    axes: Union[dict, list, None] = None
    description: str = ""

    @property
    def is_sweep(self):
        """Check if the experiment spans a grid."""
        return bool(self.axes)


def convert_value(key: str, value):
    """Convert a raw configuration *value* for parameter *key*.

    Raises:
        ConfigurationError: for unknown keys and invalid values.

    """
    try:
        converter = CONVERTERS[_KEY_SECTION[key]][key]
    except KeyError:
        raise ConfigurationError("unknown configuration key '{0}'".format(key))
    try:
        return converter(value)
    except (TypeError, ValueError) as err:
        raise ConfigurationError("invalid value for '{0}': {1}".format(key, err))


def _convert_axes(group) -> dict:
    axes = {}
    for key, values in group.items():
        if isinstance(values, str) or not isinstance(values, (list, tuple)):
            values = [values]
        if key in _BATCH_KEYS:
            raise ConfigurationError("'{0}' cannot be swept".format(key))
        axes[key] = [convert_value(key, value) for value in values]
    return axes


def _experiment_from_flat(name, flat, axes=None, description=""):
    flat = dict(flat)
    batch = {key: flat.pop(key) for key in _BATCH_KEYS if key in flat}
    run = RunConfig.from_flat(**flat)
    return Experiment(name=name, run=run, M=batch.get("M", 20), threads=batch.get("threads", THREADS),
                      axes=axes or None, description=description)


def read_config(config_file) -> Experiment:
    """Read an experiment from a configuration file.

    Args:
        config_file: Path or file-like object.

    Raises:
        ConfigurationError: on syntax errors, unknown sections or keys and
            invalid values.
        OSError: if the file cannot be read.

    """
    if isinstance(config_file, (str, pathlib.Path)):
        name = pathlib.Path(config_file).stem
        if not os.path.isfile(config_file):
            raise FileNotFoundError("Configuration file not found: {0}".format(config_file))
        config_file = str(config_file)
    else:
        name = getattr(config_file, "name", "experiment")
    try:
        config_obj = ConfigObj(config_file, file_error=True)
    except ConfigObjError as err:
        raise ConfigurationError("Cannot parse configuration {0}: {1}".format(name, err))
    if config_obj.scalars:
        raise ConfigurationError("keys outside of a section: {0}".format(", ".join(config_obj.scalars)))

    flat = {}
    axes = None
    for section_name in config_obj.sections:
        section = config_obj[section_name]
        if section_name == "sweep":
            axes = _read_sweep_section(section)
            continue
        if section_name not in CONVERTERS:
            raise ConfigurationError("unknown configuration section [{0}]".format(section_name))
        if section.sections:
            raise ConfigurationError("[{0}] cannot have subsections".format(section_name))
        for key, value in section.items():
            if key not in CONVERTERS[section_name]:
                raise ConfigurationError("unknown key '{0}' in section [{1}]".format(key, section_name))
            flat[key] = convert_value(key, value)
    return _experiment_from_flat(name, flat, axes)


def _read_sweep_section(section):
    if section.sections and section.scalars:
        raise ConfigurationError("[sweep] holds either axes or grid subsections, not both")
    if section.sections:
        return [_convert_axes(section[sub]) for sub in section.sections]
    return _convert_axes(section)


def write_config(experiment: Experiment, config_file):
    """Write *experiment* as a configuration file readable by :func:`read_config`."""
    config_obj = ConfigObj()
    flat = experiment.run.flat()
    for section_name, keys in CONVERTERS.items():
        config_obj[section_name] = {}
        for key in keys:
            if key in flat:
                config_obj[section_name][key] = flat[key]
    config_obj["experiment"]["M"] = experiment.M
    config_obj["experiment"]["threads"] = experiment.threads
    if isinstance(experiment.axes, dict):
        config_obj["sweep"] = {key: list(values) for key, values in experiment.axes.items()}
    elif experiment.axes:
        config_obj["sweep"] = {}
        for index, group in enumerate(experiment.axes):
            config_obj["sweep"]["grid{0}".format(index)] = {key: list(values) for key, values in group.items()}
    if isinstance(config_file, io.IOBase):
        config_obj.write(config_file)
    else:
        config_obj.filename = str(config_file)
        config_obj.write()


def _read_preset_content(preset_file):
    """Read one or more preset files into a single dict."""
    if isinstance(preset_file, (str, pathlib.Path, io.IOBase)):
        preset_file = [preset_file]
    presets = {}
    for preset_file_obj in preset_file:
        try:
            if isinstance(preset_file_obj, io.IOBase):
                content = yaml.safe_load(preset_file_obj)
            else:
                with open(preset_file_obj) as fd:
                    content = yaml.safe_load(fd)
        except yaml.YAMLError as err:
            raise ConfigurationError("Malformed preset file {0}: {1}".format(
                getattr(preset_file_obj, "name", preset_file_obj), err))
        if content is not None and not isinstance(content, dict):
            raise ConfigurationError("Preset file {0} must map preset names to experiments".format(
                getattr(preset_file_obj, "name", preset_file_obj)))
        presets = recursive_dict_update(presets, content or {})
    return presets


def list_experiments(preset_file=None) -> list:
    """Get the sorted names of the available presets."""
    return sorted(_read_preset_content(preset_file or PRESET_FILE))


def load_experiment(name: str, preset_file: Optional[Union[str, list]] = None) -> Experiment:
    """Load the preset experiment *name*.

    Args:
        name: Preset name, see :func:`list_experiments`.
        preset_file: Path, stream or list of these; later files override
            earlier ones. Defaults to the shipped presets.

    Raises:
        ConfigurationError: if the preset does not exist or is invalid.

    """
    presets = _read_preset_content(preset_file or PRESET_FILE)
    try:
        params = presets[name]
    except KeyError:
        raise ConfigurationError('Experiment preset "{0}" not found, available: {1}'.format(
            name, ", ".join(sorted(presets))))
    unknown = set(params) - {"description", "M", "threads", "run", "sweep"}
    if unknown:
        raise ConfigurationError("unknown preset field(s) in '{0}': {1}".format(name, ", ".join(sorted(unknown))))
    flat = {key: convert_value(key, value) for key, value in (params.get("run") or {}).items()}
    for key in _BATCH_KEYS:
        if key in params:
            flat[key] = convert_value(key, params[key])
    axes = params.get("sweep")
    if isinstance(axes, dict):
        axes = _convert_axes(axes)
    elif axes:
        axes = [_convert_axes(group) for group in axes]
    return _experiment_from_flat(name, flat, axes, description=params.get("description", ""))
