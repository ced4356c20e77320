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
"""Command line interface.

Examples::

    python -m pygkbo run --config my_experiment.cfg --out results
    python -m pygkbo sweep --preset test4 --threads 4 --out test4
    python -m pygkbo plot --out test4

Unsuccessful optimization runs are reported in the output files; the exit
code is only nonzero for configuration and I/O errors.
"""

import argparse
import logging
import os
import sys

from pygkbo.config import Experiment, load_experiment, read_config, write_config
from pygkbo.harness import RunConfig, run_experiment, sweep
from pygkbo.report import emit_report, read_summary
from pygkbo.utils.errors import ConfigurationError, ObjectiveNotFound

LOG = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 2

CONFIG_COPY = "experiment.cfg"


def _add_experiment_arguments(parser):
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--config", help="experiment configuration file")
    source.add_argument("--preset", help="name of a shipped experiment preset")
    parser.add_argument("--out", default="pygkbo_out", help="output directory (default: %(default)s)")
    parser.add_argument("--seed", type=int, help="base seed, overrides the configuration")
    parser.add_argument("--threads", type=int, help="number of concurrent runs")
    parser.add_argument("--trace-every", type=int, dest="trace_every",
                        help="record moments every n iterations (0 disables traces)")
    parser.add_argument("-M", type=int, dest="M", help="number of runs per grid point")
    parser.add_argument("--plots", action="store_true", help="also write SVG plots")


def get_parser():
    """Build the argument parser."""
    parser = argparse.ArgumentParser(prog="pygkbo", description="Run particle optimization experiments.")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="increase verbosity (-v for info, -vv for debug)")
    sub = parser.add_subparsers(dest="command", required=True)
    _add_experiment_arguments(sub.add_parser("run", help="run a single experiment"))
    _add_experiment_arguments(sub.add_parser("sweep", help="run an experiment over a parameter grid"))
    plot_parser = sub.add_parser("plot", help="re-render plots from an existing summary.csv")
    plot_parser.add_argument("--out", default="pygkbo_out", help="output directory holding summary.csv")
    return parser


def _load(args) -> Experiment:
    if args.config:
        experiment = read_config(args.config)
    elif args.preset:
        experiment = load_experiment(args.preset)
    else:
        experiment = Experiment(name="default", run=RunConfig())
    changes = {}
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.trace_every is not None:
        changes["trace_every"] = args.trace_every
    if changes:
        experiment.run = experiment.run.replace(**changes)
    if args.M is not None:
        experiment.M = args.M
    if args.threads is not None:
        experiment.threads = args.threads
    return experiment


def _run(args):
    experiment = _load(args)
    if experiment.is_sweep:
        LOG.warning("Ignoring the sweep axes of '%s', use the 'sweep' command to run the grid", experiment.name)
    report = run_experiment(experiment.run, experiment.M, threads=experiment.threads)
    os.makedirs(args.out, exist_ok=True)
    write_config(experiment, os.path.join(args.out, CONFIG_COPY))
    emit_report([report], args.out, plots=args.plots)
    print("{0}: success rate {1:.2f}, mean iterations {2:.1f}".format(
        experiment.name, report.success_rate, report.iter_mean))


def _sweep(args):
    experiment = _load(args)
    if not experiment.is_sweep:
        raise ConfigurationError("'{0}' has no sweep axes".format(experiment.name))
    reports = sweep(experiment.run, experiment.axes, experiment.M, threads=experiment.threads)
    os.makedirs(args.out, exist_ok=True)
    write_config(experiment, os.path.join(args.out, CONFIG_COPY))
    emit_report(reports, args.out, plots=args.plots)
    failed = sum(report.error is not None for report in reports)
    print("{0}: {1} grid points written to {2} ({3} invalid)".format(
        experiment.name, len(reports), args.out, failed))


def _plot(args):
    from pygkbo.plot import plot_summary
    for filename in plot_summary(read_summary(args.out), args.out):
        print(filename)


COMMANDS = {"run": _run, "sweep": _sweep, "plot": _plot}


def main(argv=None) -> int:
    """Run the command line interface and get the exit code."""
    args = get_parser().parse_args(argv)
    level = {0: logging.WARNING, 1: logging.INFO}.get(args.verbose, logging.DEBUG)
    logging.basicConfig(level=level, format="[%(levelname)s: %(asctime)s : %(name)s] %(message)s")
    try:
        COMMANDS[args.command](args)
    except (ConfigurationError, ObjectiveNotFound, OSError, ImportError) as err:
        print("pygkbo: error: {0}".format(err), file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
