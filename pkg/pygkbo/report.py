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
"""CSV output of experiment reports.

``runs.csv`` holds one row per run, ``summary.csv`` one row per grid point
and ``traces/<experiment_id>_<run_id>.csv`` the recorded moments of each run.
The content of ``runs.csv`` only depends on the configurations and seeds;
wall times are written only when ``record_timing`` is set.
"""

from __future__ import annotations

import csv
import logging
import math
import os

from pygkbo.diagnostics import TRACE_COLUMNS, snapshot_rows

LOG = logging.getLogger(__name__)

RUN_PARAM_COLUMNS = ("method", "strategy", "consensus", "objective", "d", "N", "sigma_F", "nu_F", "nu_L",
                     "epsilon", "alpha", "rho1_target", "p_bar")
RUN_COLUMNS = (("experiment_id", "run_id", "seed") + RUN_PARAM_COLUMNS
               + ("iterations", "stalled", "success", "final_accuracy", "wall_time_ms"))
SUMMARY_PARAM_COLUMNS = RUN_PARAM_COLUMNS + ("pi_fl", "pi_lf", "diffusion", "init", "N_t")
SUMMARY_COLUMNS = (("experiment_id",) + SUMMARY_PARAM_COLUMNS
                   + ("M", "success_rate", "iter_mean", "iter_min", "iter_max", "acc_mean", "acc_median", "error"))

RUNS_FILE = "runs.csv"
SUMMARY_FILE = "summary.csv"
TRACE_DIR = "traces"

_INT_COLUMNS = {"run_id", "seed", "d", "N", "N_t", "M", "iterations", "iteration"}
_BOOL_COLUMNS = {"stalled", "success"}
_STR_COLUMNS = {"experiment_id", "method", "strategy", "consensus", "objective", "diffusion", "init", "error"}


def _format(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def run_rows(report) -> list:
    """Get the ``runs.csv`` rows of an experiment report."""
    params = report.params
    rows = []
    for run in report.runs:
        row = {"experiment_id": report.experiment_id, "run_id": run.run_id, "seed": run.seed}
        row.update({key: params.get(key) for key in RUN_PARAM_COLUMNS})
        row.update(iterations=run.iterations_used, stalled=run.stalled, success=run.success,
                   final_accuracy=run.final_accuracy,
                   wall_time_ms=run.wall_time * 1000.0 if params.get("record_timing") else None)
        rows.append(row)
    return rows


def summary_row(report) -> dict:
    """Get the ``summary.csv`` row of an experiment report."""
    row = {"experiment_id": report.experiment_id}
    row.update({key: report.params.get(key) for key in SUMMARY_PARAM_COLUMNS})
    row.update(M=report.M, success_rate=report.success_rate, iter_mean=report.iter_mean,
               iter_min=report.iter_min, iter_max=report.iter_max, acc_mean=report.acc_mean,
               acc_median=report.acc_median, error=report.error)
    return row


def write_csv(filename, columns, rows):
    """Write *rows* (dicts) to *filename*, header only if there are no rows.

    Raises:
        OSError: with the offending path if the file cannot be written.

    """
    try:
        with open(filename, "w", newline="") as fd:
            writer = csv.writer(fd, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_format(row.get(column)) for column in columns])
    except OSError as err:
        raise OSError(err.errno, "Cannot write report file: {0}".format(err.strerror), str(filename))
    return filename


def write_traces(reports, out_dir) -> list:
    """Write one trace file per run that recorded snapshots."""
    trace_dir = os.path.join(out_dir, TRACE_DIR)
    written = []
    for report in reports:
        for run in report.runs:
            if not run.trace:
                continue
            os.makedirs(trace_dir, exist_ok=True)
            filename = os.path.join(trace_dir, "{0}_{1}.csv".format(report.experiment_id, run.run_id))
            written.append(write_csv(filename, TRACE_COLUMNS, snapshot_rows(run.trace)))
    return written


def emit_report(reports, out_dir, plots: bool = False) -> list:
    """Write ``runs.csv``, ``summary.csv``, traces and optionally plots to *out_dir*.

    Returns:
        The list of written files.

    Raises:
        OSError: if *out_dir* cannot be created or a file cannot be written.

    """
    reports = list(reports)
    try:
        os.makedirs(out_dir, exist_ok=True)
    except OSError as err:
        raise OSError(err.errno, "Cannot create output directory: {0}".format(err.strerror), str(out_dir))
    runs = [row for report in reports for row in run_rows(report)]
    summary = [summary_row(report) for report in reports]
    written = [write_csv(os.path.join(out_dir, RUNS_FILE), RUN_COLUMNS, runs),
               write_csv(os.path.join(out_dir, SUMMARY_FILE), SUMMARY_COLUMNS, summary)]
    written.extend(write_traces(reports, out_dir))
    if plots and summary:
        from pygkbo.plot import plot_summary
        written.extend(plot_summary(summary, out_dir))
    LOG.debug("Wrote %d report files to %s", len(written), out_dir)
    return written


def _parse(column, text):
    if text == "":
        return None
    if column in _STR_COLUMNS:
        return text
    if column in _BOOL_COLUMNS:
        return text == "true"
    if column in _INT_COLUMNS:
        return int(text)
    return float(text)


def read_csv(filename) -> list:
    """Read a report CSV file back into typed dicts."""
    with open(filename, newline="") as fd:
        return [{column: _parse(column, text) for column, text in row.items()} for row in csv.DictReader(fd)]


def read_summary(out_dir) -> list:
    """Read ``summary.csv`` of an output directory."""
    return read_csv(os.path.join(out_dir, SUMMARY_FILE))


def check_success_flags(rows, success_tol: float = 0.25) -> bool:
    """Check that stored success flags agree with ``final_accuracy <= success_tol``.

    *rows* are ``runs.csv`` rows; NaN accuracies count as failures.
    """
    for row in rows:
        acc = row["final_accuracy"]
        expected = acc is not None and not math.isnan(acc) and acc <= success_tol
        if row["success"] != expected:
            return False
    return True
