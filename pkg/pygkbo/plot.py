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
"""Plots of sweep summaries.

Every figure is saved as SVG next to a ``.txt`` file holding the plotted
numbers. Rows that differ in parameters other than the plotted axes are
split into separate series (line plots) or separate files (heatmaps).

matplotlib is only imported when a plot is made.
"""

import logging
import os

import numpy as np

from pygkbo.report import SUMMARY_PARAM_COLUMNS

LOG = logging.getLogger(__name__)

LINE_AXES = ("sigma_F", "d", "p_bar", "epsilon", "rho1_target")
LINE_FIGURES = (("success_rate", "success rate", ("success_rate",)),
                ("iterations", "iterations", ("iter_mean", "iter_min", "iter_max")),
                ("accuracy", "final accuracy", ("acc_mean", "acc_median")))


def _varying(rows, exclude=()):
    """Get the parameter columns taking more than one value across *rows*."""
    return [column for column in SUMMARY_PARAM_COLUMNS
            if column not in exclude and len({row.get(column) for row in rows}) > 1]


def split_series(rows, exclude=()):
    """Group rows by the values of the varying parameters not in *exclude*.

    Returns:
        List of ``(label, rows)`` pairs in first-appearance order.

    """
    keys = _varying(rows, exclude)
    series = {}
    for row in rows:
        label = ", ".join("{0}={1}".format(key, row.get(key)) for key in keys)
        series.setdefault(label, []).append(row)
    return list(series.items())


def success_table(rows, x="sigma_F", y="d"):
    """Get the success rates of *rows* on the grid of their *x* and *y* values.

    Returns:
        ``(xs, ys, table)`` with ``table[j, i]`` the success rate at
        ``(xs[i], ys[j])``, NaN where there is no row.

    """
    xs = sorted({row[x] for row in rows})
    ys = sorted({row[y] for row in rows})
    table = np.full((len(ys), len(xs)), np.nan)
    for row in rows:
        table[ys.index(row[y]), xs.index(row[x])] = row["success_rate"]
    return xs, ys, table


def _figure_name(out_dir, stem, index, count):
    suffix = "" if count == 1 else "_{0}".format(index)
    return os.path.join(out_dir, "{0}{1}.svg".format(stem, suffix))


def plot_success_heatmap(rows, out_dir, x="sigma_F", y="d") -> list:
    """Plot success-rate heatmaps over *x* and *y*, one file per series."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []
    groups = split_series(rows, exclude=(x, y))
    for index, (label, group) in enumerate(groups):
        xs, ys, table = success_table(group, x, y)
        filename = _figure_name(out_dir, "success_{0}_{1}".format(x, y), index, len(groups))
        fig, ax = plt.subplots()
        mesh = ax.imshow(table, origin="lower", aspect="auto", vmin=0.0, vmax=1.0, cmap="viridis")
        ax.set_xticks(range(len(xs)))
        ax.set_xticklabels([str(value) for value in xs])
        ax.set_yticks(range(len(ys)))
        ax.set_yticklabels([str(value) for value in ys])
        ax.set_xlabel(x)
        ax.set_ylabel(y)
        if label:
            ax.set_title(label)
        fig.colorbar(mesh, ax=ax).set_label("success rate")
        fig.savefig(filename, format="svg", bbox_inches="tight")
        plt.close(fig)
        header = "{0}\nrows: {1} = {2}\ncolumns: {3} = {4}".format(label, y, ys, x, xs)
        np.savetxt(filename[:-4] + ".txt", table, header=header)
        written.extend([filename, filename[:-4] + ".txt"])
    return written


def _value(row, column):
    value = row.get(column)
    return np.nan if value is None else float(value)


def plot_against(rows, out_dir, x="sigma_F") -> list:
    """Plot success rate, iterations and accuracy against *x*, one line per series.

    The iteration figure shades the range between the fewest and the most
    iterations, the accuracy figure adds the median as a dashed line on a
    log scale.
    """
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []
    groups = split_series(rows, exclude=(x,))
    xs = sorted({row[x] for row in rows})
    for stem, ylabel, columns in LINE_FIGURES:
        filename = os.path.join(out_dir, "{0}_vs_{1}.svg".format(stem, x))
        data = np.full((len(xs), 1 + len(groups) * len(columns)), np.nan)
        data[:, 0] = xs
        names = [x]
        fig, ax = plt.subplots()
        for index, (label, group) in enumerate(groups):
            group = sorted(group, key=lambda row: row[x])
            where = [xs.index(row[x]) for row in group]
            values = np.array([[_value(row, column) for column in columns] for row in group])
            data[where, 1 + index * len(columns):1 + (index + 1) * len(columns)] = values
            names.extend(label or column if len(columns) == 1 else "{0} {1}".format(label, column).strip()
                         for column in columns)
            shown = np.where(np.isfinite(values), values, np.nan)
            at = [row[x] for row in group]
            line, = ax.plot(at, shown[:, 0], marker="o", label=label or None)
            if stem == "iterations":
                ax.fill_between(at, shown[:, 1], shown[:, 2], color=line.get_color(), alpha=0.2)
            elif stem == "accuracy":
                ax.plot(at, shown[:, 1], marker="x", linestyle="--", color=line.get_color())
        if stem == "accuracy":
            ax.set_yscale("log")
        ax.set_xlabel(x)
        ax.set_ylabel(ylabel)
        if any(label for label, _ in groups):
            ax.legend(fontsize="small")
        fig.savefig(filename, format="svg", bbox_inches="tight")
        plt.close(fig)
        np.savetxt(filename[:-4] + ".txt", data, header="\t".join(names), delimiter="\t")
        written.extend([filename, filename[:-4] + ".txt"])
    return written


def plot_summary(rows, out_dir) -> list:
    """Make the plots that fit the axes varied in a summary.

    A heatmap is drawn when both ``sigma_F`` and ``d`` vary. Otherwise the
    line plots run against the varying parameter of ``LINE_AXES`` with the
    most distinct values, the earlier one on a tie.
    """
    rows = [row for row in rows if row.get("error") is None]
    varying = _varying(rows)
    if "sigma_F" in varying and "d" in varying:
        return plot_success_heatmap(rows, out_dir)
    candidates = [x for x in LINE_AXES if x in varying]
    if candidates:
        x = max(candidates, key=lambda column: (len({row.get(column) for row in rows}), -LINE_AXES.index(column)))
        return plot_against(rows, out_dir, x)
    LOG.info("No swept parameter to plot against")
    return []
