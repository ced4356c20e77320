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
"""Test the summary plots."""

import os
import unittest

import numpy as np

try:
    import matplotlib
    matplotlib.use('Agg')
except ImportError:
    matplotlib = None  # Postpone fail to individual tests

from pygkbo.plot import plot_against, plot_success_heatmap, plot_summary, split_series, success_table


def _row(sigma_F, d, rate, strategy="random", error=None, p_bar=0.5):
    return {"experiment_id": "exp", "method": "gkbo", "strategy": strategy, "consensus": "all", "sigma_F": sigma_F,
            "d": d, "p_bar": p_bar, "success_rate": rate, "iter_mean": 1000.0 * rate, "iter_min": 900.0 * rate,
            "iter_max": 1100.0 * rate, "acc_mean": 1.0 - rate, "acc_median": 0.5 - rate / 2, "error": error}


class TestTables(unittest.TestCase):
    """Test the plotted data."""

    def test_success_table(self):
        """Test the heatmap grid with a missing cell."""
        rows = [_row(4.0, 1, 1.0), _row(5.0, 1, 0.5), _row(4.0, 20, 0.25)]
        xs, ys, table = success_table(rows, "sigma_F", "d")
        self.assertEqual((xs, ys), ([4.0, 5.0], [1, 20]))
        np.testing.assert_array_equal(table, [[1.0, 0.5], [0.25, np.nan]])

    def test_split_series(self):
        """Test grouping by the parameters that are not plotted."""
        rows = [_row(4.0, 1, 1.0), _row(4.0, 1, 0.5, "weighted"), _row(5.0, 1, 0.0)]
        series = split_series(rows, exclude=("sigma_F",))
        self.assertEqual([label for label, _ in series], ["strategy=random", "strategy=weighted"])
        self.assertEqual(len(series[0][1]), 2)
        self.assertEqual(split_series(rows[:1]), [("", rows[:1])])


@unittest.skipIf(matplotlib is None, "matplotlib is not available")
class TestPlots(unittest.TestCase):
    """Test writing the figures."""

    def setUp(self):
        import tempfile
        self._tmp = tempfile.TemporaryDirectory()
        self.out_dir = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def test_heatmap(self):
        """Test the heatmap files and their data."""
        rows = [_row(s, d, s / 10.0) for s in (4.0, 5.0) for d in (1, 5, 20)]
        written = plot_success_heatmap(rows, self.out_dir)
        svg = os.path.join(self.out_dir, "success_sigma_F_d.svg")
        self.assertEqual(written, [svg, svg[:-4] + ".txt"])
        np.testing.assert_allclose(np.loadtxt(svg[:-4] + ".txt"), [[0.4, 0.5]] * 3)

    def test_heatmap_per_series(self):
        """Test that every other parameter combination gets its own heatmap."""
        rows = [_row(s, d, 0.5, strategy) for s in (4.0, 5.0) for d in (1, 5) for strategy in ("random", "mixed")]
        written = plot_success_heatmap(rows, self.out_dir)
        self.assertEqual(len(written), 4)
        self.assertTrue(os.path.exists(os.path.join(self.out_dir, "success_sigma_F_d_1.svg")))

    def test_against(self):
        """Test the line plots and their data."""
        rows = [_row(s, 20, s / 10.0, strategy) for s in (1.0, 2.0, 3.0) for strategy in ("random", "weighted")]
        written = plot_against(rows, self.out_dir, "sigma_F")
        self.assertEqual(len(written), 6)
        data = np.loadtxt(os.path.join(self.out_dir, "success_rate_vs_sigma_F.txt"), delimiter="\t")
        np.testing.assert_allclose(data, [[1.0, 0.1, 0.1], [2.0, 0.2, 0.2], [3.0, 0.3, 0.3]])
        iterations = np.loadtxt(os.path.join(self.out_dir, "iterations_vs_sigma_F.txt"), delimiter="\t")
        np.testing.assert_allclose(iterations[0], [1.0, 100.0, 90.0, 110.0, 100.0, 90.0, 110.0])
        accuracy = np.loadtxt(os.path.join(self.out_dir, "accuracy_vs_sigma_F.txt"), delimiter="\t")
        np.testing.assert_allclose(accuracy[2], [3.0, 0.7, 0.35, 0.7, 0.35])
        with open(os.path.join(self.out_dir, "accuracy_vs_sigma_F.txt")) as fd:
            self.assertIn("strategy=random acc_median", fd.readline())

    def test_against_infinite_accuracy(self):
        """Test that diverged points are kept in the data and left out of the figure."""
        rows = [_row(s, 20, 0.0) for s in (1.0, 2.0)]
        rows[1]["acc_mean"] = float("inf")
        plot_against(rows, self.out_dir, "sigma_F")
        accuracy = np.loadtxt(os.path.join(self.out_dir, "accuracy_vs_sigma_F.txt"), delimiter="\t")
        self.assertEqual(accuracy[1, 1], np.inf)

    def test_summary_dispatch(self):
        """Test the choice of plot from the varying parameters."""
        heat = [_row(s, d, 0.5) for s in (4.0, 5.0) for d in (1, 5)]
        self.assertTrue(plot_summary(heat, self.out_dir)[0].endswith("success_sigma_F_d.svg"))
        lines = [_row(4.0, d, 0.5) for d in (1, 5, 10)]
        self.assertTrue(plot_summary(lines, self.out_dir)[0].endswith("success_rate_vs_d.svg"))
        self.assertEqual(plot_summary([_row(4.0, 1, 0.5)], self.out_dir), [])
        many_p_bar = [_row(s, 1, 0.5, p_bar=p) for s in (4.0, 5.0) for p in (0.0, 0.5, 1.0)]
        self.assertTrue(plot_summary(many_p_bar, self.out_dir)[0].endswith("success_rate_vs_p_bar.svg"))

    def test_summary_skips_errors(self):
        """Test that invalid grid points are not plotted."""
        rows = [_row(4.0, 1, 0.5), _row(5.0, 1, 0.0, error="bad")]
        self.assertEqual(plot_summary(rows, self.out_dir), [])
