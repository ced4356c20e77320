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
"""Test the particle updates."""

import unittest
import warnings

import numpy as np
import pytest

from pygkbo.dynamics import DynamicsConfig, diffusion_action, ga_step, gkbo_step, kbo_step, step
from pygkbo.swarm import RngStream, Swarm
from pygkbo.test.utils import FixedNormalStream, create_sphere_objective, create_swarm
from pygkbo.utils.errors import ConfigurationError, DimensionError, ParameterWarning


class TestDiffusionAction(unittest.TestCase):
    """Test the diffusion matrices."""

    def test_anisotropic(self):
        """Test the componentwise product."""
        np.testing.assert_array_equal(diffusion_action("anisotropic", [2.0, 0.0], [0.0, 0.0], [1.0, 1.0]),
                                      [2.0, 0.0])

    def test_isotropic(self):
        """Test the scaling by the Euclidean distance."""
        np.testing.assert_array_equal(diffusion_action("isotropic", [3.0, 4.0], [0.0, 0.0], [1.0, 0.0]),
                                      [5.0, 0.0])

    def test_vanishes_at_consensus(self):
        """Test that both kinds vanish at the consensus point."""
        xi = np.random.default_rng(0).normal(size=(4, 3))
        x = np.tile([0.5, -1.0, 2.0], (4, 1))
        for kind in ("isotropic", "anisotropic"):
            np.testing.assert_array_equal(diffusion_action(kind, [0.5, -1.0, 2.0], x, xi), np.zeros((4, 3)))

    def test_rows(self):
        """Test that the isotropic norm is taken per particle."""
        out = diffusion_action("isotropic", [0.0, 0.0], [[3.0, 4.0], [0.0, 1.0]], [[1.0, 1.0], [2.0, 0.0]])
        np.testing.assert_array_equal(out, [[5.0, 5.0], [2.0, 0.0]])

    def test_errors(self):
        """Test unknown kinds and shape mismatches."""
        with self.assertRaises(ConfigurationError):
            diffusion_action("radial", [0.0], [1.0], [1.0])
        with self.assertRaises(DimensionError):
            diffusion_action("isotropic", [0.0, 0.0], [1.0, 1.0], [1.0])


class TestDynamicsConfig(unittest.TestCase):
    """Test the parameter checks."""

    def test_defaults_are_valid(self):
        """Test that the defaults pass without warnings."""
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            DynamicsConfig().validate()

    def test_invalid(self):
        """Test the rejected values."""
        for kwargs in ({"method": "pso"}, {"diffusion": "radial"}, {"consensus": "best"}, {"nu_F": 0.0},
                       {"sigma_F": -1.0}, {"alpha": 0.0}, {"epsilon": 0.0}, {"epsilon": 1.5},
                       {"interaction_prob": 0.0}):
            with self.assertRaises(ConfigurationError):
                DynamicsConfig(**kwargs).validate()

    def test_overshoot_warning(self):
        """Test the warning for relaxation factors above one."""
        with pytest.warns(ParameterWarning):
            DynamicsConfig(nu_L=20.0).validate()
        with pytest.warns(ParameterWarning):
            DynamicsConfig(method="kbo", nu_F=20.0).validate()


class TestGKBOStep(unittest.TestCase):
    """Test the leader/follower update."""

    def setUp(self):
        self.objective = create_sphere_objective(1)
        self.cfg = DynamicsConfig(nu_F=1.0, nu_L=10.0, epsilon=0.1, sigma_F=0.0)

    def test_leader_relaxes(self):
        """Test the exact leader relaxation onto the consensus point."""
        swarm = create_swarm([0.0], leaders=[0])
        new = gkbo_step(swarm, self.objective, self.cfg, RngStream(0), xhat=np.array([1.0]))
        np.testing.assert_array_equal(new.positions, [[1.0]])

    def test_follower_uses_updated_leader(self):
        """Test that followers are attracted by the post-update leader position."""
        swarm = create_swarm([0.0, 0.0], leaders=[0])
        new = gkbo_step(swarm, self.objective, self.cfg, RngStream(0), xhat=np.array([1.0]))
        np.testing.assert_allclose(new.positions[:, 0], [1.0, 0.1], rtol=1e-15)
        np.testing.assert_array_equal(new.labels, swarm.labels)

    def test_frozen_consensus_leader_contraction(self):
        """Test that leaders contract by 1 - nu_L eps towards a fixed consensus point."""
        objective = create_sphere_objective(2)
        cfg = DynamicsConfig(nu_L=4.0, epsilon=0.1, sigma_F=0.0)
        xhat = np.array([1.0, -2.0])
        swarm = create_swarm([[0.0, 0.0], [3.0, 5.0], [-4.0, 1.0]], leaders=[0, 1, 2])
        rng = RngStream(0)
        for _ in range(10):
            new = gkbo_step(swarm, objective, cfg, rng, xhat=xhat)
            np.testing.assert_allclose(np.abs(new.positions - xhat), 0.6 * np.abs(swarm.positions - xhat),
                                       rtol=1e-12)
            swarm = new

    def test_leaders_do_not_diffuse(self):
        """Test that leader moves are deterministic for any sigma_F."""
        swarm = create_swarm([0.0, 3.0, -2.0], leaders=[0])
        cfg = DynamicsConfig(nu_L=10.0, epsilon=0.1, sigma_F=4.0)
        new = gkbo_step(swarm, self.objective, cfg, RngStream(3), xhat=np.array([1.0]))
        self.assertEqual(new.positions[0, 0], 1.0)

    def test_no_leaders(self):
        """Test that followers only diffuse without leaders."""
        swarm = create_swarm([0.0, 2.0, 5.0])
        new = gkbo_step(swarm, self.objective, self.cfg, RngStream(0), xhat=np.array([1.0]))
        np.testing.assert_array_equal(new.positions, swarm.positions)

    def test_noise(self):
        """Test the follower noise with prescribed normals."""
        swarm = create_swarm([0.0, 0.0], leaders=[0])
        cfg = DynamicsConfig(nu_F=1.0, nu_L=4.0, epsilon=0.25, sigma_F=1.0)
        rng = FixedNormalStream(RngStream(0), [1.0])
        new = gkbo_step(swarm, self.objective, cfg, rng, xhat=np.array([2.0]))
        # leader: 0 + 4 * 0.25 * 2, follower: 0 + 0.25 * 2 + 0.5 * 2 * 1
        np.testing.assert_allclose(new.positions[:, 0], [2.0, 1.5], rtol=1e-15)


class TestKBOStep(unittest.TestCase):
    """Test the consensus-based update."""

    def setUp(self):
        self.objective = create_sphere_objective(1)

    def test_single_particle(self):
        """Test that a lone particle is its own consensus point and stays."""
        swarm = Swarm([[0.7]])
        new = kbo_step(swarm, self.objective, DynamicsConfig(method="kbo"), RngStream(0))
        np.testing.assert_array_equal(new.positions, swarm.positions)

    def test_relaxation(self):
        """Test the drift towards the consensus point."""
        cfg = DynamicsConfig(method="kbo", nu_F=1.0, epsilon=0.1, sigma_F=0.0)
        new = kbo_step(Swarm([[0.0]]), self.objective, cfg, RngStream(0), xhat=np.array([2.0]))
        np.testing.assert_allclose(new.positions, [[0.2]], rtol=1e-15)

    def test_frozen_consensus_contraction(self):
        """Test the geometric contraction towards a fixed consensus point."""
        cfg = DynamicsConfig(method="kbo", nu_F=1.0, epsilon=0.1, sigma_F=0.0)
        xhat = np.array([2.0, -1.0])
        objective = create_sphere_objective(2)
        swarm = Swarm([[0.0, 0.0], [5.0, 3.0]])
        rng = RngStream(0)
        for _ in range(10):
            new = kbo_step(swarm, objective, cfg, rng, xhat=xhat)
            np.testing.assert_allclose(np.abs(new.positions - xhat), 0.9 * np.abs(swarm.positions - xhat),
                                       rtol=1e-12)
            swarm = new

    def test_anisotropic_axis_without_noise(self):
        """Test that a coordinate already at the consensus point does not move."""
        objective = create_sphere_objective(2)
        cfg = DynamicsConfig(method="kbo", sigma_F=4.0)
        new = kbo_step(Swarm([[1.0, 3.0]]), objective, cfg, RngStream(1), xhat=np.array([1.0, 1.0]))
        self.assertEqual(new.positions[0, 0], 1.0)
        self.assertNotEqual(new.positions[0, 1], 3.0)

    def test_noise(self):
        """Test the noise term with prescribed normals."""
        cfg = DynamicsConfig(method="kbo", nu_F=1.0, epsilon=0.25, sigma_F=1.0)
        rng = FixedNormalStream(RngStream(0), [1.0])
        new = kbo_step(Swarm([[0.0]]), self.objective, cfg, rng, xhat=np.array([2.0]))
        np.testing.assert_allclose(new.positions, [[1.5]], rtol=1e-15)

    def test_inactive_particles(self):
        """Test that particles left out of the interaction stay put."""
        cfg = DynamicsConfig(method="kbo", sigma_F=4.0, interaction_prob=1e-12)
        swarm = Swarm([[0.0], [2.0], [4.0]])
        new = kbo_step(swarm, self.objective, cfg, RngStream(0))
        np.testing.assert_array_equal(new.positions, swarm.positions)

    def test_dimension_mismatch(self):
        """Test that a swarm of the wrong dimension is rejected."""
        with self.assertRaises(DimensionError):
            kbo_step(Swarm([[0.0, 1.0]]), self.objective, DynamicsConfig(method="kbo"), RngStream(0))


class TestGAStep(unittest.TestCase):
    """Test the genetic-algorithm update."""

    def setUp(self):
        self.objective = create_sphere_objective(2)

    def test_certain_jump(self):
        """Test that all children land on the only parent."""
        cfg = DynamicsConfig(method="ga", nu_F=10.0, epsilon=0.1, sigma_F=0.0)
        swarm = create_swarm([[2.0, -1.0], [0.0, 0.0], [5.0, 5.0], [-3.0, 1.0]], leaders=[0])
        for modified in (False, True):
            new = ga_step(swarm, self.objective, cfg, RngStream(0), modified=modified)
            np.testing.assert_array_equal(new.positions, np.tile([2.0, -1.0], (4, 1)))

    def test_no_jump_no_mutation(self):
        """Test that nothing moves without jumps and noise."""
        cfg = DynamicsConfig(method="ga", nu_F=0.0, epsilon=0.1, sigma_F=0.0)
        swarm = create_swarm([[2.0, -1.0], [0.0, 0.0], [5.0, 5.0]], leaders=[0])
        new = ga_step(swarm, self.objective, cfg, RngStream(0))
        np.testing.assert_array_equal(new.positions, swarm.positions)

    def test_parents_stay(self):
        """Test that parents never move."""
        cfg = DynamicsConfig(method="ga", sigma_F=4.0)
        swarm = create_swarm([[2.0, -1.0], [0.0, 0.0], [5.0, 5.0]], leaders=[0, 2])
        new = ga_step(swarm, self.objective, cfg, RngStream(5))
        np.testing.assert_array_equal(new.positions[[0, 2]], swarm.positions[[0, 2]])

    def test_uniform_parent_choice(self):
        """Test that the expected child position is the mean of two parents."""
        n = 100000
        cfg = DynamicsConfig(method="ga", nu_F=10.0, epsilon=0.1, sigma_F=0.0)
        swarm = create_swarm(np.concatenate([[1.0, 3.0], np.zeros(n)]), leaders=[0, 1])
        new = ga_step(swarm, create_sphere_objective(1), cfg, RngStream(11))
        children = new.positions[2:, 0]
        self.assertTrue(np.all((children == 1.0) | (children == 3.0)))
        # each child is 1 or 3 with probability 1/2, so the standard error is 1/sqrt(n)
        self.assertLess(abs(children.mean() - 2.0), 3.0 / np.sqrt(n))

    def test_mutation_without_parents(self):
        """Test that children only mutate without parents."""
        cfg = DynamicsConfig(method="ga", epsilon=0.25, sigma_F=2.0)
        rng = FixedNormalStream(RngStream(0), [1.0, -1.0])
        new = ga_step(Swarm([[0.0, 0.0]]), self.objective, cfg, rng)
        np.testing.assert_array_equal(new.positions, [[1.0, -1.0]])


@pytest.mark.parametrize("method", ["gkbo", "kbo", "ga", "ga_modified"])
def test_fixed_point(method):
    """Test that a collapsed swarm without noise is a fixed point."""
    objective = create_sphere_objective(3)
    swarm = create_swarm(np.tile([0.3, -1.7, 2.9], (6, 1)), leaders=[1, 4])
    cfg = DynamicsConfig(method=method, sigma_F=0.0)
    new = step(swarm, objective, cfg, RngStream(0))
    np.testing.assert_allclose(new.positions, swarm.positions, rtol=0, atol=1e-12)


@pytest.mark.parametrize("method", ["gkbo", "kbo", "ga", "ga_modified"])
def test_reproducible(method):
    """Test that equal seeds give bit-identical steps."""
    objective = create_sphere_objective(4)
    positions = np.random.default_rng(0).uniform(-2.0, 0.0, (20, 4))
    swarm = create_swarm(positions, leaders=range(0, 20, 3))
    cfg = DynamicsConfig(method=method)
    first = step(swarm, objective, cfg, RngStream(42))
    second = step(swarm, objective, cfg, RngStream(42))
    assert first == second
    assert first.n == swarm.n
    np.testing.assert_array_equal(first.labels, swarm.labels)


def test_unknown_method():
    """Test the dispatch error."""
    with pytest.raises(ConfigurationError):
        step(Swarm([[0.0, 0.0]]), create_sphere_objective(2), DynamicsConfig(method="pso"), RngStream(0))


def test_step_keeps_size_and_labels(sphere_objective, rng):
    """Test that position updates never touch labels or the particle count."""
    swarm = create_swarm(np.random.default_rng(0).uniform(-2.0, 0.0, (12, 2)), leaders=[0, 5, 7])
    for method in ("gkbo", "kbo", "ga", "ga_modified"):
        new = step(swarm, sphere_objective, DynamicsConfig(method=method), rng)
        assert new.n == 12
        np.testing.assert_array_equal(new.labels, swarm.labels)
