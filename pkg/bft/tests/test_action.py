# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

import numpy as np
from testtools import TestCase

from bft.action import (
    EQUATION_NAMES,
    action,
    action_H,
    action_quadratic_form,
    equation_residuals,
    l2_gradient,
    residual_norm,
)
from bft.fields import FieldState, grid_points, l2_inner
from bft.tests.fixtures import make_spec

GRID = (8, 8, 8)


def tone_field():
    """q = sin(2 pi t1), p1 = cos(2 pi t1)."""
    t1 = grid_points(GRID)[0]
    values = np.zeros((1, 8) + GRID)
    values[0, 0] = np.sin(2 * np.pi * t1)
    values[0, 1] = np.cos(2 * np.pi * t1)
    return FieldState(d=1, grid=GRID, values=values)


class TestAction(TestCase):
    def test_constant(self):
        Z = FieldState.constant(1, GRID, np.arange(8.0))
        self.assertAlmostEqual(0.0, action(Z), places=12)

    def test_tone(self):
        self.assertAlmostEqual(np.pi, action(tone_field()), places=12)

    def test_invariant_under_o_ij_shift(self):
        rng = np.random.default_rng(0)
        Z = FieldState.random_band_limited(1, GRID, rng)
        values = Z.values.copy()
        values[:, 4:7] += 0.37
        self.assertLess(abs(action(Z) - action(values)), 1e-12)

    def test_quadratic_form_oracle(self):
        rng = np.random.default_rng(1)
        for _ in range(5):
            Z = FieldState.random_band_limited(2, GRID, rng)
            self.assertLess(
                abs(action(Z) - action_quadratic_form(Z)), 1e-10
            )


class TestActionH(TestCase):
    def test_constant_at_potential_maximum(self):
        spec = make_spec("cosine", amplitudes=[1.0])
        Z = FieldState.zeros(1, GRID)
        self.assertAlmostEqual(-1 / (4 * np.pi**2), action_H(Z, spec))

    def test_zero_potential(self):
        spec = make_spec()
        Z = FieldState.constant(1, GRID, [0.3, 0, 0, 0, 0.1, 0.2, 0.4, 0])
        self.assertEqual(0.0, action_H(Z, spec))
        Z = tone_field()
        # H adds 1/2 |p1|^2 on top of the plain action
        self.assertAlmostEqual(np.pi - 0.25, action_H(Z, spec), places=12)


class TestGradient(TestCase):
    def test_constant_critical_points(self):
        spec = make_spec("cosine", amplitudes=[1.0])
        for q in (0.0, 0.5):
            Z = FieldState.constant(1, GRID, q * np.eye(8)[0])
            self.assertLess(residual_norm(Z, spec), 1e-12)

    def test_zero_potential_constants(self):
        spec = make_spec(d=2)
        point = np.zeros((2, 8))
        point[:, [0, 4, 5, 6]] = [[0.1, 0.2, 0.3, 0.4], [0.5, 0.6, 0.7, 0.8]]
        Z = FieldState.constant(2, GRID, point)
        self.assertEqual(0.0, residual_norm(Z, spec))

    def test_directional_derivative(self):
        rng = np.random.default_rng(2)
        spec = make_spec("cosine_pq", rho=2.5, amplitudes=[2.0])
        h = 1e-6
        for _ in range(20):
            Z = FieldState.random_band_limited(1, GRID, rng)
            Y = FieldState.random_band_limited(1, GRID, rng)
            fd = (
                action_H(Z.values + h * Y.values, spec)
                - action_H(Z.values - h * Y.values, spec)
            ) / (2 * h)
            directional = l2_inner(l2_gradient(Z, spec), Y.values)
            self.assertLess(
                abs(fd - directional), 1e-6 * max(1.0, abs(directional))
            )

    def test_equation_residuals(self):
        spec = make_spec()
        residuals = equation_residuals(tone_field(), spec)
        self.assertEqual(
            ("Q", "P1", "P2", "P3", "O23", "O31", "O12", "O123"),
            EQUATION_NAMES,
        )
        self.assertEqual(list(EQUATION_NAMES), list(residuals))
        # J_del Z has q = 2 pi sin and p1 = 2 pi cos; grad H has p1 = cos
        self.assertAlmostEqual(
            2 * np.pi / np.sqrt(2), residuals["Q"], places=10
        )
        self.assertAlmostEqual(
            (2 * np.pi - 1) / np.sqrt(2), residuals["P1"], places=10
        )
        self.assertAlmostEqual(0.0, residuals["O123"], places=10)
