# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

import numpy as np
from testtools import TestCase

from bft.algebra import (
    PointTangent,
    basis_labels,
    check_clifford,
    check_hyperkahler,
    extract_K,
    generate_J,
    get_clifford_system,
    omega,
    omega_nondegenerate,
    theta,
    xi,
)
from bft.errors import UnsupportedError

J1 = [
    [0, -1, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, -1, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, -1],
    [0, 0, 0, -1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
]
J2 = [
    [0, 0, -1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 1, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, -1],
    [0, -1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 1, 0, 0],
]
J3 = [
    [0, 0, 0, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, -1, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, -1],
    [0, 0, 0, 0, 0, 0, 1, 0],
]


def unit(index, size=8):
    vector = np.zeros(size)
    vector[index] = 1.0
    return vector


class TestGenerateJ(TestCase):
    def test_n1_is_the_standard_complex_structure(self):
        (J,) = generate_J(1)
        self.assertEqual([[0, -1], [1, 0]], J.tolist())

    def test_n3_matches_printed_matrices(self):
        J = generate_J(3)
        self.assertEqual(J1, J[0].tolist())
        self.assertEqual(J2, J[1].tolist())
        self.assertEqual(J3, J[2].tolist())

    def test_derivative_of_q_lands_in_p1(self):
        J = generate_J(3)[0]
        self.assertEqual([0, 1, 0, 0, 0, 0, 0, 0], J[:, 0].tolist())

    def test_out_of_range(self):
        self.assertRaises(ValueError, generate_J, 0)
        self.assertRaises(ValueError, generate_J, 9)

    def test_labels(self):
        self.assertEqual(
            ["q", "p1", "p2", "p3", "o23", "o31", "o12", "o123"],
            basis_labels(3),
        )


class TestCheckClifford(TestCase):
    def test_exact_identities(self):
        for n in range(1, 6):
            report = check_clifford(get_clifford_system(n))
            self.assertEqual(
                {
                    "square": 0,
                    "anticommutation": 0,
                    "antisymmetry": 0,
                    "parity": 0,
                },
                report,
                f"n = {n}",
            )

    def test_entries_are_signed_units(self):
        for J in generate_J(4):
            self.assertTrue(set(np.unique(J)) <= {-1, 0, 1})

    def test_hyperkahler_structures(self):
        self.assertEqual(
            {"square": 0, "product": 0},
            check_hyperkahler(get_clifford_system(3)),
        )

    def test_target_dimension_must_be_positive(self):
        self.assertRaises(ValueError, get_clifford_system, 3, 0)


class TestExtractK(TestCase):
    def test_printed_matrices(self):
        K = extract_K(get_clifford_system(3))
        self.assertEqual(
            [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]],
            K[0].tolist(),
        )
        self.assertEqual(
            [[0, 0, -1, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]],
            K[1].tolist(),
        )
        self.assertEqual(
            [[0, 0, 0, -1], [0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0]],
            K[2].tolist(),
        )

    def test_antisymmetric_and_degenerate(self):
        for K in extract_K(get_clifford_system(3)):
            np.testing.assert_array_equal(np.zeros((4, 4)), K + K.T)
            self.assertEqual(2, np.linalg.matrix_rank(K @ K))

    def test_only_for_n3(self):
        self.assertRaises(
            UnsupportedError, extract_K, get_clifford_system(2)
        )

    def test_ranks(self):
        report = omega_nondegenerate(get_clifford_system(3))
        self.assertEqual([8, 8, 8], report["J_ranks"])
        self.assertEqual([2, 2, 2], report["K_ranks"])
        self.assertEqual(0, report["K_joint_kernel"])


class TestForms(TestCase):
    def setUp(self):
        super().setUp()
        self.system = get_clifford_system(3)

    def test_omega_pairs_p1_with_q(self):
        self.assertEqual(-1.0, omega(self.system, 1, unit(0), unit(1)))
        self.assertEqual(1.0, omega(self.system, 1, unit(1), unit(0)))

    def test_omega_pairs_o123_with_o31(self):
        self.assertEqual(1.0, omega(self.system, 2, unit(7), unit(5)))

    def test_omega_antisymmetric(self):
        rng = np.random.default_rng(0)
        for i in (1, 2, 3):
            v, w = rng.standard_normal((2, 8))
            self.assertEqual(
                omega(self.system, i, v, w), -omega(self.system, i, w, v)
            )
            self.assertEqual(0.0, omega(self.system, i, v, v))

    def test_omega_index_out_of_range(self):
        self.assertRaises(ValueError, omega, self.system, 4, unit(0), unit(1))

    def test_xi_reads_off_odd_coordinates(self):
        base = np.array([9.0, 1.0, 2.0, 3.0, 9.0, 9.0, 9.0, 4.0])
        self.assertEqual(
            [0.0, 1.0, 2.0, 3.0, 0.0, 0.0, 0.0, 4.0],
            xi(self.system, base).ravel().tolist(),
        )
        np.testing.assert_array_equal(
            np.zeros((1, 8)), xi(self.system, unit(0) + unit(4))
        )

    def test_theta(self):
        base = 2 * unit(1)
        self.assertEqual(
            2.0, theta(self.system, 1, PointTangent(base, unit(0)))
        )
        base = 5 * unit(7)
        self.assertEqual(
            5.0, theta(self.system, 1, PointTangent(base, unit(4)))
        )
        self.assertEqual(
            0.0, theta(self.system, 2, PointTangent(unit(0), unit(3)))
        )

    def test_theta_is_contraction_with_xi(self):
        rng = np.random.default_rng(1)
        for i in (1, 2, 3):
            base, vector = rng.standard_normal((2, 8))
            pt = PointTangent(base, vector)
            self.assertAlmostEqual(
                omega(self.system, i, xi(self.system, base), vector),
                theta(self.system, i, pt),
                places=14,
            )

    def test_point_tangent_shapes(self):
        self.assertRaises(ValueError, PointTangent, np.zeros(8), np.zeros(4))
        self.assertRaises(
            ValueError, PointTangent, np.full(8, np.nan), np.zeros(8)
        )
