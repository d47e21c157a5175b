# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from pathlib import Path

import numpy as np
from fixtures import TempDir
from testtools import TestCase

from bft.fields import (
    FieldState,
    combine,
    even_odd_split,
    family_distance,
    from_spectral,
    grid_points,
    l2_norm,
    to_spectral,
)
from bft.tests.fixtures import mode_field

GRID = (8, 8, 8)


class TestFieldState(TestCase):
    def test_rejects_odd_grid(self):
        self.assertRaises(ValueError, FieldState.zeros, 1, (8, 7, 8))

    def test_rejects_bad_shape(self):
        self.assertRaises(
            ValueError,
            FieldState,
            d=1,
            grid=GRID,
            values=np.zeros((1, 7) + GRID),
        )

    def test_rejects_non_finite(self):
        values = np.zeros((1, 8) + GRID)
        values[0, 0, 0, 0, 0] = np.inf
        self.assertRaises(
            ValueError, FieldState, d=1, grid=GRID, values=values
        )

    def test_values_are_read_only(self):
        Z = FieldState.zeros(1, GRID)
        self.assertFalse(Z.values.flags.writeable)

    def test_grid_points(self):
        t = grid_points((4, 2, 2))
        self.assertEqual((3, 4, 2, 2), t.shape)
        self.assertEqual([0.0, 0.25, 0.5, 0.75], t[0, :, 0, 0].tolist())

    def test_canonicalize(self):
        point = np.array([2.3, 0.0, 0.0, 0.0, -0.75, 1.0, 0.0, 5.0])
        Z = FieldState.constant(1, GRID, point).canonicalize()
        np.testing.assert_allclose(
            [0.3, 0.0, 0.0, 0.0, 0.25, 0.0, 0.0, 5.0],
            Z.values[0, :, 0, 0, 0],
            atol=1e-14,
        )

    def test_canonicalize_keeps_differences(self):
        rng = np.random.default_rng(3)
        Z = FieldState.random_band_limited(1, GRID, rng, amplitude=3.0)
        shifted = Z.canonicalize()
        np.testing.assert_allclose(
            np.diff(Z.values, axis=-1),
            np.diff(shifted.values, axis=-1),
            atol=1e-12,
        )

    def test_band_limited(self):
        rng = np.random.default_rng(4)
        Z = FieldState.random_band_limited(2, GRID, rng, kmax=1)
        k = to_spectral(Z).wavenumbers
        outside = np.any(np.abs(k) > 1, axis=0)
        self.assertLess(
            np.abs(to_spectral(Z).coefficients[..., outside]).max(), 1e-12
        )
        self.assertAlmostEqual(1.0, np.sqrt(np.mean(Z.values**2)))

    def test_band_limit_must_fit(self):
        rng = np.random.default_rng(0)
        self.assertRaises(
            ValueError, FieldState.random_band_limited, 1, GRID, rng, 1.0, 4
        )

    def test_sup_and_l2_of_odd_part(self):
        point = np.zeros(8)
        point[1] = 1.0
        point[7] = 1.0
        Z = FieldState.constant(1, GRID, point)
        self.assertAlmostEqual(np.sqrt(2), Z.sup_odd())
        self.assertAlmostEqual(np.sqrt(2), Z.odd_l2())


class TestEvenOddSplit(TestCase):
    def test_q_only_has_no_odd_part(self):
        Z = FieldState.constant(1, GRID, np.eye(8)[0])
        even, odd = even_odd_split(Z)
        self.assertEqual(0.0, np.abs(odd).max())
        self.assertEqual(1.0, np.abs(even).max())

    def test_pointwise_norms_add_up(self):
        rng = np.random.default_rng(5)
        Z = FieldState.random_band_limited(1, GRID, rng)
        even, odd = even_odd_split(Z)
        np.testing.assert_allclose(
            np.sum(Z.values**2, axis=1),
            np.sum(even**2, axis=1) + np.sum(odd**2, axis=1),
        )

    def test_unit_p1(self):
        Z = FieldState.constant(1, GRID, np.eye(8)[1])
        _, odd = even_odd_split(Z)
        self.assertAlmostEqual(1.0, l2_norm(odd))

    def test_combine_inverts_split(self):
        rng = np.random.default_rng(6)
        Z = FieldState.random_band_limited(2, GRID, rng)
        np.testing.assert_array_equal(
            Z.values, combine(*even_odd_split(Z)).values
        )


class TestSpectral(TestCase):
    def test_constant(self):
        S = to_spectral(FieldState.constant(1, GRID, np.eye(8)[0]))
        self.assertAlmostEqual(1.0, S.coefficient((0, 0, 0)).real)
        S.coefficients[0, 0, 0, 0, 0] = 0.0
        self.assertLess(np.abs(S.coefficients).max(), 1e-14)

    def test_pure_tone(self):
        S = to_spectral(mode_field(GRID, 0))
        self.assertAlmostEqual(-0.5j, S.coefficient((1, 0, 0)))
        self.assertAlmostEqual(0.5j, S.coefficient((-1, 0, 0)))

    def test_round_trip(self):
        rng = np.random.default_rng(7)
        Z = FieldState.random_band_limited(1, (16, 16, 16), rng)
        back = from_spectral(to_spectral(Z))
        self.assertLess(np.abs(back.values - Z.values).max(), 1e-12)


class TestFamilyDistance(TestCase):
    def setUp(self):
        super().setUp()
        rng = np.random.default_rng(8)
        self.Z = FieldState.random_band_limited(1, GRID, rng)

    def shifted(self, channel, amount):
        values = self.Z.values.copy()
        values[:, channel] += amount
        return self.Z.with_values(values)

    def test_o_ij_shift(self):
        self.assertAlmostEqual(
            0.0, family_distance(self.Z, self.shifted(4, 0.37))
        )

    def test_integer_q_shift(self):
        self.assertAlmostEqual(
            0.0, family_distance(self.Z, self.shifted(0, 1.0))
        )

    def test_constant_solutions(self):
        zero = FieldState.zeros(1, GRID)
        half = FieldState.constant(1, GRID, 0.5 * np.eye(8)[0])
        self.assertAlmostEqual(0.5, family_distance(zero, half))

    def test_odd_channels_compared_directly(self):
        self.assertAlmostEqual(
            0.25, family_distance(self.Z, self.shifted(1, 0.25))
        )

    def test_pseudometric(self):
        rng = np.random.default_rng(9)
        fields = [
            FieldState.random_band_limited(1, GRID, rng) for _ in range(3)
        ]
        a, b, c = fields
        self.assertAlmostEqual(family_distance(a, b), family_distance(b, a))
        self.assertLessEqual(
            family_distance(a, c),
            family_distance(a, b) + family_distance(b, c) + 1e-10,
        )

    def test_shape_mismatch(self):
        self.assertRaises(
            ValueError,
            family_distance,
            self.Z,
            FieldState.zeros(2, GRID),
        )


class TestSnapshots(TestCase):
    def setUp(self):
        super().setUp()
        self.tempdir = Path(self.useFixture(TempDir()).path)

    def test_save_load(self):
        rng = np.random.default_rng(10)
        Z = FieldState.random_band_limited(2, (4, 6, 8), rng, kmax=1)
        path = self.tempdir / "z.bft"
        Z.save(path)

        self.assertTrue(path.read_bytes().startswith(b"BFT1 2 4 6 8\n"))
        loaded = FieldState.load(path)
        self.assertEqual((4, 6, 8), loaded.grid)
        np.testing.assert_array_equal(Z.values, loaded.values)

    def test_bad_header(self):
        path = self.tempdir / "z.bft"
        path.write_bytes(b"BFT2 1 2 2 2\n")
        self.assertRaisesRegex(
            ValueError, "is not a BFT1 snapshot", FieldState.load, path
        )

    def test_truncated_payload(self):
        path = self.tempdir / "z.bft"
        FieldState.zeros(1, (2, 2, 2)).save(path)
        path.write_bytes(path.read_bytes()[:-8])
        self.assertRaisesRegex(
            ValueError, "payload bytes", FieldState.load, path
        )

    def test_export_csv(self):
        Z = FieldState.constant(1, (2, 2, 2), np.arange(8.0))
        Z.export_csv(self.tempdir / "csv")
        lines = (self.tempdir / "csv" / "p1_1.csv").read_text().splitlines()
        self.assertEqual("i1,i2,i3,t1,t2,t3,value", lines[0])
        self.assertEqual(9, len(lines))
        self.assertEqual("0,0,0,0,0,0,1", lines[1])
