# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

import numpy as np

from bft.commands.tests import CommandBaseTestCase
from bft.errors import ConfigurationError
from bft.fields import CHANNELS, FieldState

SMALL = {"grid": 4, "hamiltonian": {"potential": {"variant": "cosine"}}}


class TestFloer(CommandBaseTestCase):
    def save_constant(self, name, q, d=1, grid=(4, 4, 4)):
        point = np.zeros((d, CHANNELS))
        point[:, 0] = q
        path = self.tempdir / name
        FieldState.constant(d, grid, point).save(path)
        return path

    def test_stationary_curve(self):
        config = self.write_config(SMALL)
        rest = self.save_constant("rest.bft", 0.0)

        result = self.run_command(
            "floer",
            "--config",
            str(config),
            "--from",
            str(rest),
            "--to",
            str(rest),
            "--S",
            "1",
            "--Ns",
            "9",
            "--save-slices",
            "--out",
            str(self.out),
        )

        self.assertEqual(0, result.exit_code)
        self.assertIn(
            "No cutoff radius configured; using rho = 3 from action cap 0",
            result.messages,
        )
        rows = self.read_csv("floer_report.csv")
        self.assertEqual(
            ["s", "action", "sup_odd", "residual_slice"], rows[0]
        )
        self.assertEqual(10, len(rows))
        self.assertEqual("-1", rows[1][0])
        self.assertEqual("1", rows[-1][0])
        self.assertTrue((self.out / "curve_slice_8.bft").is_file())
        manifest = self.read_manifest()
        self.assertEqual(
            {"sup-bound": True, "subsolution": True, "action-decrease": True},
            manifest["checks"],
        )
        self.assertTrue(manifest["converged"])
        self.assertEqual(3.0, manifest["rho"])

    def test_explicit_rho(self):
        config = self.write_config(SMALL)
        rest = self.save_constant("rest.bft", 0.5)

        result = self.run_command(
            "floer",
            "--config",
            str(config),
            "--from",
            str(rest),
            "--to",
            str(rest),
            "--Ns",
            "5",
            "--rho",
            "4",
            "--out",
            str(self.out),
        )

        self.assertEqual(0, result.exit_code)
        self.assertEqual(4.0, self.read_manifest()["rho"])

    def test_rho_must_exceed_one(self):
        rest = self.save_constant("rest.bft", 0.0)

        result = self.run_command(
            "floer",
            "--from",
            str(rest),
            "--to",
            str(rest),
            "--rho",
            "1",
            "--out",
            str(self.out),
        )

        self.assertEqual(2, result.exit_code)
        self.assertEqual(
            [ConfigurationError("--rho must exceed 1, got 1.0.")],
            result.errors,
        )

    def test_mismatched_snapshots(self):
        config = self.write_config(SMALL)
        a = self.save_constant("a.bft", 0.0)
        b = self.save_constant("b.bft", 0.0, grid=(4, 4, 6))

        result = self.run_command(
            "floer",
            "--config",
            str(config),
            "--from",
            str(a),
            "--to",
            str(b),
            "--out",
            str(self.out),
        )

        self.assertEqual(2, result.exit_code)
        self.assertIn("does not match", str(result.errors[0]))

    def test_missing_snapshot(self):
        missing = self.tempdir / "missing.bft"

        result = self.run_command(
            "floer",
            "--from",
            str(missing),
            "--to",
            str(missing),
            "--out",
            str(self.out),
        )

        self.assertEqual(2, result.exit_code)
        self.assertEqual(
            [ConfigurationError(f"Couldn't find snapshot {str(missing)!r}")],
            result.errors,
        )
