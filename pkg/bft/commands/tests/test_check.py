# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from bft.commands.tests import CommandBaseTestCase
from bft.errors import ConfigurationError

SUITES = [
    "square",
    "parity",
    "self-adjoint",
    "hk-0",
    "hk-1",
    "gradient-fd",
    "symbol-K",
    "symbol-J",
]


class TestCheck(CommandBaseTestCase):
    def test_default_hamiltonian(self):
        result = self.run_command(
            "check",
            "--samples",
            "2",
            "--kmax",
            "1",
            "--out",
            str(self.out),
        )

        self.assertEqual(0, result.exit_code)
        rows = self.read_csv("check_report.csv")
        self.assertEqual(
            ["suite", "sample", "deviation", "tolerance", "passed"], rows[0]
        )
        self.assertEqual(6 * 2 + 2, len(rows) - 1)
        self.assertEqual({"1"}, {row[4] for row in rows[1:]})
        self.assertEqual(["symbol-K", "-1", "2", "2", "1"], rows[-2])
        self.assertEqual(["symbol-J", "-1", "0", "0", "1"], rows[-1])
        manifest = self.read_manifest()
        self.assertEqual(set(SUITES), set(manifest["checks"]))
        self.assertTrue(all(manifest["checks"].values()))
        self.assertEqual(2, manifest["samples"])
        self.assertEqual(0, manifest["seed"])

    def test_config_and_overrides(self):
        config = self.write_config(
            {"hamiltonian": {"potential": {"variant": "cosine"}}, "seed": 4}
        )

        result = self.run_command(
            "check",
            "--config",
            str(config),
            "--grid",
            "4",
            "--d",
            "2",
            "--samples",
            "1",
            "--kmax",
            "1",
            "--plotdata",
            "--out",
            str(self.out),
        )

        self.assertEqual(0, result.exit_code)
        self.assertEqual(4, self.read_manifest()["seed"])
        lines = (self.out / "check_report.dat").read_text().splitlines()
        self.assertEqual("# " + " ".join(SUITES[:6]), lines[0])
        self.assertEqual(2, len(lines))

    def test_seed_changes_samples(self):
        self.run_command(
            "check", "--samples", "1", "--kmax", "1", "--out", str(self.out)
        )
        first = (self.out / "check_report.csv").read_text()
        self.run_command(
            "check",
            "--samples",
            "1",
            "--kmax",
            "1",
            "--seed",
            "9",
            "--out",
            str(self.out),
        )
        self.assertNotEqual(
            first, (self.out / "check_report.csv").read_text()
        )

    def test_invalid_samples(self):
        result = self.run_command(
            "check", "--samples", "0", "--out", str(self.out)
        )

        self.assertEqual(2, result.exit_code)
        self.assertEqual(
            [ConfigurationError("--samples and --kmax must be positive.")],
            result.errors,
        )
        self.assertFalse(self.out.exists())

    def test_odd_grid(self):
        result = self.run_command(
            "check", "--grid", "5", "--out", str(self.out)
        )

        self.assertEqual(2, result.exit_code)
        self.assertIn(
            "grid sizes must be positive and even", str(result.errors[0])
        )
