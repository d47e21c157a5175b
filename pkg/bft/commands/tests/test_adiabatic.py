# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from bft.commands.tests import CommandBaseTestCase
from bft.errors import ConfigurationError

SMALL = {"grid": 8, "hamiltonian": {"potential": {"variant": "cosine"}}}


class TestAdiabatic(CommandBaseTestCase):
    def test_default_epsilons(self):
        config = self.write_config(SMALL)

        result = self.run_command(
            "adiabatic",
            "--config",
            str(config),
            "--ripple",
            "0.05",
            "--s-max",
            "0.5",
            "--out",
            str(self.out),
        )

        self.assertEqual(0, result.exit_code)
        rows = self.read_csv("adiabatic.csv")
        self.assertEqual(
            ["epsilon", "residual", "residual_over_epsilon"], rows[0]
        )
        self.assertEqual(
            [0.0, 0.1, 0.01, 0.001], [float(row[0]) for row in rows[1:]]
        )
        self.assertLess(float(rows[1][1]), 1e-8)
        ratios = [float(row[2]) for row in rows[2:]]
        self.assertLess(max(ratios) / min(ratios), 2.0)
        manifest = self.read_manifest()
        self.assertEqual(
            {"slow-manifold": True, "order-epsilon": True},
            manifest["checks"],
        )
        self.assertEqual([0.1, 0.01, 0.001], manifest["epsilons"])
        self.assertEqual(3, len(result.messages) - 1)

    def test_single_epsilon(self):
        config = self.write_config(SMALL)

        result = self.run_command(
            "adiabatic",
            "--config",
            str(config),
            "--eps",
            "0.5",
            "--s-max",
            "0.2",
            "--out",
            str(self.out),
        )

        self.assertEqual(0, result.exit_code)
        self.assertEqual(3, len(self.read_csv("adiabatic.csv")))
        self.assertEqual(
            {"slow-manifold": True}, self.read_manifest()["checks"]
        )

    def test_nonpositive_epsilon(self):
        result = self.run_command(
            "adiabatic", "--eps", "0", "--out", str(self.out)
        )

        self.assertEqual(2, result.exit_code)
        self.assertEqual(
            [ConfigurationError("Every --eps must be positive.")],
            result.errors,
        )
