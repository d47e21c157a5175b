# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from fixtures import MockPatch

from bft.commands.symbol import kernel_witnesses
from bft.commands.tests import CommandBaseTestCase
from bft.errors import CheckFailed


class TestKernelWitnesses(CommandBaseTestCase):
    def test_annihilated(self):
        for name, sup in kernel_witnesses().items():
            self.assertLess(sup, 1e-12, name)


class TestSymbol(CommandBaseTestCase):
    def test_k_table(self):
        result = self.run_command(
            "symbol", "--kmax", "1", "--verify", "--out", str(self.out)
        )

        self.assertEqual(0, result.exit_code)
        rows = self.read_csv("symbol_table.csv")
        self.assertEqual(["k1", "k2", "k3", "nullity"], rows[0])
        self.assertEqual(28, len(rows))
        nullities = {tuple(row[:3]): int(row[3]) for row in rows[1:]}
        self.assertEqual(4, nullities[("0", "0", "0")])
        self.assertEqual(2, nullities[("1", "0", "0")])
        self.assertIn(
            "K: nullity ranges over [2, 2] for k != 0", result.messages
        )
        self.assertEqual(
            {
                "K-symbol-kernel": True,
                "K-witness-12": True,
                "K-witness-13": True,
            },
            self.read_manifest()["checks"],
        )

    def test_j_table(self):
        result = self.run_command(
            "symbol",
            "--op",
            "J",
            "--kmax",
            "1",
            "--verify",
            "--out",
            str(self.out),
        )

        self.assertEqual(0, result.exit_code)
        rows = self.read_csv("symbol_table.csv")
        nullities = {tuple(row[:3]): int(row[3]) for row in rows[1:]}
        self.assertEqual(8, nullities.pop(("0", "0", "0")))
        self.assertEqual({0}, set(nullities.values()))
        self.assertEqual(
            {"J-symbol-invertible": True}, self.read_manifest()["checks"]
        )

    def test_plotdata(self):
        result = self.run_command(
            "symbol", "--kmax", "0", "--plotdata", "--out", str(self.out)
        )

        self.assertEqual(0, result.exit_code)
        self.assertEqual(
            ["# k1 k2 k3 nullity", "0 0 0 4"],
            (self.out / "symbol_table.dat").read_text().splitlines(),
        )

    def test_witness_failure(self):
        self.useFixture(
            MockPatch(
                "bft.commands.symbol.kernel_witnesses",
                return_value={"witness-12": 1.0, "witness-13": 0.0},
            )
        )

        result = self.run_command(
            "symbol", "--kmax", "1", "--verify", "--out", str(self.out)
        )

        self.assertEqual(1, result.exit_code)
        self.assertEqual(
            [CheckFailed("K-witness-12", "sup 1.000e+00")], result.errors
        )
        self.assertFalse(self.read_manifest()["checks"]["K-witness-12"])
