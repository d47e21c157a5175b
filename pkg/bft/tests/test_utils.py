# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

import json
import re
from pathlib import Path

import numpy as np
from fixtures import TempDir
from testtools import TestCase

from bft._version import version as bft_version
from bft.errors import ConfigurationError
from bft.utils import (
    canonical_hash,
    load_yaml,
    write_csv,
    write_manifest,
    write_plotdata,
)


class TestLoadYAML(TestCase):
    def setUp(self):
        super().setUp()
        self.tempdir = Path(self.useFixture(TempDir()).path)

    def test_success(self):
        path = self.tempdir / "testfile.yaml"
        path.write_text("foo: 123\n")
        self.assertEqual({"foo": 123}, load_yaml(path))

    def test_json(self):
        path = self.tempdir / "testfile.json"
        path.write_text('{"grid": [8, 8, 8], "seed": 1}')
        self.assertEqual({"grid": [8, 8, 8], "seed": 1}, load_yaml(path))

    def test_no_file(self):
        path = self.tempdir / "testfile.yaml"
        self.assertRaisesRegex(
            ConfigurationError,
            re.escape(f"Couldn't find config file {str(path)!r}"),
            load_yaml,
            path,
        )

    def test_corrupted_format(self):
        path = self.tempdir / "testfile.yaml"
        path.write_text("foo: [1, 2\n")
        self.assertRaisesRegex(
            ConfigurationError,
            re.escape(f"Failed to read/parse config file {str(path)!r}"),
            load_yaml,
            path,
        )

    def test_not_mapping(self):
        path = self.tempdir / "testfile.yaml"
        path.write_text("- foo\n")
        self.assertRaisesRegex(
            ConfigurationError,
            re.escape(f"Config file {str(path)!r} does not define a mapping"),
            load_yaml,
            path,
        )


class TestWriters(TestCase):
    def setUp(self):
        super().setUp()
        self.tempdir = Path(self.useFixture(TempDir()).path)

    def test_csv_cells(self):
        path = write_csv(
            self.tempdir / "sub" / "table.csv",
            ["name", "count", "value", "ok"],
            [
                ["a", 3, 0.1, True],
                ["b", np.int64(4), np.float64(1 / 3), False],
            ],
        )
        self.assertEqual(
            [
                "name,count,value,ok",
                "a,3,0.10000000000000001,1",
                "b,4,0.33333333333333331,0",
            ],
            path.read_text().splitlines(),
        )

    def test_csv_row_length(self):
        self.assertRaises(
            ValueError,
            write_csv,
            self.tempdir / "table.csv",
            ["a", "b"],
            [[1]],
        )

    def test_plotdata(self):
        path = write_plotdata(
            self.tempdir / "plot.dat", ["s", "f"], [[0.0, 1.5], [0.5, 2.0]]
        )
        self.assertEqual(
            ["# s f", "0 1.5", "0.5 2"], path.read_text().splitlines()
        )

    def test_manifest(self):
        path = write_manifest(
            self.tempdir, "solve", "abc", 7, {"families": 2}
        )
        manifest = json.loads(path.read_text())
        self.assertEqual("solve", manifest["command"])
        self.assertEqual("abc", manifest["config-hash"])
        self.assertEqual(7, manifest["seed"])
        self.assertEqual(2, manifest["families"])
        self.assertEqual(bft_version, manifest["versions"]["bft"])
        self.assertEqual(
            {"bft", "numpy", "scipy"}, set(manifest["versions"])
        )

    def test_canonical_hash(self):
        self.assertEqual(
            canonical_hash({"a": 1, "b": 2}), canonical_hash({"b": 2, "a": 1})
        )
        self.assertNotEqual(
            canonical_hash({"a": 1}), canonical_hash({"a": 2})
        )
