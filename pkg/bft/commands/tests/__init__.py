# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List
from unittest.mock import ANY, call

from craft_cli import CraftError
from fixtures import TempDir
from testtools import TestCase

from bft.main import main
from bft.tests.fixtures import RecordingEmitterFixture


@dataclass
class _CommandResult:
    """The result of a command."""

    exit_code: int
    messages: List[str]
    progress: List[str]
    errors: List[CraftError]
    trace: List[str]


class CommandBaseTestCase(TestCase):
    def setUp(self):
        super().setUp()
        self.tempdir = Path(self.useFixture(TempDir()).path)
        self.out = self.tempdir / "results"

    def run_command(self, *args, **kwargs):
        with RecordingEmitterFixture() as emitter:
            exit_code = main(list(args))
            interactions = emitter.recorder.interactions
            result = _CommandResult(
                exit_code,
                [c.args[1] for c in interactions if c == call("message", ANY)],
                [
                    c.args[1]
                    for c in interactions
                    if c == call("progress", ANY, permanent=True)
                ],
                [c.args[1] for c in interactions if c == call("error", ANY)],
                [c.args[1] for c in interactions if c == call("trace", ANY)],
            )
            return result

    def write_config(self, content: Dict[str, Any]) -> Path:
        path = self.tempdir / "config.json"
        path.write_text(json.dumps(content))
        return path

    def read_csv(self, name: str) -> List[List[str]]:
        text = (self.out / name).read_text()
        return [line.split(",") for line in text.splitlines()]

    def read_manifest(self) -> Dict[str, Any]:
        return json.loads((self.out / "manifest.json").read_text())
