# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

import os
import tempfile
from pathlib import Path
from unittest.mock import call

import numpy as np
from craft_cli import messages
from fixtures import Fixture, MockPatchObject

from bft.fields import CHANNELS, FieldState, grid_points
from bft.hamiltonian import HamiltonianSpec
from bft.potentials import POTENTIALS


class RecordingEmitter:
    """Record what is shown using the emitter."""

    def __init__(self):
        self.interactions = []

    def record(self, method_name, args, kwargs):
        self.interactions.append(call(method_name, *args, **kwargs))


class RecordingEmitterFixture(Fixture):
    def _setUp(self):
        fd, filename = tempfile.mkstemp(prefix="bft-emitter-logs")
        os.close(fd)
        self.addCleanup(os.unlink, filename)

        messages.TESTMODE = True
        messages.emit.init(
            messages.EmitterMode.QUIET,
            "test-emitter",
            "Hello",
            log_filepath=Path(filename),
        )
        self.addCleanup(messages.emit.ended_ok)

        self.recorder = recorder = RecordingEmitter()
        for method_name in ("message", "progress", "trace", "error"):
            self.useFixture(
                MockPatchObject(
                    messages.emit,
                    method_name,
                    lambda *a, method_name=method_name, **kw: recorder.record(
                        method_name, a, kw
                    ),
                )
            )


def make_spec(variant="zero", d=1, rho=None, **settings):
    """A Hamiltonian with the named potential and its settings."""
    potential_class = POTENTIALS[variant]
    potential = potential_class(d, potential_class.Config.parse_obj(settings))
    return HamiltonianSpec(d=d, potential=potential, rho=rho)


def mode_field(grid, channel, alpha=0, d=1, mode=(1, 0, 0), kind="sin"):
    """A field with a single Fourier mode in one channel."""
    t = grid_points(grid)
    phase = 2 * np.pi * np.tensordot(np.array(mode, dtype=float), t, 1)
    values = np.zeros((d, CHANNELS) + tuple(grid))
    values[alpha, channel] = np.sin(phase) if kind == "sin" else np.cos(phase)
    return FieldState(d=d, grid=tuple(grid), values=values)
