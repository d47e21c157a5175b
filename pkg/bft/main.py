# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

"""Main entry point."""

import logging
import sys
from typing import List, Optional

from craft_cli import (
    ArgumentParsingError,
    CommandGroup,
    CraftError,
    Dispatcher,
    EmitterMode,
    GlobalArgument,
    ProvideHelpException,
    emit,
)

from bft._version import version_description as bft_version
from bft.commands.adiabatic import AdiabaticCommand
from bft.commands.algebra import AlgebraCommand
from bft.commands.check import CheckCommand
from bft.commands.cutoff import CutoffCommand
from bft.commands.floer import FloerCommand
from bft.commands.morse import MorseFlowCommand
from bft.commands.solve import SolveCommand
from bft.commands.symbol import SymbolCommand
from bft.commands.version import VersionCommand


def _configure_logger(name: str) -> None:
    """Configure a logger for use with craft-cli.

    Setting up a library's logger in DEBUG level causes its content to be
    grabbed by craft-cli's Emitter.
    """
    logger = logging.getLogger(name)
    logger.setLevel(logging.DEBUG)


_configure_logger("bft")


_structure_commands = [
    AlgebraCommand,
    SymbolCommand,
    CheckCommand,
]
_solver_commands = [
    SolveCommand,
    CutoffCommand,
    MorseFlowCommand,
    AdiabaticCommand,
    FloerCommand,
]
_basic_commands = [
    VersionCommand,
]


def main(argv: Optional[List[str]] = None) -> int:
    """`bft` explores the critical points of a Clifford-type action."""
    if argv is None:
        argv = sys.argv[1:]

    emit.init(EmitterMode.BRIEF, "bft", f"Starting {bft_version}")
    command_groups = [
        CommandGroup("Structure", _structure_commands),
        CommandGroup("Solvers", _solver_commands),
        CommandGroup("Basic", _basic_commands),
    ]
    summary = "Solve and verify the Clifford-type Hamiltonian field theory."
    extra_global_args = [
        GlobalArgument(
            "version",
            "flag",
            "-V",
            "--version",
            "Show version information and exit",
        ),
    ]

    try:
        dispatcher = Dispatcher(
            "bft",
            command_groups,
            summary=summary,
            extra_global_args=extra_global_args,
        )
        global_args = dispatcher.pre_parse_args(argv)
        if global_args["version"]:
            emit.message(bft_version)
            emit.ended_ok()
            return 0
        dispatcher.load_command(None)
        ret = dispatcher.run() or 0
    except ArgumentParsingError as e:
        print(e, file=sys.stderr)
        emit.ended_ok()
        ret = 1
    except ProvideHelpException as e:
        print(e)
        emit.ended_ok()
        ret = 0
    except CraftError as e:
        emit.error(e)
        ret = e.retcode
    except KeyboardInterrupt as e:
        error = CraftError("Interrupted.")
        error.__cause__ = e
        emit.error(error)
        ret = 1
    except Exception as e:
        error = CraftError(f"bft internal error: {e!r}")
        error.__cause__ = e
        emit.error(error)
        ret = 1
    else:
        emit.ended_ok()

    return ret
