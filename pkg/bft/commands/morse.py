# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Tuple

import numpy as np
from craft_cli import BaseCommand, emit

from bft.commands._common import (
    Checks,
    add_config_argument,
    add_output_arguments,
    build_hamiltonian,
    finish,
    load_config,
    load_snapshot,
    maybe_plotdata,
    override,
)
from bft.config import RunConfig
from bft.errors import ConfigurationError
from bft.fields import O_IJ_CHANNELS, grid_points
from bft.hamiltonian import HamiltonianSpec
from bft.solvers import MorseTrajectory, morse_flow
from bft.utils import write_csv


def add_initial_data_arguments(parser: ArgumentParser) -> None:
    parser.add_argument(
        "--from",
        dest="snapshot",
        type=Path,
        default=None,
        help="Start from the even channels of this BFT1 snapshot.",
    )
    parser.add_argument(
        "--q0",
        type=float,
        default=0.25,
        help="Constant initial value of q (ignored with --from).",
    )
    parser.add_argument(
        "--ripple",
        type=float,
        default=0.0,
        help="Add this multiple of sin(2 pi t1) to q and o23.",
    )
    parser.add_argument(
        "--step", type=float, default=None, help="Initial step size in s."
    )
    parser.add_argument(
        "--s-max", type=float, default=None, help="Stop the flow at this s."
    )


def initial_data(
    args: Namespace, config: RunConfig, spec: HamiltonianSpec
) -> Tuple[np.ndarray, np.ndarray]:
    """(q0, o0) from a snapshot or from --q0 and --ripple."""
    if args.snapshot is not None:
        state = load_snapshot(args.snapshot)
        if state.d != spec.d:
            raise ConfigurationError(
                f"Snapshot has d = {state.d}, the Hamiltonian d = {spec.d}."
            )
        q0 = state.values[:, 0]
        o0 = state.values[:, list(O_IJ_CHANNELS)]
    else:
        grid = config.grid
        q0 = np.full((spec.d,) + grid, args.q0)
        o0 = np.zeros((spec.d, 3) + grid)
    if args.ripple:
        t1 = grid_points(q0.shape[-3:])[0]
        ripple = args.ripple * np.sin(2 * np.pi * t1)
        q0 = q0 + ripple
        o0 = o0.copy()
        o0[:, 0] += ripple
    return q0, o0


def flow_config(args: Namespace) -> RunConfig:
    return override(
        load_config(args), "flow", step=args.step, s_max=args.s_max
    )


def run_flow(
    args: Namespace, config: RunConfig, spec: HamiltonianSpec
) -> MorseTrajectory:
    q0, o0 = initial_data(args, config, spec)
    emit.progress(
        f"Running the Morse flow to s = {config.flow.s_max:g} "
        f"with step {config.flow.step:g}"
    )
    return morse_flow(q0, o0, spec, config.flow)


class MorseFlowCommand(BaseCommand):
    """Follow the L2 gradient flow of the Morse function.

    The flow d_s q = Delta q + V'(q) with heat flow on o_ij is run from
    constant or snapshot data; the Morse energy must not increase.
    """

    name = "morse-flow"
    help_msg = __doc__.splitlines()[0]
    overview = __doc__
    common = True

    def fill_parser(self, parser: ArgumentParser) -> None:
        """Add arguments specific to this command."""
        add_config_argument(parser)
        add_initial_data_arguments(parser)
        add_output_arguments(parser)

    def run(self, args: Namespace) -> int:
        """Run the command."""
        config = flow_config(args)
        spec = build_hamiltonian(config)
        trajectory = run_flow(args, config, spec)

        q_mean = trajectory.q.mean(axis=(-3, -2, -1))
        header = ["s", "energy"] + [
            f"q_mean_{alpha + 1}" for alpha in range(spec.d)
        ]
        rows = [
            [s, energy] + list(means)
            for s, energy, means in zip(
                trajectory.s, trajectory.energies, q_mean
            )
        ]
        write_csv(args.out / "morse_trajectory.csv", header, rows)
        maybe_plotdata(args, "morse_trajectory", header, rows)

        final = q_mean[-1]
        emit.message(
            f"Stopped at s = {trajectory.s[-1]:.6g} with mean q "
            f"{', '.join(f'{x:.10g}' for x in final)} "
            f"(converged: {trajectory.converged}, "
            f"{trajectory.halvings} halvings)"
        )
        increments = trajectory.energy_increments
        worst = float(increments.max()) if increments.size else 0.0
        checks = Checks()
        checks.record(
            "energy-monotone",
            worst <= config.flow.energy_slack,
            f"largest increment {worst:.3e}",
        )
        return finish(
            args,
            "morse-flow",
            checks,
            config=config,
            extra={
                "converged": trajectory.converged,
                "steps": int(trajectory.steps.size),
                "halvings": trajectory.halvings,
            },
        )
