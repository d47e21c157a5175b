# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from argparse import ArgumentParser, Namespace

from craft_cli import BaseCommand, emit

from bft.commands._common import (
    Checks,
    add_config_argument,
    add_output_arguments,
    build_hamiltonian,
    finish,
    maybe_plotdata,
)
from bft.commands.morse import (
    add_initial_data_arguments,
    flow_config,
    run_flow,
)
from bft.errors import ConfigurationError
from bft.solvers import adiabatic_residual
from bft.utils import write_csv

DEFAULT_EPSILONS = [1e-1, 1e-2, 1e-3]
LIMIT_TOLERANCE = 1e-8
# largest allowed spread of residual / epsilon across epsilons
RATIO_SPREAD = 2.0


class AdiabaticCommand(BaseCommand):
    """Measure how a Morse flow line solves the adiabatic system.

    The flow line is lifted to the slow manifold and the adiabatic
    residual divided by epsilon is reported for each --eps.  At epsilon = 0
    the lift solves the system outright.
    """

    name = "adiabatic"
    help_msg = __doc__.splitlines()[0]
    overview = __doc__
    common = True

    def fill_parser(self, parser: ArgumentParser) -> None:
        """Add arguments specific to this command."""
        add_config_argument(parser)
        parser.add_argument(
            "--eps",
            dest="epsilons",
            type=float,
            action="append",
            default=None,
            help="Adiabatic parameter; repeat for several values.",
        )
        add_initial_data_arguments(parser)
        add_output_arguments(parser)

    def run(self, args: Namespace) -> int:
        """Run the command."""
        epsilons = args.epsilons or DEFAULT_EPSILONS
        if any(eps <= 0 for eps in epsilons):
            raise ConfigurationError("Every --eps must be positive.")
        config = flow_config(args)
        spec = build_hamiltonian(config)
        trajectory = run_flow(args, config, spec)

        limit = adiabatic_residual(trajectory, spec, 0.0)
        ratios = [adiabatic_residual(trajectory, spec, e) for e in epsilons]
        rows = [[0.0, limit, limit]] + [
            [eps, ratio * eps, ratio] for eps, ratio in zip(epsilons, ratios)
        ]
        header = ["epsilon", "residual", "residual_over_epsilon"]
        write_csv(args.out / "adiabatic.csv", header, rows)
        maybe_plotdata(args, "adiabatic", header, rows)
        for eps, ratio in zip(epsilons, ratios):
            emit.message(f"epsilon {eps:g}: residual / epsilon {ratio:.6g}")

        checks = Checks()
        checks.record(
            "slow-manifold", limit < LIMIT_TOLERANCE, f"residual {limit:.3e}"
        )
        if len(ratios) > 1:
            smallest = min(ratios)
            spread = max(ratios) / smallest if smallest > 0 else 1.0
            if smallest == 0 and max(ratios) > 0:
                spread = float("inf")
            checks.record(
                "order-epsilon",
                spread < RATIO_SPREAD,
                f"ratios vary by a factor {spread:.3g}",
            )
        return finish(
            args,
            "adiabatic",
            checks,
            config=config,
            extra={"epsilons": list(epsilons)},
        )
