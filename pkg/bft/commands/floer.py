# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import Optional

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
from bft.errors import ConfigurationError
from bft.fields import l2_norm
from bft.floer import (
    action_profile,
    floer_residual,
    max_principle_monitor,
    solve_floer_curve,
)
from bft.hamiltonian import HamiltonianSpec
from bft.solvers import cutoff_radius
from bft.solvers.newton import record_for
from bft.utils import write_csv


def _cutoff_spec(
    spec: HamiltonianSpec, rho: Optional[float], action_cap: float
) -> HamiltonianSpec:
    if rho is not None:
        return spec.with_cutoff(rho)
    if spec.rho is not None:
        return spec
    derived = cutoff_radius(spec, action_cap)
    emit.message(
        f"No cutoff radius configured; using rho = {derived:.10g} from "
        f"action cap {action_cap:g}"
    )
    return spec.with_cutoff(derived)


class FloerCommand(BaseCommand):
    """Solve for a Floer curve between two critical points.

    The curve starts as the straight line between the snapshots given by
    --from and --to and is relaxed by minimising the Floer energy.  Along
    the result the maximum principle is monitored: sup |Z^odd| against
    rho, the subsolution inequality and the decrease of the action.
    """

    name = "floer"
    help_msg = __doc__.splitlines()[0]
    overview = __doc__
    common = True

    def fill_parser(self, parser: ArgumentParser) -> None:
        """Add arguments specific to this command."""
        add_config_argument(parser)
        parser.add_argument(
            "--from",
            dest="start",
            type=Path,
            required=True,
            help="BFT1 snapshot of the critical point at s = -S.",
        )
        parser.add_argument(
            "--to",
            dest="end",
            type=Path,
            required=True,
            help="BFT1 snapshot of the critical point at s = S.",
        )
        parser.add_argument(
            "--S", type=float, default=None, help="Half length in s."
        )
        parser.add_argument(
            "--Ns", type=int, default=None, help="Number of s-slices."
        )
        parser.add_argument(
            "--rho", type=float, default=None, help="Cutoff radius."
        )
        parser.add_argument(
            "--save-slices",
            action="store_true",
            default=False,
            help="Write every s-slice as a BFT1 snapshot.",
        )
        add_output_arguments(parser)

    def run(self, args: Namespace) -> int:
        """Run the command."""
        config = override(load_config(args), "curve", S=args.S, Ns=args.Ns)
        if args.rho is not None and args.rho <= 1:
            raise ConfigurationError(f"--rho must exceed 1, got {args.rho}.")
        spec = _cutoff_spec(
            build_hamiltonian(config), args.rho, config.action_cap
        )
        start, end = load_snapshot(args.start), load_snapshot(args.end)
        for state, path in ((start, args.start), (end, args.end)):
            if state.d != spec.d or state.grid != start.grid:
                raise ConfigurationError(
                    f"Snapshot {str(path)!r} does not match d = {spec.d} "
                    f"on grid {start.grid}."
                )
        endpoints = (record_for(start, spec), record_for(end, spec))
        emit.progress(
            f"Relaxing a curve of {config.curve.Ns} slices on "
            f"[-{config.curve.S:g}, {config.curve.S:g}]"
        )
        try:
            curve = solve_floer_curve(endpoints, spec, config.curve)
        except ValueError as e:
            raise ConfigurationError(str(e))

        R, _ = floer_residual(curve, spec)
        actions = action_profile(curve, spec)
        rows = [
            [s, action, curve.slice(j).sup_odd(), l2_norm(R[j])]
            for j, (s, action) in enumerate(zip(curve.s, actions))
        ]
        header = ["s", "action", "sup_odd", "residual_slice"]
        write_csv(args.out / "floer_report.csv", header, rows)
        maybe_plotdata(args, "floer_report", header, rows)
        if args.save_slices:
            for j in range(curve.Ns):
                curve.slice(j).save(args.out / f"curve_slice_{j}.bft")

        emit.message(
            f"Curve residual {curve.residual:.3e} "
            f"(converged: {curve.converged})"
        )
        monitor = max_principle_monitor(
            curve, spec, slack=config.curve.monitor_slack
        )
        checks = Checks()
        checks.record(
            "sup-bound",
            monitor.bound_holds,
            f"sup |Z^odd| {monitor.sup_odd:.6g}, rho {monitor.rho:.6g}",
        )
        checks.record(
            "subsolution",
            monitor.subsolution_holds,
            f"{monitor.region_points} points above rho",
        )
        if curve.converged:
            checks.record(
                "action-decrease",
                monitor.increments_within_bound,
                f"largest increment {monitor.max_increment:.3e}",
            )
        else:
            emit.message(
                "The curve did not converge; the action profile is "
                "reported but not checked."
            )
        return finish(
            args,
            "floer",
            checks,
            config=config,
            extra={
                "rho": spec.rho,
                "converged": curve.converged,
                "residual": curve.residual,
            },
        )
