# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from argparse import ArgumentParser, Namespace

from craft_cli import BaseCommand, emit

from bft.commands._common import (
    Checks,
    add_config_argument,
    add_jobs_argument,
    add_output_arguments,
    build_hamiltonian,
    finish,
    load_config,
    override,
)
from bft.config import RunConfig
from bft.errors import ConfigurationError
from bft.solvers import cutoff_orbit_coincidence
from bft.solvers.search import DEFAULT_SOBOLEV_MARGIN
from bft.utils import write_csv


class CutoffCommand(BaseCommand):
    """Compare the critical points of H and of its cutoff.

    The cutoff radius is derived from the action cap and the L2 bound.
    Below the cap both searches must find the same families, and the cutoff
    must never be active on them.
    """

    name = "cutoff"
    help_msg = __doc__.splitlines()[0]
    overview = __doc__
    common = True

    def fill_parser(self, parser: ArgumentParser) -> None:
        """Add arguments specific to this command."""
        add_config_argument(parser)
        parser.add_argument(
            "--action-cap",
            type=float,
            default=None,
            help="Compare families with action at most this value.",
        )
        parser.add_argument(
            "--sobolev-margin",
            type=float,
            default=DEFAULT_SOBOLEV_MARGIN,
            help="Factor from the L2 bound to the sup bound on Z^odd.",
        )
        add_jobs_argument(parser)
        add_output_arguments(parser)

    def run(self, args: Namespace) -> int:
        """Run the command."""
        config = override(load_config(args), "solver", jobs=args.jobs)
        if args.action_cap is not None:
            config = RunConfig.parse(
                {**config.dict(by_alias=True), "action-cap": args.action_cap},
                source="<command line>",
            )
        spec = build_hamiltonian(config)
        try:
            report = cutoff_orbit_coincidence(
                spec,
                config.action_cap,
                config.solver,
                config.grid,
                seed=config.seed,
                sobolev_margin=args.sobolev_margin,
            )
        except ValueError as e:
            raise ConfigurationError(str(e))
        emit.message(
            f"Cutoff radius {report.rho:.10g} for action cap "
            f"{report.action_cap:g}"
        )

        rows = []
        for label, result in (("plain", report.plain), ("cut", report.cut)):
            for record in result.records:
                rows.append(
                    [
                        label,
                        record.family_id,
                        record.action_value,
                        record.residual,
                        record.field.sup_odd(),
                        record.action_value <= report.action_cap,
                    ]
                )
        write_csv(
            args.out / "cutoff_report.csv",
            ["search", "family_id", "action", "residual", "sup_odd", "capped"],
            rows,
        )

        plain_count, cut_count = report.capped_counts
        emit.message(
            f"All families: {report.plain.count} with H, {report.cut.count} "
            f"with the cutoff (match: {report.full_match})"
        )
        checks = Checks()
        checks.record(
            "capped-match",
            report.capped_match,
            f"{plain_count} vs {cut_count} families below the cap",
        )
        checks.record(
            "cutoff-inactive",
            report.cutoff_inactive,
            f"sup |Z^odd| {report.max_sup_odd:.6g} < rho - 1",
        )
        return finish(
            args,
            "cutoff",
            checks,
            config=config,
            extra={
                "rho": report.rho,
                "sobolev-margin": report.sobolev_margin,
                "full-match": report.full_match,
            },
        )
