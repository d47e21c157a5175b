# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from argparse import ArgumentParser, Namespace

from craft_cli import BaseCommand, emit

from bft.action import EQUATION_NAMES, equation_residuals
from bft.commands._common import (
    Checks,
    add_config_argument,
    add_jobs_argument,
    add_output_arguments,
    build_hamiltonian,
    finish,
    load_config,
    maybe_plotdata,
    override,
)
from bft.solvers import (
    deflated_search,
    l2_bound_report,
    verify_laplace_correspondence,
)
from bft.utils import write_csv

EQUATION_TOLERANCE = 1e-8


class SolveCommand(BaseCommand):
    """Find the critical points of the action functional.

    Runs the deflated Newton-Krylov search, then checks every family found
    against the Laplace system it encodes and against the L2 bound on the
    odd part.  Each family is saved as a BFT1 snapshot.
    """

    name = "solve"
    help_msg = __doc__.splitlines()[0]
    overview = __doc__
    common = True

    def fill_parser(self, parser: ArgumentParser) -> None:
        """Add arguments specific to this command."""
        add_config_argument(parser)
        add_jobs_argument(parser)
        add_output_arguments(parser)

    def run(self, args: Namespace) -> int:
        """Run the command."""
        config = override(load_config(args), "solver", jobs=args.jobs)
        spec = build_hamiltonian(config)
        emit.progress(
            f"Searching for critical points on grid {config.grid} "
            f"with {config.solver.jobs} job(s)"
        )
        result = deflated_search(spec, config.solver, config.grid, config.seed)
        checks = Checks()

        write_csv(
            args.out / "seeds.csv",
            ["seed", "lattice_point", "converged", "residual", "message"],
            [
                [
                    outcome.index,
                    " ".join(str(x) for x in outcome.lattice_point),
                    outcome.converged,
                    "" if outcome.residual is None else outcome.residual,
                    outcome.message,
                ]
                for outcome in result.outcomes
            ],
        )

        rows = []
        for record in result.records:
            record.field.save(args.out / f"solution_{record.family_id}.bft")
            rows.append(
                [
                    record.family_id,
                    record.action_value,
                    record.residual,
                    record.odd_l2,
                    record.o_ij_variance,
                    record.field.sup_odd(),
                ]
            )
            emit.message(
                f"Family {record.family_id}: action "
                f"{record.action_value:.10g}, residual {record.residual:.3e}"
            )
        header = [
            "family_id",
            "action",
            "residual",
            "odd_l2",
            "o_ij_variance",
            "sup_odd",
        ]
        write_csv(args.out / "solutions.csv", header, rows)
        maybe_plotdata(args, "solutions", header, rows)

        checks.record(
            "residual",
            all(
                r.residual < config.solver.tol_residual
                for r in result.records
            )
            and not result.empty,
            f"{result.count} families",
        )
        if result.degenerate:
            emit.message(
                "W vanishes: the constants form one continuum, no count "
                "is asserted."
            )
        else:
            checks.record(
                "family-count",
                result.meets_lower_bound,
                f"found {result.count}, need {result.required}",
            )

        equation_rows = []
        for record in result.records:
            residuals = equation_residuals(record.field, spec)
            equation_rows.append(
                [record.family_id] + [residuals[n] for n in EQUATION_NAMES]
            )
        write_csv(
            args.out / "equations.csv",
            ["family_id"] + list(EQUATION_NAMES),
            equation_rows,
        )
        worst = max((max(row[1:]) for row in equation_rows), default=0.0)
        checks.record(
            "equations", worst < EQUATION_TOLERANCE, f"max {worst:.3e}"
        )

        if spec.potential.DEPENDS_ON_P:
            emit.message(
                f"Potential {spec.potential.name!r} depends on p; skipping "
                "the Laplace correspondence."
            )
        else:
            laplace_rows = []
            for record in result.records:
                report = verify_laplace_correspondence(record, spec)
                laplace_rows.append(
                    [
                        record.family_id,
                        report.laplace_residual,
                        report.o_ij_variance,
                        report.p_reconstruction,
                        report.o123_reconstruction,
                        report.passed,
                    ]
                )
            write_csv(
                args.out / "laplace.csv",
                [
                    "family_id",
                    "laplace_residual",
                    "o_ij_variance",
                    "p_reconstruction",
                    "o123_reconstruction",
                    "passed",
                ],
                laplace_rows,
            )
            checks.record(
                "laplace",
                all(row[-1] for row in laplace_rows),
                f"{len(laplace_rows)} families",
            )

        bound = l2_bound_report(result.records, spec, config.action_cap)
        write_csv(
            args.out / "l2_bound.csv",
            ["family_id", "action", "odd_l2", "lower_bound", "holds"],
            [
                [
                    row.family_id,
                    row.action_value,
                    row.odd_l2,
                    row.lower,
                    row.holds(bound.action_cap),
                ]
                for row in bound.rows
            ],
        )
        checks.record(
            "l2-bound",
            bound.holds,
            f"a = {bound.action_cap:g}, h0 = {bound.h0:g}, "
            f"h1 = {bound.h1:.6g}",
        )
        return finish(
            args,
            "solve",
            checks,
            config=config,
            extra={"families": result.count, "required": result.required},
        )
