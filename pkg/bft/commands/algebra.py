# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from argparse import ArgumentParser, Namespace

from craft_cli import BaseCommand, emit

from bft.algebra import (
    MAX_DIMENSION,
    basis_labels,
    check_clifford,
    check_hyperkahler,
    extract_K,
    get_clifford_system,
    omega_nondegenerate,
)
from bft.commands._common import Checks, add_output_arguments, finish
from bft.errors import ConfigurationError
from bft.utils import write_csv


class AlgebraCommand(BaseCommand):
    """Report the Clifford identities of J_1, ..., J_n.

    Writes algebra_report.csv and, with --dump, every matrix as CSV.
    """

    name = "algebra"
    help_msg = __doc__.splitlines()[0]
    overview = __doc__
    common = True

    def fill_parser(self, parser: ArgumentParser) -> None:
        """Add arguments specific to this command."""
        parser.add_argument(
            "--n",
            type=int,
            default=3,
            help="Domain dimension (1 to %d)." % MAX_DIMENSION,
        )
        parser.add_argument(
            "--d", type=int, default=1, help="Target dimension."
        )
        parser.add_argument(
            "--verify",
            action="store_true",
            default=False,
            help="Fail unless every identity holds exactly.",
        )
        parser.add_argument(
            "--dump",
            "--dump-matrices",
            dest="dump",
            action="store_true",
            default=False,
            help="Write the matrices J_i (and K_i for n = 3).",
        )
        add_output_arguments(parser)

    def run(self, args: Namespace) -> int:
        """Run the command."""
        if not 1 <= args.n <= MAX_DIMENSION or args.d < 1:
            raise ConfigurationError(
                f"Need 1 <= n <= {MAX_DIMENSION} and d >= 1, got n = "
                f"{args.n}, d = {args.d}."
            )
        system = get_clifford_system(args.n, args.d)
        report = dict(check_clifford(system))
        if args.n == 3:
            for key, value in check_hyperkahler(system).items():
                report[f"hyperkahler-{key}"] = value
            ranks = omega_nondegenerate(system)
            emit.message(
                f"omega ranks {ranks['J_ranks']}, K ranks {ranks['K_ranks']}, "
                f"joint K kernel {ranks['K_joint_kernel']}"
            )
        for identity, deviation in report.items():
            emit.message(f"{identity}: max deviation {deviation}")
        write_csv(
            args.out / "algebra_report.csv",
            ["identity", "max_deviation"],
            list(report.items()),
        )

        if args.dump:
            labels = basis_labels(args.n)
            for i, J in enumerate(system.J, start=1):
                write_csv(
                    args.out / f"J{i}.csv",
                    ["row"] + labels,
                    [[label] + list(r) for label, r in zip(labels, J)],
                )
            if args.n == 3:
                for i, K in enumerate(extract_K(system), start=1):
                    write_csv(
                        args.out / f"K{i}.csv",
                        ["row"] + labels[:4],
                        [[label] + list(r) for label, r in zip(labels, K)],
                    )

        checks = Checks()
        if args.verify:
            for identity, deviation in report.items():
                checks.record(
                    identity, deviation == 0, f"deviation {deviation}"
                )
        return finish(
            args, "algebra", checks, extra={"n": args.n, "d": args.d}
        )
