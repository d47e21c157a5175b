# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from argparse import ArgumentParser, Namespace
from typing import Dict

import numpy as np
from craft_cli import BaseCommand, emit

from bft.commands._common import (
    Checks,
    add_output_arguments,
    finish,
    maybe_plotdata,
)
from bft.errors import ConfigurationError
from bft.fields import grid_points
from bft.spectral import apply_Kdel, symbol_table
from bft.utils import write_csv

WITNESS_GRID = (16, 16, 16)
WITNESS_TOLERANCE = 1e-12


def kernel_witnesses() -> Dict[str, float]:
    """sup |K_del u| for the two divergence-like kernel witnesses.

    With psi = sin(2 pi t1) sin(2 pi t2) these are (0, d2 psi, -d1 psi, 0)
    and (0, d3 psi, 0, -d1 psi).
    """
    t1, t2, _ = 2 * np.pi * grid_points(WITNESS_GRID)
    d1_psi = 2 * np.pi * np.cos(t1) * np.sin(t2)
    d2_psi = 2 * np.pi * np.sin(t1) * np.cos(t2)
    zero = np.zeros(WITNESS_GRID)
    witnesses = {
        "witness-12": np.array([[zero, d2_psi, -d1_psi, zero]]),
        # psi does not depend on t3
        "witness-13": np.array([[zero, zero, zero, -d1_psi]]),
    }
    return {
        name: float(np.abs(apply_Kdel(u)).max())
        for name, u in witnesses.items()
    }


class SymbolCommand(BaseCommand):
    """Tabulate the nullity of the symbol of J_del or K_del.

    Every wave vector k with |k_j| <= kmax gets a row (k1, k2, k3,
    nullity) in symbol_table.csv.
    """

    name = "symbol"
    help_msg = __doc__.splitlines()[0]
    overview = __doc__
    common = True

    def fill_parser(self, parser: ArgumentParser) -> None:
        """Add arguments specific to this command."""
        parser.add_argument(
            "--operator",
            "--op",
            dest="operator",
            choices=["J", "K"],
            default="K",
            help="Which operator's symbol to analyse.",
        )
        parser.add_argument(
            "--kmax",
            type=int,
            default=8,
            help="Largest wave number per direction.",
        )
        parser.add_argument(
            "--verify",
            action="store_true",
            default=False,
            help=(
                "Fail unless K has a kernel at every k != 0, J has none, "
                "and K_del annihilates the kernel witnesses."
            ),
        )
        add_output_arguments(parser)

    def run(self, args: Namespace) -> int:
        """Run the command."""
        if args.kmax < 0:
            raise ConfigurationError(
                f"--kmax must be nonnegative, got {args.kmax}."
            )
        rows = symbol_table(args.operator, args.kmax)
        write_csv(
            args.out / "symbol_table.csv", ["k1", "k2", "k3", "nullity"], rows
        )
        maybe_plotdata(
            args, "symbol_table", ["k1", "k2", "k3", "nullity"], rows
        )
        nonzero = [row[3] for row in rows if any(row[:3])]
        if nonzero:
            emit.message(
                f"{args.operator}: nullity ranges over "
                f"[{min(nonzero)}, {max(nonzero)}] for k != 0"
            )

        checks = Checks()
        if args.verify:
            if args.operator == "K":
                checks.record(
                    "K-symbol-kernel",
                    all(n >= 2 for n in nonzero),
                    f"min nullity {min(nonzero, default=0)}",
                )
                for name, sup in kernel_witnesses().items():
                    checks.record(
                        f"K-{name}", sup < WITNESS_TOLERANCE, f"sup {sup:.3e}"
                    )
            else:
                checks.record(
                    "J-symbol-invertible",
                    all(n == 0 for n in nonzero),
                    f"max nullity {max(nonzero, default=0)}",
                )
        return finish(
            args,
            "symbol",
            checks,
            extra={"operator": args.operator, "kmax": args.kmax},
        )
