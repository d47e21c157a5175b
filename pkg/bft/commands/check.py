# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from argparse import ArgumentParser, Namespace
from typing import Callable, Dict, List, Tuple

import numpy as np
from craft_cli import BaseCommand, emit

from bft.action import action_H, l2_gradient
from bft.commands._common import (
    Checks,
    add_config_argument,
    add_output_arguments,
    build_hamiltonian,
    finish,
    load_config,
    maybe_plotdata,
)
from bft.config import HamiltonianConfig, RunConfig
from bft.errors import ConfigurationError
from bft.fields import FieldState, l2_inner, l2_norm
from bft.hamiltonian import HamiltonianSpec
from bft.spectral import (
    apply_Jdel,
    hk_identity_check,
    is_parity_swapping,
    symbol_table,
    verify_square,
)
from bft.utils import write_csv

# suite name -> tolerance on the reported relative deviation
TOLERANCES = {
    "square": 1e-10,
    "parity": 1e-10,
    "self-adjoint": 1e-10,
    "hk-0": 1e-9,
    "hk-1": 1e-9,
    "gradient-fd": 1e-6,
}

FD_STEP = 1e-6

# exercises the p-dependence, the cutoff and the time profile at once
_CHECK_HAMILTONIAN = {
    "potential": {"variant": "cosine_pq", "amplitudes": [0.5]},
    "rho": 2.5,
    "time-profile": {"amplitude": 0.3, "mode": [1, 1, 0]},
}


def _relative(gap: float, scale: float) -> float:
    return gap / scale if scale > 0 else gap


def square_deviation(Z: FieldState, Y: FieldState) -> float:
    return _relative(verify_square(Z), l2_norm(Z.values))


def parity_deviation(Z: FieldState, Y: FieldState) -> float:
    return _relative(is_parity_swapping(Z), float(np.abs(Z.values).max()))


def self_adjoint_deviation(Z: FieldState, Y: FieldState) -> float:
    left = l2_inner(apply_Jdel(Z), Y.values)
    right = l2_inner(Z.values, apply_Jdel(Y))
    scale = l2_norm(apply_Jdel(Z)) * l2_norm(Y.values)
    return _relative(abs(left - right), scale)


def hk_deviation(k: int) -> Callable[[FieldState, FieldState], float]:
    def deviation(Z: FieldState, Y: FieldState) -> float:
        lhs, rhs = hk_identity_check(Z, k)
        return _relative(abs(lhs - rhs), max(lhs, rhs))

    return deviation


def gradient_fd_deviation(
    spec: HamiltonianSpec,
) -> Callable[[FieldState, FieldState], float]:
    """Central differences of A_H against <l2_gradient, Y>."""

    def deviation(Z: FieldState, Y: FieldState) -> float:
        plus = action_H(Z.values + FD_STEP * Y.values, spec)
        minus = action_H(Z.values - FD_STEP * Y.values, spec)
        finite_difference = (plus - minus) / (2 * FD_STEP)
        directional = l2_inner(l2_gradient(Z, spec), Y.values)
        scale = max(abs(directional), abs(finite_difference), 1.0)
        return abs(finite_difference - directional) / scale

    return deviation


def run_suites(
    spec: HamiltonianSpec,
    grid: Tuple[int, int, int],
    samples: int,
    seed: int,
) -> Dict[str, List[float]]:
    """Evaluate every identity suite on `samples` random field pairs."""
    rng = np.random.default_rng(seed)
    suites = {
        "square": square_deviation,
        "parity": parity_deviation,
        "self-adjoint": self_adjoint_deviation,
        "hk-0": hk_deviation(0),
        "hk-1": hk_deviation(1),
        "gradient-fd": gradient_fd_deviation(spec),
    }
    results: Dict[str, List[float]] = {name: [] for name in suites}
    kmax = min(2, min(grid) // 2 - 1)
    for _ in range(samples):
        Z = FieldState.random_band_limited(spec.d, grid, rng, kmax=kmax)
        Y = FieldState.random_band_limited(spec.d, grid, rng, kmax=kmax)
        for name, suite in suites.items():
            results[name].append(suite(Z, Y))
    return results


def symbol_suite(kmax: int) -> Dict[str, int]:
    """Smallest K-nullity and largest J-nullity over k != 0."""
    k_nullities = [n for *k, n in symbol_table("K", kmax) if any(k)]
    j_nullities = [n for *k, n in symbol_table("J", kmax) if any(k)]
    return {
        "min-K-nullity": min(k_nullities),
        "max-J-nullity": max(j_nullities),
    }


class CheckCommand(BaseCommand):
    """Run the operator identity and gradient suites.

    Random band-limited fields are used to test J_del^2 = -Laplacian,
    parity swapping, self-adjointness, the H^0 and H^1 norm identities, and
    finite differences of the action functional against its L2 gradient.
    The symbol suite checks the nullities of J and K.  Results go to
    check_report.csv.
    """

    name = "check"
    help_msg = __doc__.splitlines()[0]
    overview = __doc__
    common = True

    def fill_parser(self, parser: ArgumentParser) -> None:
        """Add arguments specific to this command."""
        add_config_argument(parser)
        parser.add_argument(
            "--grid", type=int, default=None, help="Grid points per axis."
        )
        parser.add_argument(
            "--d", type=int, default=None, help="Target dimension."
        )
        parser.add_argument(
            "--samples",
            type=int,
            default=20,
            help="Random field pairs per suite.",
        )
        parser.add_argument(
            "--seed", type=int, default=None, help="Random seed."
        )
        parser.add_argument(
            "--kmax",
            type=int,
            default=8,
            help="Largest wave number in the symbol suite.",
        )
        add_output_arguments(parser)

    def _config(self, args: Namespace) -> RunConfig:
        config = load_config(args)
        content = config.dict(by_alias=True)
        if args.config is None:
            content["hamiltonian"] = HamiltonianConfig.parse_obj(
                _CHECK_HAMILTONIAN
            ).dict(by_alias=True)
            content["grid"] = 8
        if args.grid is not None:
            content["grid"] = args.grid
        if args.d is not None:
            content["hamiltonian"]["d"] = args.d
        if args.seed is not None:
            content["seed"] = args.seed
        return RunConfig.parse(content, source="<command line>")

    def run(self, args: Namespace) -> int:
        """Run the command."""
        if args.samples < 1 or args.kmax < 1:
            raise ConfigurationError("--samples and --kmax must be positive.")
        config = self._config(args)
        spec = build_hamiltonian(config)
        emit.progress(
            f"Checking {args.samples} samples on grid {config.grid}, "
            f"d = {spec.d}"
        )
        results = run_suites(spec, config.grid, args.samples, config.seed)

        checks = Checks()
        rows = []
        for name, deviations in results.items():
            tolerance = TOLERANCES[name]
            for sample, deviation in enumerate(deviations):
                rows.append(
                    [name, sample, deviation, tolerance, deviation < tolerance]
                )
            worst = max(deviations)
            checks.record(name, worst < tolerance, f"max {worst:.3e}")

        nullities = symbol_suite(args.kmax)
        k_nullity = nullities["min-K-nullity"]
        j_nullity = nullities["max-J-nullity"]
        rows.append(["symbol-K", -1, k_nullity, 2, k_nullity >= 2])
        rows.append(["symbol-J", -1, j_nullity, 0, j_nullity == 0])
        checks.record(
            "symbol-K", k_nullity >= 2, f"min nullity {k_nullity}"
        )
        checks.record(
            "symbol-J", j_nullity == 0, f"max nullity {j_nullity}"
        )

        write_csv(
            args.out / "check_report.csv",
            ["suite", "sample", "deviation", "tolerance", "passed"],
            rows,
        )
        maybe_plotdata(
            args,
            "check_report",
            list(results),
            np.array(list(results.values())).T,
        )
        return finish(
            args,
            "check",
            checks,
            config=config,
            extra={"samples": args.samples, "kmax": args.kmax},
        )
