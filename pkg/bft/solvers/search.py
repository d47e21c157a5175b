# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

"""Census of solution families and the checks made on them."""

__all__ = [
    "CoincidenceReport",
    "L2BoundReport",
    "LaplaceReport",
    "SearchResult",
    "SeedOutcome",
    "cutoff_orbit_coincidence",
    "cutoff_radius",
    "deflated_search",
    "group_families",
    "l2_bound_report",
    "make_seeds",
    "verify_laplace_correspondence",
]

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from bft.action import gradient_H_field
from bft.config import SolverSettings
from bft.errors import SolverError, UnsupportedError
from bft.fields import (
    CHANNELS,
    EVEN_CHANNELS,
    O_IJ_CHANNELS,
    ODD_CHANNELS,
    FieldState,
    family_distance,
    l2_norm,
)
from bft.hamiltonian import HamiltonianSpec, l2_bound_constants
from bft.solvers.newton import SolutionRecord, newton_solve
from bft.spectral import apply_Jdel, laplacian

logger = logging.getLogger(__name__)

LAPLACE_TOLERANCE = 1e-8
VARIANCE_TOLERANCE = 1e-12
DEFAULT_SOBOLEV_MARGIN = 2.0


@dataclass(frozen=True)
class Seed:
    index: int
    lattice_point: Tuple[float, ...]
    field: FieldState = field(repr=False)


@dataclass(frozen=True)
class SeedOutcome:
    """What happened to one seed."""

    index: int
    lattice_point: Tuple[float, ...]
    converged: bool
    residual: Optional[float]
    message: str = ""


@dataclass(frozen=True)
class SearchResult:
    """Families found by a search, one record each, sorted by action."""

    records: List[SolutionRecord]
    required: int
    degenerate: bool
    outcomes: List[SeedOutcome]

    @property
    def count(self) -> int:
        return len(self.records)

    @property
    def meets_lower_bound(self) -> bool:
        return self.degenerate or self.count >= self.required

    @property
    def empty(self) -> bool:
        return not self.records


def make_seeds(
    d: int,
    grid: Sequence[int],
    settings: SolverSettings,
    rng: np.random.Generator,
) -> List[Seed]:
    """Constant seeds on q in {0, 1/2}^d, each with random perturbations."""
    seeds = []
    for lattice_point in itertools.product((0.0, 0.5), repeat=d):
        point = np.zeros((d, CHANNELS))
        point[:, 0] = lattice_point
        base = FieldState.constant(d, grid, point)
        seeds.append(Seed(len(seeds), lattice_point, base))
        for _ in range(settings.random_seeds):
            noise = FieldState.random_band_limited(
                d,
                grid,
                rng,
                amplitude=settings.seed_amplitude,
                kmax=settings.seed_kmax,
            )
            seeds.append(
                Seed(
                    len(seeds),
                    lattice_point,
                    base.with_values(base.values + noise.values),
                )
            )
    return seeds


def _solve_seed(
    seed: Seed, spec: HamiltonianSpec, settings: SolverSettings
) -> Tuple[SeedOutcome, Optional[SolutionRecord]]:
    try:
        record = newton_solve(seed.field, spec, settings)
    except SolverError as e:
        logger.debug("Seed %d failed: %s", seed.index, e)
        return (
            SeedOutcome(
                seed.index, seed.lattice_point, False, e.best_residual, str(e)
            ),
            None,
        )
    return (
        SeedOutcome(seed.index, seed.lattice_point, True, record.residual),
        record,
    )


def _quotient_even_means(Z: FieldState) -> FieldState:
    values = Z.values.copy()
    values[:, EVEN_CHANNELS] -= values[:, EVEN_CHANNELS].mean(
        axis=(-3, -2, -1), keepdims=True
    )
    return Z.with_values(values)


def _same_family(
    a: SolutionRecord, b: SolutionRecord, radius: float, degenerate: bool
) -> bool:
    if degenerate:
        # every even constant solves when W = 0
        return (
            family_distance(
                _quotient_even_means(a.field), _quotient_even_means(b.field)
            )
            < radius
        )
    return family_distance(a.field, b.field) < radius


def group_families(
    records: Sequence[SolutionRecord], radius: float, degenerate: bool = False
) -> List[SolutionRecord]:
    """Keep the first record of each family, numbered in input order."""
    representatives: List[SolutionRecord] = []
    for record in records:
        if not any(
            _same_family(record, rep, radius, degenerate)
            for rep in representatives
        ):
            representatives.append(record.with_family(len(representatives)))
    return representatives


def deflated_search(
    spec: HamiltonianSpec,
    config: SolverSettings,
    grid: Sequence[int],
    seed: int = 0,
) -> SearchResult:
    """Solve from every seed and keep one record per T^{3d}-family."""
    rng = np.random.default_rng(seed)
    seeds = make_seeds(spec.d, grid, config, rng)
    with ThreadPoolExecutor(max_workers=config.jobs) as executor:
        results = list(
            executor.map(lambda s: _solve_seed(s, spec, config), seeds)
        )
    outcomes = [outcome for outcome, _ in results]
    records = [record for _, record in results if record is not None]
    degenerate = spec.potential.is_zero
    families = group_families(records, config.deflation_radius, degenerate)
    families.sort(key=lambda r: (r.action_value, r.family_id))
    result = SearchResult(
        records=families,
        required=spec.d + 1,
        degenerate=degenerate,
        outcomes=outcomes,
    )
    converged = sum(outcome.converged for outcome in outcomes)
    logger.info(
        "%d of %d seeds converged into %d families (at least %d expected)",
        converged,
        len(seeds),
        result.count,
        result.required,
    )
    if degenerate:
        logger.warning(
            "Potential vanishes: every constant with Z^odd = 0 solves, "
            "reporting the continuum as one family"
        )
    if result.empty:
        logger.warning("No seed converged")
    return result


@dataclass(frozen=True)
class LaplaceReport:
    """How well a solution matches a solution of -Delta q = V'(q)."""

    laplace_residual: float
    o_ij_variance: float
    p_reconstruction: float
    o123_reconstruction: float

    @property
    def passed(self) -> bool:
        return (
            self.laplace_residual < LAPLACE_TOLERANCE
            and self.o_ij_variance < VARIANCE_TOLERANCE
            and self.p_reconstruction < LAPLACE_TOLERANCE
            and self.o123_reconstruction < LAPLACE_TOLERANCE
        )


def verify_laplace_correspondence(
    record: SolutionRecord, spec: HamiltonianSpec
) -> LaplaceReport:
    """Check a solution against the second-order system it encodes.

    The odd channels must be J_del of the even ones, q must solve
    -Delta q = V'(q), and each o_ij must be constant.
    """
    if spec.potential.DEPENDS_ON_P:
        raise UnsupportedError(
            f"The Laplace correspondence needs W independent of p; "
            f"{spec.potential.name!r} is not."
        )
    Z = record.field.values
    even_only = Z.copy()
    even_only[:, list(ODD_CHANNELS)] = 0.0
    # J_del maps even channels to odd ones only
    lifted = apply_Jdel(even_only)
    V_prime = gradient_H_field(Z, spec)[:, 0]
    return LaplaceReport(
        laplace_residual=l2_norm(-laplacian(Z[:, 0]) - V_prime),
        o_ij_variance=record.field.channel_variance(O_IJ_CHANNELS),
        p_reconstruction=l2_norm(Z[:, 1:4] - lifted[:, 1:4]),
        o123_reconstruction=l2_norm(Z[:, 7] - lifted[:, 7]),
    )


@dataclass(frozen=True)
class L2BoundRow:
    family_id: int
    action_value: float
    odd_l2: float
    lower: float

    def holds(self, action_cap: float) -> bool:
        return action_cap >= self.lower


@dataclass(frozen=True)
class L2BoundReport:
    action_cap: float
    h0: float
    h1: float
    rows: List[L2BoundRow]

    @property
    def holds(self) -> bool:
        return all(row.holds(self.action_cap) for row in self.rows)


def l2_bound_report(
    records: Sequence[SolutionRecord], spec: HamiltonianSpec, a: float
) -> L2BoundReport:
    """Check a >= h0 ||Z^odd||^2 - h1 on every record with action <= a."""
    h0, h1 = l2_bound_constants(spec)
    rows = [
        L2BoundRow(
            family_id=record.family_id,
            action_value=record.action_value,
            odd_l2=record.odd_l2,
            lower=h0 * record.odd_l2**2 - h1,
        )
        for record in records
        if record.action_value <= a
    ]
    return L2BoundReport(action_cap=a, h0=h0, h1=h1, rows=rows)


def cutoff_radius(
    spec: HamiltonianSpec,
    a: float,
    sobolev_margin: float = DEFAULT_SOBOLEV_MARGIN,
) -> float:
    """rho = 1 + sqrt((a + h1) / h0) * C_sob for the uncut Hamiltonian.

    The square root is floored at 1, so rho exceeds 1 even for caps below
    every possible action.
    """
    if sobolev_margin < 1:
        raise ValueError(
            f"Sobolev margin must be at least 1, got {sobolev_margin}."
        )
    h0, h1 = l2_bound_constants(spec.with_cutoff(None))
    bound = math.sqrt(max(0.0, (a + h1) / h0))
    return 1 + max(bound, 1.0) * sobolev_margin


def _match(
    left: Sequence[SolutionRecord],
    right: Sequence[SolutionRecord],
    radius: float,
) -> bool:
    """Whether the two family lists correspond one-to-one."""
    if len(left) != len(right):
        return False
    unused = list(right)
    for record in left:
        for candidate in unused:
            if family_distance(record.field, candidate.field) < radius:
                unused.remove(candidate)
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class CoincidenceReport:
    """Comparison of searches with H and with its cutoff at radius rho."""

    action_cap: float
    rho: float
    sobolev_margin: float
    plain: SearchResult
    cut: SearchResult
    full_match: bool
    capped_match: bool
    max_sup_odd: float

    @property
    def capped_counts(self) -> Tuple[int, int]:
        return (
            sum(r.action_value <= self.action_cap for r in self.plain.records),
            sum(r.action_value <= self.action_cap for r in self.cut.records),
        )

    @property
    def cutoff_inactive(self) -> bool:
        return self.max_sup_odd < self.rho - 1

    @property
    def passed(self) -> bool:
        return self.capped_match and self.cutoff_inactive


def cutoff_orbit_coincidence(
    spec: HamiltonianSpec,
    a: float,
    config: SolverSettings,
    grid: Sequence[int],
    seed: int = 0,
    sobolev_margin: float = DEFAULT_SOBOLEV_MARGIN,
) -> CoincidenceReport:
    """Search with H and with the cutoff H at the radius derived from `a`."""
    rho = cutoff_radius(spec, a, sobolev_margin)
    logger.info(
        "Cutoff radius rho = %.6g for action cap %.6g (Sobolev margin %g)",
        rho,
        a,
        sobolev_margin,
    )
    plain_spec = spec.with_cutoff(None)
    plain = deflated_search(plain_spec, config, grid, seed)
    cut = deflated_search(spec.with_cutoff(rho), config, grid, seed)
    radius = config.deflation_radius
    capped_plain = [r for r in plain.records if r.action_value <= a]
    capped_cut = [r for r in cut.records if r.action_value <= a]
    max_sup_odd = max(
        (record.field.sup_odd() for record in cut.records), default=0.0
    )
    return CoincidenceReport(
        action_cap=a,
        rho=rho,
        sobolev_margin=sobolev_margin,
        plain=plain,
        cut=cut,
        full_match=_match(plain.records, cut.records, radius),
        capped_match=_match(capped_plain, capped_cut, radius),
        max_sup_odd=max_sup_odd,
    )
