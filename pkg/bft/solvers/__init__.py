# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

__all__ = [
    "CoincidenceReport",
    "L2BoundReport",
    "LaplaceReport",
    "MorseTrajectory",
    "SearchResult",
    "SeedOutcome",
    "SolutionRecord",
    "adiabatic_residual",
    "cutoff_orbit_coincidence",
    "cutoff_radius",
    "deflated_search",
    "l2_bound_report",
    "morse_flow",
    "newton_solve",
    "verify_laplace_correspondence",
]

from bft.solvers.morse import MorseTrajectory, adiabatic_residual, morse_flow
from bft.solvers.newton import SolutionRecord, newton_solve
from bft.solvers.search import (
    CoincidenceReport,
    L2BoundReport,
    LaplaceReport,
    SearchResult,
    SeedOutcome,
    cutoff_orbit_coincidence,
    cutoff_radius,
    deflated_search,
    l2_bound_report,
    verify_laplace_correspondence,
)
