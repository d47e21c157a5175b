# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

"""Newton-Krylov solution of J_del Z = grad H_t(Z)."""

__all__ = [
    "SolutionRecord",
    "newton_solve",
    "record_for",
    "spectral_preconditioner",
]

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from scipy.sparse.linalg import LinearOperator, gmres

from bft.action import action_H, hessian_H_field, l2_gradient
from bft.algebra import get_clifford_system
from bft.config import SolverSettings
from bft.errors import SolverError
from bft.fields import (
    CHANNELS,
    O_IJ_CHANNELS,
    ODD_CHANNELS,
    FieldState,
    l2_norm,
)
from bft.hamiltonian import HamiltonianSpec
from bft.spectral import apply_Jdel, get_operators

logger = logging.getLogger(__name__)

# sufficient decrease factor for the backtracking line search
ARMIJO = 1e-4
MAX_BACKTRACKS = 12


@dataclass(frozen=True)
class SolutionRecord:
    """A converged solution together with its certificate."""

    field: FieldState = field(repr=False)
    action_value: float
    residual: float
    odd_l2: float
    family_id: int = -1
    o_ij_variance: float = 0.0

    def with_family(self, family_id: int) -> "SolutionRecord":
        return replace(self, family_id=family_id)


def record_for(Z: FieldState, spec: HamiltonianSpec) -> SolutionRecord:
    return SolutionRecord(
        field=Z,
        action_value=action_H(Z.values, spec),
        residual=l2_norm(l2_gradient(Z.values, spec)),
        odd_l2=Z.odd_l2(),
        o_ij_variance=Z.channel_variance(O_IJ_CHANNELS),
    )


@lru_cache(maxsize=8)
def _inverse_symbols(grid: Tuple[int, int, int]) -> np.ndarray:
    """Per-mode inverses of sum_i J_i (2 pi i k_i) - Id_odd.

    Modes where every (Nyquist-zeroed) wavenumber vanishes get -Id.
    """
    ops = get_operators(grid)
    J = get_clifford_system(3).J
    symbol = sum(
        D[..., None, None] * J_i.astype(float) for J_i, D in zip(J, ops.D)
    )
    odd = np.zeros((CHANNELS, CHANNELS))
    odd[ODD_CHANNELS, ODD_CHANNELS] = 1.0
    symbol = symbol - odd
    degenerate = ops.k_squared == 0
    symbol[degenerate] = -np.eye(CHANNELS)
    inverse = np.linalg.inv(symbol)
    inverse.setflags(write=False)
    return inverse


def spectral_preconditioner(values: np.ndarray) -> np.ndarray:
    """Apply the exact inverse of the W = 0 linearization J_del - Id_odd."""
    ops = get_operators(tuple(values.shape[-3:]))  # type: ignore[arg-type]
    inverse = _inverse_symbols(ops.grid)
    hat = ops.forward(values)
    return ops.backward(np.einsum("xyzab,dbxyz->daxyz", inverse, hat))


def _linear_operators(
    Z: FieldState, spec: HamiltonianSpec
) -> Tuple[LinearOperator, LinearOperator]:
    shape = Z.values.shape
    size = Z.values.size

    def jacobian(v: np.ndarray) -> np.ndarray:
        v = v.reshape(shape)
        return (apply_Jdel(v) - hessian_H_field(Z.values, spec, v)).ravel()

    def precondition(v: np.ndarray) -> np.ndarray:
        return spectral_preconditioner(v.reshape(shape)).ravel()

    return (
        LinearOperator((size, size), matvec=jacobian, dtype=float),
        LinearOperator((size, size), matvec=precondition, dtype=float),
    )


def _newton(
    Z: FieldState, spec: HamiltonianSpec, settings: SolverSettings
) -> FieldState:
    residual = l2_gradient(Z.values, spec)
    norm = l2_norm(residual)
    best = norm
    for iteration in range(settings.max_newton):
        if norm <= settings.tol_residual:
            return Z
        A, M = _linear_operators(Z, spec)
        krylov = settings.krylov
        step, info = gmres(
            A,
            -residual.ravel(),
            rtol=krylov.tol,
            atol=0.0,
            restart=krylov.restart,
            maxiter=krylov.max_iter,
            M=M,
        )
        if info < 0:
            raise SolverError("Krylov solver broke down", best_residual=best)
        if info > 0:
            logger.debug("GMRES stopped after %d cycles unconverged", info)
        step = step.reshape(Z.values.shape)

        # Backtracking on the residual norm.
        lam = 1.0
        for _ in range(MAX_BACKTRACKS):
            trial = Z.with_values(Z.values + lam * step)
            trial_residual = l2_gradient(trial.values, spec)
            trial_norm = l2_norm(trial_residual)
            if trial_norm <= (1 - ARMIJO * lam) * norm:
                break
            lam /= 2
        else:
            raise SolverError("Krylov stagnation", best_residual=best)
        Z, residual, norm = trial, trial_residual, trial_norm
        best = min(best, norm)
        logger.debug(
            "Newton iteration %d: residual %.3e (step %.3g)",
            iteration + 1,
            norm,
            lam,
        )
    if norm <= settings.tol_residual:
        return Z
    raise SolverError(
        f"Newton did not converge in {settings.max_newton} iterations",
        best_residual=best,
    )


def newton_solve(
    seed: FieldState,
    spec: HamiltonianSpec,
    config: Optional[SolverSettings] = None,
) -> SolutionRecord:
    """Solve from `seed`, ramping the potential amplitude up to `spec`.

    :raises SolverError: if any continuation stage fails to converge.
    """
    settings = config if config is not None else SolverSettings()
    if seed.d != spec.d:
        raise ValueError(
            f"Seed has d = {seed.d}, Hamiltonian has d = {spec.d}."
        )
    steps = settings.continuation_steps
    if spec.potential.is_zero:
        steps = 1
    Z = seed
    for stage in range(1, steps + 1):
        fraction = stage / steps
        Z = _newton(Z, spec.with_amplitude(fraction), settings)
        logger.debug("Continuation stage %d/%d converged", stage, steps)
    return record_for(Z.canonicalize(), spec)
