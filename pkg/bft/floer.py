# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

"""Floer curves d_s Z + J_del Z = grad H^rho_t(Z) on [-S, S] x T^3.

Curves are found as boundary value problems: the end slices are clamped
to two solutions and the interior minimises the discrete Floer energy,
whose minimisers are the zeros of the residual.  Nothing guarantees a
connecting curve exists, so a solve that stalls above tolerance is
returned flagged, not retried.
"""

__all__ = [
    "FloerCurve",
    "MonitorReport",
    "action_profile",
    "floer_residual",
    "max_principle_monitor",
    "s_derivative_matrix",
    "solve_floer_curve",
]

import logging
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from scipy import optimize, sparse

from bft.action import action_H, gradient_H_field, hessian_H_field
from bft.config import CurveSettings
from bft.errors import ConfigurationError
from bft.fields import CHANNELS, ODD_CHANNELS, FieldState
from bft.hamiltonian import HamiltonianSpec
from bft.solvers.newton import SolutionRecord
from bft.spectral import apply_Jdel, get_operators, laplacian

logger = logging.getLogger(__name__)

# one-sided stencils for the first two rows; the last two mirror them
_EDGE_STENCILS = (
    (0, (-25.0, 48.0, -36.0, 16.0, -3.0)),
    (1, (-3.0, -10.0, 18.0, -6.0, 1.0)),
)
_CENTRAL_STENCIL = (1.0, -8.0, 0.0, 8.0, -1.0)


@lru_cache(maxsize=8)
def s_derivative_matrix(Ns: int, h: float) -> sparse.csr_matrix:
    """Fourth-order finite differences in s, one-sided at both ends."""
    if Ns < 5:
        raise ValueError(f"Need at least 5 s-slices, got {Ns}.")
    D = sparse.lil_matrix((Ns, Ns))
    for j in range(2, Ns - 2):
        for offset, c in zip(range(-2, 3), _CENTRAL_STENCIL):
            D[j, j + offset] = c
    for row, stencil in _EDGE_STENCILS:
        for column, c in enumerate(stencil):
            D[row, column] = c
            D[Ns - 1 - row, Ns - 1 - column] = -c
    return (D / (12 * h)).tocsr()


@dataclass(frozen=True, eq=False)
class FloerCurve:
    """A curve sampled on Ns equally spaced s in [-S, S].

    `values` has shape (Ns, d, 8, N1, N2, N3); the first and last slices
    are exactly the endpoint fields.
    """

    S: float
    values: np.ndarray = field(repr=False)
    endpoints: Tuple[SolutionRecord, SolutionRecord] = field(repr=False)
    rho: Optional[float] = None
    converged: bool = False
    residual: Optional[float] = None

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=float)
        if values.ndim != 6 or values.shape[2] != CHANNELS:
            raise ValueError(
                f"Curve values must have shape (Ns, d, 8, N1, N2, N3), got "
                f"{values.shape}."
            )
        if values.shape[0] < 5:
            raise ValueError(
                f"Need at least 5 s-slices, got {values.shape[0]}."
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("Curve values must be finite.")
        start, end = self.endpoints
        if not (
            np.array_equal(values[0], start.field.values)
            and np.array_equal(values[-1], end.field.values)
        ):
            raise ValueError(
                "Curve end slices must equal the endpoint fields."
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def interpolate(
        cls,
        endpoints: Tuple[SolutionRecord, SolutionRecord],
        S: float,
        Ns: int,
        rho: Optional[float] = None,
    ) -> "FloerCurve":
        """The straight line between the endpoint fields."""
        start, end = (record.field for record in endpoints)
        if start.d != end.d or start.grid != end.grid:
            raise ValueError("Endpoints live on different grids.")
        weights = np.linspace(0.0, 1.0, Ns).reshape((Ns,) + (1,) * 5)
        values = (1 - weights) * start.values + weights * end.values
        values[0] = start.values
        values[-1] = end.values
        return cls(S=S, values=values, endpoints=endpoints, rho=rho)

    @property
    def Ns(self) -> int:
        return self.values.shape[0]

    @property
    def s(self) -> np.ndarray:
        return np.linspace(-self.S, self.S, self.Ns)

    @property
    def h(self) -> float:
        return 2 * self.S / (self.Ns - 1)

    @property
    def quadrature_weights(self) -> np.ndarray:
        w = np.full(self.Ns, self.h)
        w[[0, -1]] = self.h / 2
        return w

    def slice(self, j: int) -> FieldState:
        start = self.endpoints[0].field
        return FieldState(d=start.d, grid=start.grid, values=self.values[j])

    def with_values(
        self, values: np.ndarray, **changes: object
    ) -> "FloerCurve":
        return replace(self, values=values, **changes)  # type: ignore


def _s_derivative(curve: FloerCurve, values: np.ndarray) -> np.ndarray:
    D = s_derivative_matrix(curve.Ns, curve.h)
    return (D @ values.reshape(curve.Ns, -1)).reshape(values.shape)


def _jdel_slices(values: np.ndarray) -> np.ndarray:
    flat = values.reshape((-1, CHANNELS) + values.shape[-3:])
    return apply_Jdel(flat).reshape(values.shape)


def _require_cutoff(spec: HamiltonianSpec) -> float:
    if spec.rho is None:
        raise ConfigurationError("Floer curves need a cutoff radius (rho).")
    return spec.rho


def _residual(
    curve: FloerCurve, values: np.ndarray, spec: HamiltonianSpec
) -> np.ndarray:
    gradient = np.stack([gradient_H_field(v, spec) for v in values])
    return _s_derivative(curve, values) + _jdel_slices(values) - gradient


def _slice_norms_sq(values: np.ndarray) -> np.ndarray:
    grid_size = np.prod(values.shape[-3:])
    return np.sum(values**2, axis=tuple(range(1, values.ndim))) / grid_size


def floer_residual(
    curve: FloerCurve, spec: HamiltonianSpec
) -> Tuple[np.ndarray, float]:
    """Return R = d_s Z + J_del Z - grad H^rho(Z) and its space-time L2 norm.

    :raises ConfigurationError: if `spec` has no cutoff radius.
    """
    _require_cutoff(spec)
    R = _residual(curve, curve.values, spec)
    weighted = curve.quadrature_weights * _slice_norms_sq(R)
    norm = float(np.sqrt(np.sum(weighted)))
    return R, norm


class _FloerEnergy:
    """1/2 int |d_s Z|^2 + |J_del Z - grad H(Z)|^2 ds over the interior.

    With both ends clamped this differs from 1/2 int |R|^2 ds only by the
    action difference of the ends, so the two share their minimisers.  The
    s-derivative here is a neighbour difference, which penalises the
    odd-even s mode that the five-point stencil of the residual cannot see.

    The unknowns are y with interior = base + P y, where P multiplies each
    Fourier mode by (1 + |2 pi k|^2)^(-1/2).
    """

    def __init__(self, curve: FloerCurve, spec: HamiltonianSpec) -> None:
        self.curve = curve
        self.spec = spec
        self.base = np.array(curve.values)
        self.interior_shape = self.base[1:-1].shape
        ops = get_operators(curve.slice(0).grid)
        self.ops = ops
        self.symbol = 1.0 / np.sqrt(1.0 + ops.k_squared)
        self.weights = curve.quadrature_weights.reshape((-1,) + (1,) * 5)
        self.grid_size = float(np.prod(self.base.shape[-3:]))
        self.evaluations = 0

    def precondition(self, y: np.ndarray) -> np.ndarray:
        return self.ops.backward(self.ops.forward(y) * self.symbol)

    def values_for(self, y: np.ndarray) -> np.ndarray:
        values = self.base.copy()
        values[1:-1] += self.precondition(y.reshape(self.interior_shape))
        return values

    def __call__(self, y: np.ndarray) -> Tuple[float, np.ndarray]:
        self.evaluations += 1
        values = self.values_for(y)
        h = self.curve.h
        steps = np.diff(values, axis=0)
        gradient_A = _jdel_slices(values) - np.stack(
            [gradient_H_field(v, self.spec) for v in values]
        )
        wg = self.weights * gradient_A
        objective = (
            0.5
            * (float(np.sum(steps**2)) / h + float(np.sum(wg * gradient_A)))
            / self.grid_size
        )

        gradient = _jdel_slices(wg) - np.stack(
            [hessian_H_field(v, self.spec, r) for v, r in zip(values, wg)]
        )
        gradient[1:] += steps / h
        gradient[:-1] -= steps / h
        gradient = self.precondition(gradient[1:-1]) / self.grid_size
        return objective, gradient.ravel()


def solve_floer_curve(
    endpoints: Tuple[SolutionRecord, SolutionRecord],
    spec: HamiltonianSpec,
    settings: Optional[CurveSettings] = None,
) -> FloerCurve:
    """Relax the straight-line guess by minimising the Floer energy.

    The returned curve is the relaxed one unless the straight line has the
    smaller residual norm.  It has `converged` set when that norm is at
    most `settings.tol`.
    """
    settings = settings if settings is not None else CurveSettings()
    rho = _require_cutoff(spec)
    for record in endpoints:
        if record.field.sup_odd() > rho - 1:
            raise ValueError(
                f"Endpoint has sup |Z^odd| = {record.field.sup_odd():.6g}, "
                f"above rho - 1 = {rho - 1:.6g}."
            )
    curve = FloerCurve.interpolate(endpoints, settings.S, settings.Ns, rho)
    _, initial_norm = floer_residual(curve, spec)
    if initial_norm <= settings.tol:
        return curve.with_values(
            curve.values, converged=True, residual=initial_norm
        )

    problem = _FloerEnergy(curve, spec)
    y0 = np.zeros(int(np.prod(problem.interior_shape)))
    result = optimize.minimize(
        problem,
        y0,
        jac=True,
        method="L-BFGS-B",
        options={
            "maxiter": settings.max_iter,
            "maxcor": 20,
            "ftol": 0.0,
            "gtol": 0.0,
        },
    )
    logger.debug(
        "L-BFGS stopped after %d iterations, %d evaluations: %s",
        result.nit,
        problem.evaluations,
        result.message,
    )
    best = curve.with_values(problem.values_for(result.x))
    _, norm = floer_residual(best, spec)
    if norm > initial_norm:
        logger.debug(
            "Relaxed residual %.3e exceeds the initial %.3e; keeping the "
            "straight line",
            norm,
            initial_norm,
        )
        best, norm = curve, initial_norm
    converged = norm <= settings.tol
    if not converged:
        logger.warning(
            "Floer curve residual %.3e stays above %.1e; it may be that no "
            "connecting curve exists",
            norm,
            settings.tol,
        )
    return best.with_values(best.values, converged=converged, residual=norm)


def action_profile(curve: FloerCurve, spec: HamiltonianSpec) -> np.ndarray:
    """s -> A_H(Z(s, .)) on the curve's s-grid."""
    return np.array([action_H(values, spec) for values in curve.values])


@dataclass(frozen=True)
class MonitorReport:
    """Pointwise checks of the maximum principle along a curve."""

    rho: float
    sup_odd: float
    region_points: int
    min_subsolution: float
    actions: np.ndarray = field(repr=False)
    increments: np.ndarray = field(repr=False)
    increment_bounds: np.ndarray = field(repr=False)
    residual: float
    slack: float = 1e-6

    @property
    def bound_holds(self) -> bool:
        return self.sup_odd <= self.rho + self.slack

    @property
    def subsolution_holds(self) -> bool:
        return self.region_points == 0 or self.min_subsolution >= -self.slack

    @property
    def max_increment(self) -> float:
        if not self.increments.size:
            return 0.0
        return float(max(self.increments.max(), 0.0))

    @property
    def increments_within_bound(self) -> bool:
        tolerance = self.slack * (1 + self.residual)
        return bool(
            np.all(self.increments <= self.increment_bounds + tolerance)
        )


def max_principle_monitor(
    curve: FloerCurve,
    spec: Optional[HamiltonianSpec] = None,
    slack: float = 1e-6,
) -> MonitorReport:
    """Report sup |Z^odd| against rho and (d_s^2 + Delta) phi - d_s phi.

    phi = 1/2 |Z^odd|^2 is checked on the region where |Z^odd| > rho.
    Without `spec` only these pointwise checks are made; with it the
    action profile and its increment bounds are reported too.
    """
    rho = curve.rho if curve.rho is not None else (spec.rho if spec else None)
    if rho is None:
        raise ConfigurationError("Floer curves need a cutoff radius (rho).")
    odd = curve.values[:, :, list(ODD_CHANNELS)]
    magnitude = np.sqrt(np.sum(odd**2, axis=(1, 2)))
    phi = 0.5 * magnitude**2
    d_phi = _s_derivative(curve, phi)
    dd_phi = _s_derivative(curve, d_phi)
    subsolution = dd_phi + laplacian(phi) - d_phi
    region = magnitude > rho
    region_points = int(np.count_nonzero(region))
    min_subsolution = (
        float(subsolution[region].min()) if region_points else 0.0
    )

    if spec is None:
        actions = np.zeros(curve.Ns)
        increments = np.zeros(curve.Ns - 1)
        bounds = np.zeros(curve.Ns - 1)
        residual = 0.0
    else:
        actions = action_profile(curve, spec)
        increments = np.diff(actions)
        R, residual = floer_residual(curve, spec)
        r = np.sqrt(_slice_norms_sq(R))
        speed = np.sqrt(_slice_norms_sq(_s_derivative(curve, curve.values)))
        r_pair = np.maximum(r[:-1], r[1:])
        speed_pair = np.maximum(speed[:-1], speed[1:])
        bounds = curve.h * r_pair * (speed_pair + r_pair)

    return MonitorReport(
        rho=rho,
        sup_odd=float(magnitude.max()),
        region_points=region_points,
        min_subsolution=min_subsolution,
        actions=actions,
        increments=increments,
        increment_bounds=bounds,
        residual=residual,
        slack=slack,
    )
