# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

"""Gradient lines of the Morse function and the adiabatic system.

The flow d_s q = Delta q + V'(q), d_s o_ij = Delta o_ij is stepped with
the Laplacian implicit (an exact Fourier factor) and V' explicit.
"""

__all__ = [
    "MorseTrajectory",
    "lift_odd",
    "morse_energy",
    "morse_flow",
    "adiabatic_residual",
]

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from bft.config import FlowSettings
from bft.errors import SolverError, UnsupportedError
from bft.fields import (
    CHANNELS,
    ODD_CHANNELS,
    O_IJ_CHANNELS,
    grid_points,
    l2_norm,
)
from bft.hamiltonian import HamiltonianSpec
from bft.spectral import apply_Jdel, derivative, get_operators

logger = logging.getLogger(__name__)

# relative distance to s_max treated as arrival
S_END_TOLERANCE = 1e-12


@dataclass(frozen=True, eq=False)
class MorseTrajectory:
    """Accepted states of a Morse flow.

    `q` has shape (n, d, N1, N2, N3) and `o` has shape (n, d, 3, N1, N2, N3)
    for n recorded parameter values `s`.
    """

    s: np.ndarray
    q: np.ndarray = field(repr=False)
    o: np.ndarray = field(repr=False)
    energies: np.ndarray = field(repr=False)
    converged: bool = False
    halvings: int = 0

    @property
    def steps(self) -> np.ndarray:
        return np.diff(self.s)

    @property
    def energy_increments(self) -> np.ndarray:
        return np.diff(self.energies)

    def even_values(self, n: int) -> np.ndarray:
        """Even part of state n embedded into (d, 8, N1, N2, N3)."""
        q = self.q[n]
        values = np.zeros(q.shape[:1] + (CHANNELS,) + q.shape[1:])
        values[:, 0] = q
        values[:, O_IJ_CHANNELS] = self.o[n]
        return values


def _check_potential(spec: HamiltonianSpec) -> None:
    if spec.potential.DEPENDS_ON_P:
        raise UnsupportedError(
            f"The Morse flow needs W independent of p; "
            f"{spec.potential.name!r} is not."
        )


def _potential_slope(spec: HamiltonianSpec, q: np.ndarray) -> np.ndarray:
    """dW_t/dq on a grid with every odd coordinate zero."""
    values = np.zeros(q.shape[:1] + (CHANNELS,) + q.shape[1:])
    values[:, 0] = q
    return spec.gradient(values, grid_points(q.shape[-3:]))[:, 0]


def morse_energy(
    spec: HamiltonianSpec, q: np.ndarray, o: np.ndarray
) -> float:
    """f = 1/2 int |grad q|^2 + |grad o|^2 - int W_t(q, 0)."""
    gradient_energy = 0.0
    for i in (1, 2, 3):
        gradient_energy += np.mean(np.sum(derivative(q, i) ** 2, axis=0))
        gradient_energy += np.mean(np.sum(derivative(o, i) ** 2, axis=(0, 1)))
    values = np.zeros(q.shape[:1] + (CHANNELS,) + q.shape[1:])
    values[:, 0] = q
    W = spec.value(values, grid_points(q.shape[-3:]))
    return float(0.5 * gradient_energy - np.mean(W))


def _step(
    spec: HamiltonianSpec, q: np.ndarray, o: np.ndarray, h: float
) -> Tuple[np.ndarray, np.ndarray]:
    ops = get_operators(tuple(q.shape[-3:]))  # type: ignore[arg-type]
    factor = 1.0 / (1.0 + h * ops.k_squared)
    rhs = q + h * _potential_slope(spec, q)
    q_next = ops.backward(ops.forward(rhs) * factor)
    o_next = ops.backward(ops.forward(o) * factor)
    return q_next, o_next


def morse_flow(
    q0: np.ndarray,
    o0: np.ndarray,
    spec: HamiltonianSpec,
    flow: Optional[FlowSettings] = None,
) -> MorseTrajectory:
    """Follow the negative L2 gradient of the Morse function from (q0, o0).

    Steps that raise the energy by more than `energy_slack` are halved.

    :raises SolverError: if the step falls below `min_step`.
    """
    _check_potential(spec)
    flow = flow if flow is not None else FlowSettings()
    q = np.array(q0, dtype=float)
    o = np.array(o0, dtype=float)
    if q.ndim != 4 or o.shape != q.shape[:1] + (3,) + q.shape[1:]:
        raise ValueError(
            f"Expected q of shape (d, N1, N2, N3) and o of shape "
            f"(d, 3, N1, N2, N3), got {q.shape} and {o.shape}."
        )
    if q.shape[0] != spec.d:
        raise ValueError(f"q has d = {q.shape[0]}, expected {spec.d}.")

    h = flow.step
    s = 0.0
    energy = morse_energy(spec, q, o)
    s_values: List[float] = [s]
    qs, os_, energies = [q], [o], [energy]
    halvings = 0
    converged = False
    while flow.s_max - s > S_END_TOLERANCE * flow.s_max:
        remaining = flow.s_max - s
        # absorb a sliver left over by rounding into this step
        if remaining <= h * (1 + S_END_TOLERANCE):
            h = remaining
        q_next, o_next = _step(spec, q, o, h)
        energy_next = morse_energy(spec, q_next, o_next)
        if energy_next - energy > flow.energy_slack:
            h /= 2
            halvings += 1
            logger.debug("Energy rose at s=%.6g; halving step to %.3g", s, h)
            if h < flow.min_step:
                raise SolverError(
                    f"Morse flow step fell below {flow.min_step:g} at "
                    f"s = {s:.6g}"
                )
            continue
        velocity = np.sqrt(
            l2_norm(q_next - q) ** 2 + l2_norm(o_next - o) ** 2
        ) / h
        q, o, energy, s = q_next, o_next, energy_next, s + h
        s_values.append(s)
        qs.append(q)
        os_.append(o)
        energies.append(energy)
        if velocity < flow.convergence_tol:
            converged = True
            break
        h = min(2 * h, flow.step)
    logger.debug(
        "Morse flow reached s=%.6g in %d steps (converged: %s)",
        s,
        len(s_values) - 1,
        converged,
    )
    return MorseTrajectory(
        s=np.array(s_values),
        q=np.array(qs),
        o=np.array(os_),
        energies=np.array(energies),
        converged=converged,
        halvings=halvings,
    )


def lift_odd(even_values: np.ndarray) -> np.ndarray:
    """Fill p_i and o123 from the even channels: Z^odd = (J_del Z^even)^odd.

    This is the slow manifold on which the odd rows of the adiabatic
    system hold at epsilon = 0.
    """
    values = np.array(even_values, dtype=float)
    values[:, list(ODD_CHANNELS)] = 0.0
    lifted = apply_Jdel(values)
    values[:, list(ODD_CHANNELS)] = lifted[:, list(ODD_CHANNELS)]
    return values


def adiabatic_residual(
    trajectory: MorseTrajectory, spec: HamiltonianSpec, epsilon: float
) -> float:
    """max over s of the lifted adiabatic residual, divided by epsilon.

    Each accepted step is evaluated with the splitting the flow used: the
    Laplacian at the new state, the potential slope at the old one.  For
    epsilon = 0 the unscaled residual is returned.

    :raises ValueError: for a negative epsilon, or a trajectory with a
        step too short to difference over.
    """
    _check_potential(spec)
    if epsilon < 0:
        raise ValueError(f"epsilon must be nonnegative, got {epsilon}.")
    steps = trajectory.steps
    if steps.size:
        floor = S_END_TOLERANCE * max(float(trajectory.s[-1]), 1.0)
        if steps.min() <= floor:
            raise ValueError(
                f"Trajectory has a step of {steps.min():.3g}; steps must "
                f"exceed {floor:.3g} to difference in s."
            )
    weights = np.ones(CHANNELS)
    weights[list(ODD_CHANNELS)] = epsilon
    weights = weights[None, :, None, None, None]

    worst = 0.0
    previous = lift_odd(trajectory.even_values(0))
    for n, h in enumerate(trajectory.steps, start=1):
        current = lift_odd(trajectory.even_values(n))
        forcing = np.zeros_like(current)
        forcing[:, 0] = _potential_slope(spec, trajectory.q[n - 1])
        forcing[:, list(ODD_CHANNELS)] = current[:, list(ODD_CHANNELS)]
        residual = (
            weights * (current - previous) / h
            + apply_Jdel(current)
            - forcing
        )
        worst = max(worst, l2_norm(residual))
        previous = current
    if epsilon == 0:
        return worst
    return worst / epsilon
