# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

"""The action functionals and the residual of J_del Z = grad H_t(Z).

Integrals over T^3 are grid means, which is the exact trapezoidal rule
for band-limited integrands.
"""

__all__ = [
    "EQUATION_NAMES",
    "action",
    "action_H",
    "action_quadratic_form",
    "equation_residuals",
    "gradient_H_field",
    "hessian_H_field",
    "l2_gradient",
    "residual_norm",
]

from typing import Dict

import numpy as np

from bft.fields import (
    CHANNEL_NAMES,
    CHANNELS,
    ODD_CHANNELS,
    grid_points,
    l2_inner,
    l2_norm,
)
from bft.hamiltonian import HamiltonianSpec
from bft.spectral import FieldLike, apply_Jdel, field_values

EQUATION_NAMES = tuple(name.upper() for name in CHANNEL_NAMES)

_ODD_WEIGHTS = np.isin(np.arange(CHANNELS), ODD_CHANNELS).astype(float)[
    None, :, None, None, None
]


def _times(values: np.ndarray) -> np.ndarray:
    return grid_points(values.shape[-3:])


def action(Z: FieldLike) -> float:
    """sum_i int theta_i(d_i Z) dV = int <Z^odd, J_del Z> dV."""
    values = field_values(Z)
    return l2_inner(values * _ODD_WEIGHTS, apply_Jdel(values))


def action_quadratic_form(Z: FieldLike) -> float:
    """1/2 <Z, J_del Z>, equal to `action` after integrating by parts."""
    values = field_values(Z)
    return 0.5 * l2_inner(values, apply_Jdel(values))


def action_H(Z: FieldLike, spec: HamiltonianSpec) -> float:
    values = field_values(Z)
    H = spec.value(values, _times(values))
    return action(values) - float(np.mean(H))


def gradient_H_field(Z: FieldLike, spec: HamiltonianSpec) -> np.ndarray:
    """grad H_t(Z(t)) at every grid point."""
    values = field_values(Z)
    return spec.gradient(values, _times(values))


def hessian_H_field(
    Z: FieldLike, spec: HamiltonianSpec, direction: np.ndarray
) -> np.ndarray:
    values = field_values(Z)
    return spec.hessian_apply(values, direction, _times(values))


def l2_gradient(Z: FieldLike, spec: HamiltonianSpec) -> np.ndarray:
    """The L2 gradient J_del Z - grad H of the action A_H."""
    values = field_values(Z)
    return apply_Jdel(values) - gradient_H_field(values, spec)


def residual_norm(Z: FieldLike, spec: HamiltonianSpec) -> float:
    return l2_norm(l2_gradient(Z, spec))


def equation_residuals(
    Z: FieldLike, spec: HamiltonianSpec
) -> Dict[str, float]:
    """L2 residual of each of the eight component equations.

    Keys are Q, P1, P2, P3, O23, O31, O12, O123; each value is taken over
    all target components.
    """
    residual = l2_gradient(Z, spec)
    return {
        name: l2_norm(residual[:, c]) for c, name in enumerate(EQUATION_NAMES)
    }

