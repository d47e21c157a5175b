# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

"""Hamiltonians H_t(Z) = 1/2 |Z^odd|^2 + W_t(q, p) and their cutoffs.

Every evaluation is vectorised: `values` has shape (d, 8, ...) and `t`
has shape (3, ...) with matching trailing axes, so the same code serves
single points and whole grids.
"""

__all__ = [
    "HamiltonianSpec",
    "TimeProfile",
    "cutoff_chi",
    "cutoff_derivatives",
    "eval_H",
    "grad_H",
    "hess_H_apply",
    "l2_bound_constants",
]

import logging
from dataclasses import dataclass, replace
from typing import Optional, Sequence, Tuple

import numpy as np

from bft.errors import UnsupportedError
from bft.fields import CHANNELS, ODD_CHANNELS
from bft.potentials.potentials import BasePotential

logger = logging.getLogger(__name__)

# sup of the quintic smoothstep slope, attained at the midpoint
MAX_CUTOFF_SLOPE = 15 / 8

_Q = 0
_P = slice(1, 4)


def _smoothstep(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    x = np.clip(x, 0.0, 1.0)
    sigma = x**3 * (10 - 15 * x + 6 * x**2)
    d_sigma = 30 * x**2 * (1 - x) ** 2
    dd_sigma = 60 * x * (1 - x) * (1 - 2 * x)
    return sigma, d_sigma, dd_sigma


def cutoff_derivatives(
    rho: float, s: np.ndarray
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return chi_rho(s) with its first and second derivatives."""
    x = np.asarray(s, dtype=float) - rho + 1
    sigma, d_sigma, dd_sigma = _smoothstep(x)
    return 1 - sigma, -d_sigma, -dd_sigma


def cutoff_chi(rho: float, s: np.ndarray) -> np.ndarray:
    """C^2 cutoff: 1 on [0, rho - 1], 0 on [rho, inf)."""
    if rho <= 1:
        raise ValueError(f"Cutoff radius must exceed 1, got {rho}.")
    return cutoff_derivatives(rho, s)[0]


@dataclass(frozen=True)
class TimeProfile:
    """tau(t) = 1 + amplitude * cos(2 pi mode . t)."""

    amplitude: float = 0.0
    mode: Tuple[int, int, int] = (1, 0, 0)

    def __post_init__(self) -> None:
        if abs(self.amplitude) >= 1:
            raise ValueError(
                f"Time profile amplitude must lie in (-1, 1), got "
                f"{self.amplitude}."
            )

    def __call__(self, t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        mode = np.array(self.mode, dtype=float).reshape(
            (3,) + (1,) * (t.ndim - 1)
        )
        phase = 2 * np.pi * np.sum(mode * t, axis=0)
        return 1 + self.amplitude * np.cos(phase)

    @property
    def sup(self) -> float:
        return 1 + abs(self.amplitude)


@dataclass(frozen=True)
class HamiltonianSpec:
    """A Hamiltonian on B, optionally cut off at radius `rho`."""

    d: int
    potential: BasePotential
    rho: Optional[float] = None
    time_profile: Optional[TimeProfile] = None

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError(f"Target dimension must be positive: {self.d}")
        if self.potential.d != self.d:
            raise ValueError(
                f"Potential is set up for d = {self.potential.d}, not "
                f"{self.d}."
            )
        if self.rho is not None and self.rho <= 1:
            raise ValueError(f"Cutoff radius must exceed 1, got {self.rho}.")

    def with_amplitude(self, fraction: float) -> "HamiltonianSpec":
        return replace(self, potential=self.potential.scaled(fraction))

    def with_cutoff(self, rho: Optional[float]) -> "HamiltonianSpec":
        return replace(self, rho=rho)

    def _tau(self, t: Optional[np.ndarray], shape: Sequence[int]) -> object:
        if self.time_profile is None or t is None:
            return 1.0
        return np.broadcast_to(self.time_profile(t), shape)

    def _check(self, values: np.ndarray) -> np.ndarray:
        values = np.asarray(values, dtype=float)
        if values.shape[:2] != (self.d, CHANNELS):
            values = values.reshape((self.d, CHANNELS) + values.shape[1:])
        return values

    def _cutoff(
        self, odd: np.ndarray
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        s = np.sqrt(np.sum(odd**2, axis=(0, 1)))
        if self.rho is None:
            one = np.ones_like(s)
            return s, one, 0 * s, 0 * s
        chi, d_chi, dd_chi = cutoff_derivatives(self.rho, s)
        return s, chi, d_chi, dd_chi

    def value(
        self, values: np.ndarray, t: Optional[np.ndarray] = None
    ) -> np.ndarray:
        values = self._check(values)
        odd = values[:, ODD_CHANNELS]
        s, chi, _, _ = self._cutoff(odd)
        W = self.potential.value(values[:, _Q], values[:, _P])
        return 0.5 * s**2 + chi * self._tau(t, s.shape) * W

    def gradient(
        self, values: np.ndarray, t: Optional[np.ndarray] = None
    ) -> np.ndarray:
        values = self._check(values)
        odd = values[:, ODD_CHANNELS]
        s, chi, d_chi, _ = self._cutoff(odd)
        tau = self._tau(t, s.shape)
        q, p = values[:, _Q], values[:, _P]
        W = self.potential.value(q, p)
        dW_q, dW_p = self.potential.gradient(q, p)

        out = np.zeros_like(values)
        out[:, _Q] = chi * tau * dW_q
        out[:, ODD_CHANNELS] = odd
        out[:, _P] += chi * tau * dW_p
        if self.rho is not None:
            radial = d_chi * tau * W / np.where(s > 0, s, 1.0)
            out[:, ODD_CHANNELS] += radial * odd
        return out

    def hessian_apply(
        self,
        values: np.ndarray,
        direction: np.ndarray,
        t: Optional[np.ndarray] = None,
    ) -> np.ndarray:
        """Derivative of `gradient` at `values` along `direction`."""
        values = self._check(values)
        direction = self._check(direction)
        odd = values[:, ODD_CHANNELS]
        v_odd = direction[:, ODD_CHANNELS]
        s, chi, d_chi, dd_chi = self._cutoff(odd)
        tau = self._tau(t, s.shape)
        q, p = values[:, _Q], values[:, _P]
        vq, vp = direction[:, _Q], direction[:, _P]
        hq, hp = self.potential.hessian_apply(q, p, vq, vp)

        out = np.zeros_like(direction)
        out[:, ODD_CHANNELS] = v_odd
        out[:, _Q] = chi * tau * hq
        out[:, _P] += chi * tau * hp
        if self.rho is None:
            return out

        W = self.potential.value(q, p)
        dW_q, dW_p = self.potential.gradient(q, p)
        safe_s = np.where(s > 0, s, 1.0)
        ds = np.sum(odd * v_odd, axis=(0, 1)) / safe_s
        dW = np.sum(dW_q * vq, axis=0) + np.sum(dW_p * vp, axis=(0, 1))

        out[:, _Q] += d_chi * ds * tau * dW_q
        out[:, _P] += d_chi * ds * tau * dW_p
        radial_rate = (dd_chi * ds * W - d_chi * W * ds / safe_s + d_chi * dW)
        out[:, ODD_CHANNELS] += tau * (
            radial_rate / safe_s * odd + d_chi * W / safe_s * v_odd
        )
        return out

    def c1_norm(self) -> float:
        """C^1 norm of W_t over B and all t."""
        sup_tau = 1.0 if self.time_profile is None else self.time_profile.sup
        return self.potential.c1_norm() * sup_tau


def eval_H(
    spec: HamiltonianSpec, t: np.ndarray, Z_point: np.ndarray
) -> float:
    """H_t at one point; `Z_point` has shape (d, 8) or 8d entries."""
    return float(spec.value(np.reshape(Z_point, (spec.d, CHANNELS)), t))


def grad_H(
    spec: HamiltonianSpec, t: np.ndarray, Z_point: np.ndarray
) -> np.ndarray:
    return spec.gradient(np.reshape(Z_point, (spec.d, CHANNELS)), t)


def hess_H_apply(
    spec: HamiltonianSpec, t: np.ndarray, Z_point: np.ndarray, v: np.ndarray
) -> np.ndarray:
    return spec.hessian_apply(
        np.reshape(Z_point, (spec.d, CHANNELS)),
        np.reshape(v, (spec.d, CHANNELS)),
        t,
    )


def l2_bound_constants(spec: HamiltonianSpec) -> Tuple[float, float]:
    """Constants with a >= h0 ||Z^odd||^2 - h1 on solutions of action <= a.

    Follows from dH(xi) - H >= 1/4 |Z^odd|^2 - (c^2 + c) with c the C^1
    norm of W; the cutoff adds at most (15/8) rho c through chi'.
    """
    if not spec.potential.BOUNDED:
        raise UnsupportedError(
            f"Potential {spec.potential.name!r} has no finite C^1 norm."
        )
    c = spec.c1_norm()
    h1 = c**2 + c
    if spec.rho is not None:
        h1 += MAX_CUTOFF_SLOPE * spec.rho * c
    logger.debug("L2 bound constants: h0=0.25 h1=%.6g (c=%.6g)", h1, c)
    return 0.25, h1
