# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

from __future__ import annotations  # isort:skip

__all__ = [
    "BaseConfig",
    "BasePotential",
    "Cosine",
    "CosinePQ",
    "Zero",
]

import math
from typing import ClassVar, List, Optional, Tuple

import numpy as np
import pydantic
from pydantic import StrictFloat

from bft.potentials import register

TWO_PI = 2 * np.pi

# sup |s'| and sup |s''| of the bump s(x) = (1 - x^2)^3
BUMP_SLOPE = 96 / (25 * math.sqrt(5))
BUMP_CURVATURE = 6.0


class BaseConfig(
    pydantic.BaseModel,
    extra=pydantic.Extra.forbid,
    allow_mutation=False,
    alias_generator=lambda s: s.replace("_", "-"),
    underscore_attrs_are_private=True,
):
    """Base config for potential models."""


Gradient = Tuple[np.ndarray, np.ndarray]


class BasePotential:
    """A potential W(q, p), periodic in q, with bounded C^2 norm.

    `q` has shape (d, ...) and `p` has shape (d, 3, ...); results broadcast
    over the trailing axes.
    """

    name: ClassVar[str] = ""
    #: whether W has finite C^1 norm (needed for the L^2 bound)
    BOUNDED: ClassVar[bool] = True
    #: whether W depends on the momenta
    DEPENDS_ON_P: ClassVar[bool] = False

    class Config(BaseConfig):
        pass

    def __init__(self, d: int, config: Optional[BaseConfig] = None) -> None:
        self.d = d
        self.config = config if config is not None else self.Config()

    def value(self, q: np.ndarray, p: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def gradient(self, q: np.ndarray, p: np.ndarray) -> Gradient:
        raise NotImplementedError

    def hessian_apply(
        self, q: np.ndarray, p: np.ndarray, vq: np.ndarray, vp: np.ndarray
    ) -> Gradient:
        raise NotImplementedError

    def c1_norm(self) -> float:
        """max(sup |W|, sup |grad W|), in closed form."""
        raise NotImplementedError

    def c2_norm(self) -> float:
        """max of the C^1 norm and sup of the Hessian's Frobenius norm."""
        raise NotImplementedError

    def scaled(self, fraction: float) -> "BasePotential":
        """The same potential with every amplitude multiplied by `fraction`."""
        raise NotImplementedError

    @property
    def is_zero(self) -> bool:
        return self.c1_norm() == 0.0


@register(name="zero")
class Zero(BasePotential):
    """W = 0."""

    def value(self, q: np.ndarray, p: np.ndarray) -> np.ndarray:
        return np.zeros(q.shape[1:])

    def gradient(self, q: np.ndarray, p: np.ndarray) -> Gradient:
        return np.zeros_like(q), np.zeros_like(p)

    def hessian_apply(
        self, q: np.ndarray, p: np.ndarray, vq: np.ndarray, vp: np.ndarray
    ) -> Gradient:
        return np.zeros_like(vq), np.zeros_like(vp)

    def c1_norm(self) -> float:
        return 0.0

    def c2_norm(self) -> float:
        return 0.0

    def scaled(self, fraction: float) -> "Zero":
        return self


def _trailing(values: np.ndarray, ndim: int) -> np.ndarray:
    """Reshape a per-component vector to broadcast against (d, ...)."""
    return values.reshape(values.shape + (1,) * (ndim - 1))


@register(name="cosine")
class Cosine(BasePotential):
    """V(q) = sum_alpha (A_alpha / 4 pi^2) cos(2 pi q^alpha + phi_alpha).

    A single amplitude or phase is used for every component.
    """

    class Config(BaseConfig):
        amplitudes: List[StrictFloat] = [1.0]
        phases: Optional[List[StrictFloat]] = None

        @pydantic.validator("amplitudes", "phases", pre=True)
        def coerce_numbers(cls, v: object) -> object:
            # Allow integers in JSON/YAML files.
            if isinstance(v, list):
                return [float(x) if isinstance(x, int) else x for x in v]
            return v

        @pydantic.validator("amplitudes")
        def validate_amplitudes(cls, v: List[float]) -> List[float]:
            if not v:
                raise ValueError("At least one amplitude is required.")
            return v

    config: "Cosine.Config"

    def __init__(self, d: int, config: Optional[BaseConfig] = None) -> None:
        super().__init__(d, config)
        self.amplitudes = self._per_component(self.config.amplitudes)
        self.phases = self._per_component(self.config.phases or [0.0])

    def _per_component(self, values: List[float]) -> np.ndarray:
        if len(values) == 1:
            return np.full(self.d, float(values[0]))
        if len(values) != self.d:
            raise ValueError(
                f"Expected 1 or {self.d} potential coefficients, got "
                f"{len(values)}."
            )
        return np.array(values, dtype=float)

    def _angles(self, q: np.ndarray) -> np.ndarray:
        return TWO_PI * q + _trailing(self.phases, q.ndim)

    def value(self, q: np.ndarray, p: np.ndarray) -> np.ndarray:
        A = _trailing(self.amplitudes, q.ndim)
        return np.sum(A / (4 * np.pi**2) * np.cos(self._angles(q)), axis=0)

    def gradient(self, q: np.ndarray, p: np.ndarray) -> Gradient:
        A = _trailing(self.amplitudes, q.ndim)
        return -A / TWO_PI * np.sin(self._angles(q)), np.zeros_like(p)

    def hessian_apply(
        self, q: np.ndarray, p: np.ndarray, vq: np.ndarray, vp: np.ndarray
    ) -> Gradient:
        A = _trailing(self.amplitudes, q.ndim)
        return -A * np.cos(self._angles(q)) * vq, np.zeros_like(vp)

    def c1_norm(self) -> float:
        sup_value = float(np.sum(np.abs(self.amplitudes))) / (4 * np.pi**2)
        sup_slope = float(np.linalg.norm(self.amplitudes)) / TWO_PI
        return max(sup_value, sup_slope)

    def c2_norm(self) -> float:
        return max(self.c1_norm(), float(np.abs(self.amplitudes).max()))

    def scaled(self, fraction: float) -> "Cosine":
        config = self.config.copy(
            update={"amplitudes": list(fraction * self.amplitudes)}
        )
        return type(self)(self.d, config)


def bump(x: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """s(x) = (1 - x^2)^3 on |x| < 1 and 0 elsewhere, with s' and s''."""
    inside = np.abs(x) < 1
    u = np.where(inside, 1 - x**2, 0.0)
    s = u**3
    ds = -6 * x * u**2
    dds = -6 * u**2 + 24 * x**2 * u
    return s, np.where(inside, ds, 0.0), np.where(inside, dds, 0.0)


@register(name="cosine_pq")
class CosinePQ(Cosine):
    """The cosine potential plus B cos(2 pi q^1) s(p_1^1).

    s is a compactly supported C^2 bump, so W stays bounded in C^2 while
    depending on the momenta.
    """

    DEPENDS_ON_P = True

    class Config(Cosine.Config):
        coupling: StrictFloat = 1.0

        @pydantic.validator("coupling", pre=True)
        def coerce_coupling(cls, v: object) -> object:
            return float(v) if isinstance(v, int) else v

    config: "CosinePQ.Config"

    def value(self, q: np.ndarray, p: np.ndarray) -> np.ndarray:
        s, _, _ = bump(p[0, 0])
        B = self.config.coupling
        return super().value(q, p) + B * np.cos(TWO_PI * q[0]) * s

    def gradient(self, q: np.ndarray, p: np.ndarray) -> Gradient:
        dq, dp = super().gradient(q, p)
        s, ds, _ = bump(p[0, 0])
        B = self.config.coupling
        dq[0] = dq[0] - TWO_PI * B * np.sin(TWO_PI * q[0]) * s
        dp[0, 0] = dp[0, 0] + B * np.cos(TWO_PI * q[0]) * ds
        return dq, dp

    def hessian_apply(
        self, q: np.ndarray, p: np.ndarray, vq: np.ndarray, vp: np.ndarray
    ) -> Gradient:
        hq, hp = super().hessian_apply(q, p, vq, vp)
        s, ds, dds = bump(p[0, 0])
        B = self.config.coupling
        c = np.cos(TWO_PI * q[0])
        sn = np.sin(TWO_PI * q[0])
        hq[0] = hq[0] + (
            -(TWO_PI**2) * B * c * s * vq[0] - TWO_PI * B * sn * ds * vp[0, 0]
        )
        hp[0, 0] = hp[0, 0] + (
            -TWO_PI * B * sn * ds * vq[0] + B * c * dds * vp[0, 0]
        )
        return hq, hp

    def c1_norm(self) -> float:
        B = abs(self.config.coupling)
        sup_value = float(np.sum(np.abs(self.amplitudes))) / (
            4 * np.pi**2
        ) + B
        sup_slope = float(np.linalg.norm(self.amplitudes)) / TWO_PI + B * (
            math.hypot(TWO_PI, BUMP_SLOPE)
        )
        return max(sup_value, sup_slope)

    def c2_norm(self) -> float:
        B = abs(self.config.coupling)
        coupling_hessian = B * math.sqrt(
            TWO_PI**4 + 2 * (TWO_PI * BUMP_SLOPE) ** 2 + BUMP_CURVATURE**2
        )
        return max(
            self.c1_norm(),
            float(np.abs(self.amplitudes).max()) + coupling_hessian,
        )

    def scaled(self, fraction: float) -> "CosinePQ":
        config = self.config.copy(
            update={
                "amplitudes": list(fraction * self.amplitudes),
                "coupling": fraction * self.config.coupling,
            }
        )
        return type(self)(self.d, config)
