# Copyright 2026 The bft developers.  This software is licensed under the
# GNU General Public License version 3 (see the file LICENSE).

"""Run configuration files (JSON or YAML)."""

from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Type

import pydantic
from pydantic import StrictStr

from bft.errors import ConfigurationError
from bft.hamiltonian import HamiltonianSpec, TimeProfile
from bft.potentials import POTENTIALS
from bft.potentials.potentials import BaseConfig, BasePotential
from bft.utils import canonical_hash, load_yaml


class ModelConfigDefaults(
    pydantic.BaseModel,
    extra=pydantic.Extra.forbid,
    alias_generator=lambda s: s.replace("_", "-"),
    allow_population_by_field_name=True,
    underscore_attrs_are_private=True,
):
    """Define bft's model defaults."""


def _validate_potential_config(
    potential: Type[BasePotential],
    values: Dict[StrictStr, Any],
    own_fields: List[str],
) -> Dict[StrictStr, Any]:
    settings = values.pop("settings", None) or {}
    if isinstance(settings, BaseConfig):
        settings = settings.dict(by_alias=True)
    potential_config = dict(settings)
    for k in potential.Config.schema()["properties"].keys():
        # configuration key belongs to the potential
        if k in values and k not in own_fields:
            potential_config[k] = values.pop(k)
    values["settings"] = potential.Config.parse_obj(potential_config)
    return values


class PotentialConfig(ModelConfigDefaults):
    """The potential W, e.g. `{"variant": "cosine", "amplitudes": [1.0]}`."""

    variant: StrictStr = "zero"
    settings: Optional[BaseConfig] = None

    @pydantic.root_validator(pre=True)
    def move_potential_settings(
        cls, values: Dict[StrictStr, Any]
    ) -> Dict[StrictStr, Any]:
        """Delegate variant-specific settings to the potential."""
        base_values = values.copy()
        variant = base_values.setdefault("variant", "zero")
        if variant not in POTENTIALS:
            raise ValueError(
                f"Unknown potential {variant!r}; choose from "
                f"{', '.join(sorted(POTENTIALS))}."
            )
        return _validate_potential_config(
            potential=POTENTIALS[variant],
            values=base_values,
            own_fields=list(cls.__fields__.keys()),
        )

    def build(self, d: int) -> BasePotential:
        return POTENTIALS[self.variant](d, self.settings)


class TimeProfileConfig(ModelConfigDefaults):
    amplitude: float = 0.0
    mode: Tuple[int, int, int] = (1, 0, 0)

    @pydantic.validator("amplitude")
    def validate_amplitude(cls, v: float) -> float:
        if abs(v) >= 1:
            raise ValueError("amplitude must lie strictly between -1 and 1")
        return v


class HamiltonianConfig(ModelConfigDefaults):
    d: pydantic.PositiveInt = 1
    potential: PotentialConfig = PotentialConfig()
    rho: Optional[float] = None
    time_profile: Optional[TimeProfileConfig] = None

    @pydantic.validator("rho")
    def validate_rho(cls, v: Optional[float]) -> Optional[float]:
        if v is not None and v <= 1:
            raise ValueError("cutoff radius must exceed 1")
        return v

    def build(self) -> HamiltonianSpec:
        profile = None
        if self.time_profile is not None:
            profile = TimeProfile(
                amplitude=self.time_profile.amplitude,
                mode=self.time_profile.mode,
            )
        try:
            potential = self.potential.build(self.d)
        except ValueError as e:
            raise ConfigurationError(f"Invalid potential: {e}")
        return HamiltonianSpec(
            d=self.d, potential=potential, rho=self.rho, time_profile=profile
        )


class KrylovSettings(ModelConfigDefaults):
    max_iter: pydantic.PositiveInt = 200
    restart: pydantic.PositiveInt = 60
    tol: pydantic.PositiveFloat = 1e-9


class SolverSettings(ModelConfigDefaults):
    """Newton-Krylov search settings."""

    tol_residual: pydantic.PositiveFloat = 1e-10
    max_newton: pydantic.PositiveInt = 30
    krylov: KrylovSettings = KrylovSettings()
    deflation_radius: pydantic.PositiveFloat = 1e-3
    continuation_steps: pydantic.PositiveInt = 4
    #: random perturbations per lattice point
    random_seeds: pydantic.NonNegativeInt = 8
    seed_amplitude: pydantic.NonNegativeFloat = 0.1
    seed_kmax: pydantic.PositiveInt = 2
    jobs: pydantic.PositiveInt = 1


class FlowScheme(str, Enum):
    semi_implicit_spectral = "semi_implicit_spectral"


class FlowSettings(ModelConfigDefaults):
    """Morse flow and adiabatic settings."""

    scheme: FlowScheme = FlowScheme.semi_implicit_spectral
    step: pydantic.PositiveFloat = 0.05
    epsilon: pydantic.NonNegativeFloat = 0.0
    s_max: pydantic.PositiveFloat = 20.0
    convergence_tol: pydantic.PositiveFloat = 1e-10
    min_step: pydantic.PositiveFloat = 1e-8
    energy_slack: pydantic.PositiveFloat = 1e-9


class CurveSettings(ModelConfigDefaults):
    """Floer curve settings."""

    S: pydantic.PositiveFloat = 4.0
    Ns: pydantic.conint(ge=5) = 32  # type: ignore[valid-type]
    max_iter: pydantic.PositiveInt = 500
    tol: pydantic.PositiveFloat = 1e-8
    monitor_slack: pydantic.PositiveFloat = 1e-6


class RunConfig(ModelConfigDefaults):
    """A bft run configuration file."""

    grid: Tuple[int, int, int] = (16, 16, 16)
    hamiltonian: HamiltonianConfig = HamiltonianConfig()
    solver: SolverSettings = SolverSettings()
    flow: FlowSettings = FlowSettings()
    curve: CurveSettings = CurveSettings()
    seed: pydantic.NonNegativeInt = 0
    action_cap: float = 0.0

    @pydantic.validator("grid", pre=True)
    def expand_grid(cls, v: Any) -> Any:
        if isinstance(v, int):
            return (v, v, v)
        return v

    @pydantic.validator("grid")
    def validate_grid(cls, v: Tuple[int, int, int]) -> Tuple[int, int, int]:
        for n in v:
            if n <= 0 or n % 2:
                raise ValueError("grid sizes must be positive and even")
        return v

    def config_hash(self) -> str:
        """sha256 of the canonical JSON form of the effective config."""
        return canonical_hash(self.dict(by_alias=True))

    @classmethod
    def load(cls, path: Path) -> "RunConfig":
        """Load config from the indicated file name."""
        content = load_yaml(path)
        return cls.parse(content, source=str(path))

    @classmethod
    def parse(
        cls, content: Dict[Any, Any], source: str = "<config>"
    ) -> "RunConfig":
        try:
            return cls.parse_obj(content)
        except pydantic.ValidationError as e:
            raise ConfigurationError(f"Invalid config {source!r}:\n{e}")
