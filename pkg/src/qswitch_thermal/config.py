# Copyright 2026 The qswitch-thermal Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Run configuration shared by every CLI subcommand.

Values come from an optional flat ``key=value`` file and from command-line
flags; flags win. Keys are the long flag names (``beta-t1``, ``grid-theta``,
``Theta``...), ``#`` starts a comment.

:func:`build_run_config` returns a :class:`RunConfig` whose angles are in
radians and whose inverse temperatures are dimensionless ``β·Δ``: ``--degrees``
and ``--delta`` are applied once, on ingestion. ``delta`` is kept so results
can be converted back to the caller's units.
"""

from __future__ import annotations

import logging
import math
from pathlib import Path
from typing import Any, Dict, Literal, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .exceptions import InvalidParameter
from .optimize import ANGLE_TOL, COARSE_GRID
from .switch_sim import P_MIN, ControlSpec, MeasureSpec
from .thermal import BathConfig

logger = logging.getLogger(__name__)

Command = Literal["betaf", "oracle", "optimize", "sweep", "popt"]
SweepKind = Literal["theta-curve", "heatmap", "extrema-vs-n", "extrema-vs-theta"]

ANGLE_FIELDS = ("theta", "phi", "Theta", "Phi", "delta_phi")
BETA_FIELDS = ("beta_t1", "beta_t2", "beta_i")

DEFAULT_THETA_STEPS = {
    "theta-curve": 181,
    "heatmap": 181,
    "extrema-vs-theta": 37,
    "extrema-vs-n": 37,
}

_POINT_COMMANDS = ("betaf", "oracle")
_SINGLE_R = ("betaf", "oracle", "optimize", "theta-curve", "heatmap", "extrema-vs-theta")


class RunConfig(BaseModel):
    """Validated parameters of one CLI invocation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command
    config: Optional[str] = None

    beta_t1: Optional[float] = Field(default=None, ge=0.0, allow_inf_nan=False)
    beta_t2: Optional[float] = Field(default=None, ge=0.0, allow_inf_nan=False)
    n: Optional[float] = Field(default=None, ge=0.0, allow_inf_nan=False)
    beta_i: Optional[float] = Field(default=None, ge=0.0, allow_inf_nan=False)
    r: Optional[Tuple[float, ...]] = None
    theta: Optional[float] = Field(default=None, allow_inf_nan=False)
    phi: float = Field(default=0.0, allow_inf_nan=False)
    Theta: Optional[float] = Field(default=None, allow_inf_nan=False)
    Phi: float = Field(default=0.0, allow_inf_nan=False)
    degrees: bool = False
    delta: float = Field(default=1.0, gt=0.0, allow_inf_nan=False)

    grid_theta: int = Field(default=COARSE_GRID[0], ge=2)
    grid_phi: int = Field(default=COARSE_GRID[1], ge=2)
    verify: bool = False
    min_prob: Optional[float] = Field(default=None, ge=0.0, lt=1.0)

    kind: Optional[SweepKind] = None
    delta_phi: float = Field(default=0.0, allow_inf_nan=False)
    theta_steps: Optional[int] = Field(default=None, ge=2)
    Theta_steps: int = Field(default=181, ge=2)
    n_min: float = Field(default=0.25, gt=0.0, allow_inf_nan=False)
    n_max: float = Field(default=4.0, gt=0.0, allow_inf_nan=False)
    n_steps: int = Field(default=31, ge=2)

    output: Optional[str] = None
    format: Optional[Literal["csv", "json"]] = None
    p_min: float = Field(default=P_MIN, ge=0.0, lt=1.0)
    angle_tol: float = Field(default=ANGLE_TOL, gt=0.0)
    workers: int = Field(default=1, ge=1)
    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR"] = "WARNING"
    verbose: bool = False

    @field_validator("r", mode="before")
    @classmethod
    def _parse_r(cls, value: Any) -> Any:
        if isinstance(value, str):
            return tuple(float(v) for v in value.split(",") if v.strip())
        if isinstance(value, (int, float)):
            return (float(value),)
        return value

    @field_validator("r")
    @classmethod
    def _check_r(cls, value: Optional[Tuple[float, ...]]) -> Optional[Tuple[float, ...]]:
        if value is None:
            return value
        if not value:
            raise ValueError("r needs at least one value")
        for r in value:
            if not 0.0 <= r <= 1.0:
                raise ValueError(f"Bloch radius r must lie in [0, 1], got {r}")
        return value

    @model_validator(mode="before")
    @classmethod
    def _sweep_defaults(cls, data: Any) -> Any:
        # sweeps default to beta_t1 = 1 and beta_i = beta_t1
        if isinstance(data, dict) and data.get("command") == "sweep":
            data = dict(data)
            if data.get("beta_t1") is None:
                data["beta_t1"] = 1.0
            if data.get("beta_i") is None:
                data["beta_i"] = data["beta_t1"]
        return data

    @model_validator(mode="after")
    def _check_command(self) -> RunConfig:
        if self.beta_t2 is not None and self.n is not None:
            raise ValueError("beta-t2 and n are mutually exclusive")
        target = self.kind if self.command == "sweep" else self.command
        required = ["beta_t1", "beta_i"]
        if self.command == "sweep" and self.kind is None:
            raise ValueError("sweep requires kind")
        if self.command in _POINT_COMMANDS:
            required += ["theta", "Theta"]
        if self.command in ("optimize", "popt"):
            required += ["theta"]
        missing = [name for name in required if getattr(self, name) is None]
        if target != "popt" and target != "extrema-vs-n" and self.beta_t2 is None and self.n is None:
            missing.append("beta_t2|n")
        if target in _SINGLE_R and self.r is None:
            missing.append("r")
        if missing:
            raise ValueError(f"{self.command} is missing required values: {', '.join(missing)}")
        if target in _SINGLE_R and self.r is not None and len(self.r) != 1:
            raise ValueError(f"{target} takes a single r, got {self.r}")
        if self.n_min >= self.n_max:
            raise ValueError(f"n-min ({self.n_min}) must be below n-max ({self.n_max})")
        return self

    @property
    def radius(self) -> float:
        return 1.0 if self.r is None else self.r[0]

    @property
    def steps_theta(self) -> int:
        if self.theta_steps is not None:
            return self.theta_steps
        return DEFAULT_THETA_STEPS.get(self.kind or "", 181)

    @property
    def bath(self) -> BathConfig:
        if self.beta_t1 is None or self.beta_i is None:
            raise InvalidParameter("beta-t1 and beta-i are required.")
        if self.n is not None:
            return BathConfig.from_asymmetry(self.beta_t1, self.n, self.beta_i)
        beta_t2 = self.beta_t1 if self.beta_t2 is None else self.beta_t2
        return BathConfig(self.beta_t1, beta_t2, self.beta_i)

    @property
    def control(self) -> ControlSpec:
        return ControlSpec(self.radius, self.theta or 0.0, self.phi)

    @property
    def measure(self) -> MeasureSpec:
        return MeasureSpec(self.Theta or 0.0, self.Phi)


def load_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """Parse a flat ``key=value`` file; keys keep their flag spelling.

    Raises:
        InvalidParameter: a non-comment line has no ``=``.
    """
    values: Dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep or not key.strip():
            raise InvalidParameter(f"{path}:{lineno}: expected key=value, got {raw!r}.")
        values[key.strip()] = value.strip()
    logger.debug("Loaded %d keys from %s", len(values), path)
    return values


def _field_name(key: str) -> str:
    return key.lstrip("-").replace("-", "_")


def build_run_config(
    file_values: Mapping[str, Any], flag_values: Mapping[str, Any]
) -> RunConfig:
    """Merge file and flag values (flags win), convert units and validate.

    Raises:
        pydantic.ValidationError: a value is malformed or a required one is missing.
    """
    merged: Dict[str, Any] = {_field_name(k): v for k, v in file_values.items()}
    merged.update({_field_name(k): v for k, v in flag_values.items()})
    raw = RunConfig.model_validate(merged)

    update: Dict[str, Any] = {}
    if raw.degrees:
        for name in ANGLE_FIELDS:
            value = getattr(raw, name)
            if value is not None:
                update[name] = math.radians(value)
        update["degrees"] = False
    if raw.delta != 1.0:
        for name in BETA_FIELDS:
            value = getattr(raw, name)
            if value is not None:
                update[name] = value * raw.delta
    if not update:
        return raw
    return RunConfig.model_validate({**raw.model_dump(), **update})
