"""Request/response models for the experiment endpoints.

All requests are strict: unknown keys are rejected so a typo in a config
fails before anything runs. Relocation and Monte Carlo accept their scale
factor under the key "lambda" (field name `lamb`, since `lambda` is a
Python keyword).
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

Format = Literal["csv", "json", "svg"]


class BaseRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    seed: int = Field(0, ge=0, lt=2 ** 64)
    units: Literal["reduced", "si"] = "reduced"
    formats: list[Format] = Field(default_factory=lambda: ["csv", "json"])


class MixRequest(BaseRequest):
    n_a: float = Field(10.0, gt=0)
    n_b: float = Field(10.0, gt=0)
    volume: float = Field(1.0, gt=0)
    temperature: float = Field(1.0, gt=0)
    steps: int = Field(100, ge=2)
    direction: Literal["mix", "separate"] = "mix"
    mass_a: float = Field(1.0, gt=0)
    mass_b: float = Field(1.0, gt=0)


class PartitionRequest(BaseRequest):
    n_total: float = Field(20.0, gt=0)
    volume: float = Field(1.0, gt=0)
    temperature: float = Field(1.0, gt=0)
    steps: int = Field(100, ge=2)
    mass: float = Field(1.0, gt=0)


class RelocateRequest(BaseRequest):
    lamb: int = Field(2, ge=2, alias="lambda")
    n_a: float = Field(10.0, gt=0)
    volume: float = Field(1.0, gt=0)
    temperature: float = Field(1.0, gt=0)
    steps: int = Field(100, ge=2)
    mass: float = Field(1.0, gt=0)


class ExpandRequest(BaseRequest):
    n: float = Field(1.0, gt=0)
    v1: float = Field(1.0, gt=0)
    v2: float = Field(2.0, gt=0)
    temperature: float = Field(1.0, gt=0)
    steps: int = Field(100, ge=2)
    mass: float = Field(1.0, gt=0)


class CompositeRequest(BaseRequest):
    n_a: float = Field(10.0, gt=0)
    volume: float = Field(1.0, gt=0)
    temperature: float = Field(1.0, gt=0)
    steps: int = Field(100, ge=2)
    distinguishable: bool = False
    mass: float = Field(1.0, gt=0)


class OracleRequest(BaseRequest):
    cells: int = Field(4, ge=1)
    particles: int = Field(3, ge=0)
    counting: Literal["distinguishable", "boltzmann_corrected"] = "distinguishable"
    constraint_start: Optional[int] = Field(None, ge=0)
    constraint_size: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def _constraint_pair(self) -> "OracleRequest":
        if (self.constraint_start is None) != (self.constraint_size is None):
            raise ValueError("constraint_start and constraint_size must be given together")
        return self


class McRequest(BaseRequest):
    lamb: int = Field(2, ge=2, alias="lambda")
    n: int = Field(5, ge=0)
    samples: int = Field(1_000_000, ge=1)
    sample_offset: int = Field(0, ge=0)


class DemonRequest(BaseRequest):
    n: int = Field(200, ge=1)
    box_x: float = Field(2.0, gt=0)
    box_y: float = Field(1.0, gt=0)
    t0: float = Field(1.0, gt=0)
    policy: Literal["always_open", "always_closed",
                    "pressure_demon", "temperature_demon"] = "pressure_demon"
    direction: Literal["left", "right"] = "right"
    speed_threshold: Optional[float] = Field(None, gt=0)
    duration: float = Field(40.0, gt=0)
    memory_capacity: Optional[int] = Field(None, ge=1)
    sample_interval: Optional[float] = Field(None, gt=0)
    gate_half_width: Optional[float] = Field(None, gt=0)
    mass: float = Field(1.0, gt=0)

    @model_validator(mode="after")
    def _policy_params(self) -> "DemonRequest":
        if self.policy == "temperature_demon" and self.speed_threshold is None:
            raise ValueError("temperature_demon requires speed_threshold")
        return self


class SzilardRequest(BaseRequest):
    temperature: float = Field(1.0, gt=0)
    steps: int = Field(10_000, ge=1)
    volume: float = Field(1.0, gt=0)
    erase: bool = True
    mass: float = Field(1.0, gt=0)


class RunResponse(BaseModel):
    experiment: str
    summary: dict
    artifacts: dict[str, str]
    duration_seconds: float


class HealthResponse(BaseModel):
    status: str


class VersionResponse(BaseModel):
    name: str
    version: str


REQUEST_MODELS: dict[str, type[BaseRequest]] = {
    "mix": MixRequest,
    "partition": PartitionRequest,
    "relocate": RelocateRequest,
    "expand": ExpandRequest,
    "composite": CompositeRequest,
    "oracle": OracleRequest,
    "mc": McRequest,
    "demon": DemonRequest,
    "szilard": SzilardRequest,
}
