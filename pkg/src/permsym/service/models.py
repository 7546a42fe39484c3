"""Request and response models for the HTTP service.

The particle configuration mirrors the JSON config file format one to
one, so a file passed to the command line client can be posted verbatim.
Domain validation (spin pairs, kinematics, scheme references) happens in
:func:`permsym.config.parse_config`; the models only pin the shape.
"""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field


class ParticleModel(BaseModel):
    """One particle entry: spin state plus either momentum or angles."""

    model_config = ConfigDict(extra="forbid")

    id: str
    Q: str = ""
    s: str | int
    m: str | int
    p: list[float] | None = Field(default=None, min_length=3, max_length=3)
    theta: float | None = None
    phi_turns: str | int | float | None = None


class FrameModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rotation_turns: str | int | float = 0


class ConfigModel(BaseModel):
    """The particle configuration, identical to the config file format."""

    model_config = ConfigDict(extra="forbid")

    particles: list[ParticleModel]
    scheme: dict[str, list[str]] | None = None
    canonical_frame: FrameModel | None = None
    tolerance: float | None = None

    def as_config_data(self) -> dict[str, Any]:
        """The plain dict the config parser consumes."""
        return self.model_dump(exclude_none=True)


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: ConfigModel
    tolerance: float | None = None


class ExchangeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: ConfigModel
    pair: tuple[str, str]
    tolerance: float | None = None


class CspRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: ConfigModel
    tolerance: float | None = None


class SearchRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: ConfigModel
    max_rank: int = 1
    tolerance: float | None = None


class Report(BaseModel):
    """Envelope shared by every command; results vary per command."""

    schema_version: int
    tool_version: str
    command: str
    exact: bool
    inputs: dict[str, Any] | None = None
    results: dict[str, Any]


class ErrorBody(BaseModel):
    error: str
    detail: str


class Health(BaseModel):
    status: str
    version: str
