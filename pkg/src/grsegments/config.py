"""Run configuration and enumeration budgets.

Defaults can be overridden from the environment (GRSEG_*), typically via a
project-level .env loaded by the CLI.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

OutputFormat = Literal["csv", "json", "dot"]

PRIMES_UP_TO_31 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    return int(raw) if raw else default


class Budgets(BaseModel):
    model_config = ConfigDict(frozen=True)

    subspace: int = 2**16          # vectors enumerated per vertex / subspace lists
    end: int = 2**20               # elements of a Hom/End space, reps of dimension δ

    @field_validator("subspace", "end")
    @classmethod
    def _positive(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("budgets must be positive")
        return v


DEFAULT_BUDGETS = Budgets()


class RunConfig(BaseModel):
    preset: str | None = None
    quiver_path: Path | None = None
    catalog_path: Path | None = None  # a saved catalog.json replaces the quiver source
    p: int = Field(default_factory=lambda: _env_int("GRSEG_P", 2))
    L: int = Field(default_factory=lambda: _env_int("GRSEG_L", 10))
    delta: int = 2                 # window gap Δ for stability labels
    budget_subspace: int = Field(default_factory=lambda: _env_int("GRSEG_BUDGET_SUBSPACE", 2**16))
    budget_end: int = Field(default_factory=lambda: _env_int("GRSEG_BUDGET_END", 2**20))
    z_min_run: int = 3             # preinjective-bearing fibers needed to call a segment Z
    jobs: int = Field(default_factory=lambda: _env_int("GRSEG_JOBS", 1))
    seed: int = Field(default_factory=lambda: _env_int("GRSEG_SEED", 20240601))
    out: Path = Path("out")
    formats: tuple[OutputFormat, ...] = ("csv", "json", "dot")

    @field_validator("p")
    @classmethod
    def _prime(cls, v: int) -> int:
        if v not in PRIMES_UP_TO_31:
            raise ValueError(f"p must be a prime <= 31, got {v}")
        return v

    @field_validator("L")
    @classmethod
    def _length_bound(cls, v: int) -> int:
        if v < 2:
            raise ValueError("L must be at least 2")
        return v

    @field_validator("delta", "z_min_run", "jobs")
    @classmethod
    def _at_least_one(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be at least 1")
        return v

    @field_validator("budget_subspace", "budget_end")
    @classmethod
    def _positive(cls, v: int) -> int:
        if v <= 0:
            raise ValueError("budgets must be positive")
        return v

    @model_validator(mode="after")
    def _one_quiver_source(self) -> RunConfig:
        sources = [s for s in (self.preset, self.quiver_path, self.catalog_path) if s is not None]
        if len(sources) != 1:
            raise ValueError("give exactly one of preset, quiver_path or catalog_path")
        if self.delta >= self.L:
            raise ValueError("delta must be smaller than L")
        return self

    @property
    def budgets(self) -> Budgets:
        return Budgets(subspace=self.budget_subspace, end=self.budget_end)
