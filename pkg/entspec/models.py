from __future__ import annotations

from pathlib import Path
from typing import Any, Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

StateType = Literal["ghz", "w", "cluster", "random", "product"]
Topology = Literal["chain", "ring"]
MuMode = Literal["exact", "asymptotic"]


class PurityRecord(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    purity: float = Field(..., gt=0.0)
    participation: float = Field(..., gt=0.0)
    entangled_qubits: float


class SweepRecord(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    mask: int = Field(..., gt=0)
    purity: float = Field(..., gt=0.0)
    participation: float = Field(..., gt=0.0)


class SweepResult(BaseModel):
    """All balanced bipartitions of one state, ascending by mask."""

    model_config = ConfigDict(extra="forbid")

    n: int = Field(..., ge=2)
    n_A: int = Field(..., ge=1)
    records: list[SweepRecord] = Field(default_factory=list)

    @property
    def n_p(self) -> int:
        return len(self.records)

    def participations(self) -> np.ndarray:
        return np.fromiter((r.participation for r in self.records), dtype=np.float64, count=len(self.records))

    def purities(self) -> np.ndarray:
        return np.fromiter((r.purity for r in self.records), dtype=np.float64, count=len(self.records))

    def masks(self) -> list[int]:
        return [r.mask for r in self.records]


class EmpiricalStats(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n_p: int = Field(..., ge=1)
    mean_participation: float
    std_participation: float = Field(..., ge=0.0)
    mean_purity: float
    min_participation: float
    max_participation: float
    mean_entangled_qubits: float


class AnalyticParams(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    n: int = Field(..., ge=2)
    N: int
    N_A: int
    N_B: int
    alpha: float
    mu_exact: float = Field(..., gt=0.0, le=1.0)
    mu_asymptotic: float = Field(..., gt=0.0, le=1.0)
    sigma_pi2: float = Field(..., gt=0.0)
    sigma_N: float = Field(..., gt=0.0)

    def mu(self, mode: MuMode = "exact") -> float:
        return self.mu_exact if mode == "exact" else self.mu_asymptotic


class HistogramBin(BaseModel):
    model_config = ConfigDict(extra="forbid", frozen=True)

    bin_lower: float
    bin_upper: float
    count: int = Field(..., ge=0)


class AnalyticComparison(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mu_mode: MuMode = "exact"
    mean_gap: float
    std_gap: float
    sup_gap: float


class TableRow(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int
    ghz: float
    w: float
    cluster: float
    random: float


class TableReport(BaseModel):
    model_config = ConfigDict(extra="forbid")

    topology: Topology
    samples: int
    seed: int
    rows: list[TableRow] = Field(default_factory=list)


class ScalingRow(BaseModel):
    model_config = ConfigDict(extra="forbid")

    n: int
    family: StateType
    mean: float
    std: float
    ratio: float
    sigma_N: float


class CommandConfig(BaseModel):
    """Validated flag set of one CLI invocation; unknown keys are rejected."""

    model_config = ConfigDict(extra="forbid")

    command: Literal["gen", "sweep", "stats", "density", "hist", "table", "scaling"]
    n: Optional[int] = Field(None, ge=1)
    state_type: Optional[StateType] = None
    topology: Literal["chain", "ring", "auto"] = "chain"
    seed: int = Field(0, ge=0, lt=2**64)
    index: int = Field(0, ge=0)
    samples: Optional[int] = Field(None, ge=1)
    bins: Optional[int] = Field(None, ge=1)
    points: int = Field(100, ge=1)
    mu: MuMode = "exact"
    mass: bool = False
    nmin: int = Field(5, ge=2)
    nmax: int = Field(12, ge=2)
    threads: Optional[int] = Field(None, ge=0)
    range_lower: Optional[float] = None
    range_upper: Optional[float] = None
    input: Optional[Path] = None
    output: Optional[Path] = None


class RunResult(BaseModel):
    model_config = ConfigDict(extra="forbid")

    message: str
    # stderr line shown when the payload itself went to stdout
    notice: str = ""
    outputs: list[str] = Field(default_factory=list)
    summary: dict[str, Any] = Field(default_factory=dict)
