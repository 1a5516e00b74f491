"""Request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field


class OrbitRequest(BaseModel):
    q: int
    r: list[int] = Field(min_length=1)
    reps: list[list[int]] = Field(default_factory=list)


class OrbitEntry(BaseModel):
    rep: list[int]
    size: int
    members: list[list[int]]


class OrbitResponse(BaseModel):
    version: str
    q: int
    r: list[int]
    orbits: list[OrbitEntry]
    total: int


class BoundRequest(BaseModel):
    n: int
    subset: list[int] = Field(default_factory=list)
    bounds: list[str] = ["bch", "ht"]


class BoundResponse(BaseModel):
    version: str
    n: int
    values: dict[str, int]


class AppdistRequest(BaseModel):
    q: int
    r: list[int] = Field(min_length=1)
    reps: list[list[int]] = Field(default_factory=list)
    bounds: list[str] = ["bch", "ht"]


class AxisReportModel(BaseModel):
    axis: int
    supp: list[int]
    omega: int
    epsilon: int
    delta: int
    involved: list[int]


class AppdistResponse(BaseModel):
    version: str
    value: int
    axes: list[AxisReportModel]


class MadRequest(AppdistRequest):
    pass


class TraceStepModel(BaseModel):
    orbit_reps: list[list[int]]
    cells: int


class TracePayload(BaseModel):
    matrices: list[TraceStepModel]
    deltas: list[int]
    values: list[int]
    result: int
    stop_reason: str
    first_min_index: int
    mu: int
    length: int


class MadResponse(BaseModel):
    version: str
    trace: TracePayload


class CodeRequest(AppdistRequest):
    over_u: bool = False
    trace: bool = False


class CodeResponse(BaseModel):
    version: str
    n: int
    dimension: int
    value: int
    bounds: list[str]
    alpha_variant: Optional[list[int]] = None
    trace: Optional[TracePayload] = None


class VerifyRequest(BaseModel):
    suite: Literal["weight", "soundness-exhaustive", "soundness-random", "lattice"]
    q: Optional[int] = None
    r: Optional[list[int]] = None
    bounds: list[str] = ["bch", "ht"]
    trials: int = 1000
    count: int = 50
    seed: Optional[int] = None
    max_dim: int = 20
    max_n: int = 35
    max_codewords: Optional[int] = None


class VerifyResponse(BaseModel):
    version: str
    report: dict


class Table1Row(BaseModel):
    name: str
    q: int
    r: list[int]
    reps: list[list[int]]
    bounds: list[str]
    expected: dict[str, int]
    skipped: bool
    reason: Optional[str] = None
    computed: Optional[dict[str, int]] = None
    match: Optional[bool] = None


class Table1Response(BaseModel):
    version: str
    rows: list[Table1Row]
    matches: int
    comparable: int
    all_match: bool


class HealthResponse(BaseModel):
    status: str
    version: str
