"""Request/response models shared by the HTTP service and the CLI client."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .distributions import DiscreteDistribution, make_discrete
from .experiment import ExperimentConfig


class DistributionPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")
    atoms: list[float]
    probs: list[float]

    def to_distribution(self) -> DiscreteDistribution:
        return make_discrete(self.atoms, self.probs)


class DivergenceRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    p: DistributionPayload
    q: DistributionPayload
    kind: str
    order: Optional[float] = None

    @model_validator(mode="after")
    def _order_requirements(self):
        if self.kind in ("power", "renyi") and self.order is None:
            raise ValueError(f"kind {self.kind!r} requires an order")
        if self.kind not in ("kl", "renyi", "power", "chi2"):
            raise ValueError(f"unknown divergence kind {self.kind!r}")
        return self


class DivergenceResponse(BaseModel):
    value: float
    kind: str
    order: Optional[float] = None


class JointPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")
    w_atoms: list[float]
    mass: list[list[float]]
    s_count: Optional[int] = None


class ModelPayload(BaseModel):
    model_config = ConfigDict(extra="forbid")
    data: DistributionPayload
    n: int = Field(ge=1)
    kernel: dict


class InformationRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    joint: Optional[JointPayload] = None
    model: Optional[ModelPayload] = None
    t: Optional[float] = None
    w_round_digits: int = 10

    @model_validator(mode="after")
    def _exactly_one_source(self):
        if (self.joint is None) == (self.model is None):
            raise ValueError("provide exactly one of 'joint' or 'model'")
        return self


class InformationResponse(BaseModel):
    mi: float
    chi2: float
    max_ratio: float
    power: Optional[float] = None
    order: Optional[float] = None
    w_count: int
    s_count: int


class BoundsRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    theorem: str
    sigma: float
    n: int = Field(ge=1)
    mode: str = "relaxed"
    m: Optional[int] = None
    t: Optional[float] = None
    q: Optional[float] = None
    alpha: Optional[float] = None
    delta: Optional[float] = None
    info: Optional[float] = None
    mi: Optional[float] = None
    ratio: Optional[float] = None


class ConditionModel(BaseModel):
    name: str
    satisfied: bool
    scope: str


class BoundsResponse(BaseModel):
    theorem: str
    value: float
    parameters: dict
    conditions: list[ConditionModel]
    mode: str
    valid: bool
    valid_strict: bool
    valid_relaxed: bool


class ExperimentRowModel(BaseModel):
    n: int
    m: int
    true_moment: float
    true_stderr: float
    exact_moment: Optional[float] = None
    info_chi2: Optional[float] = None
    info_mi: Optional[float] = None
    bound_chi2: Optional[float] = None
    bound_mi: Optional[float] = None
    bound_expected: Optional[float] = None
    valid_strict: bool
    valid_relaxed: bool


class ExperimentResponse(BaseModel):
    config: ExperimentConfig
    rows: list[ExperimentRowModel]


class VerifyConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")
    random_count: int = Field(default=9, ge=0)
    seed: int = 51
    t_values: list[float] = Field(default_factory=lambda: [2.0, 3.0])
    moment_orders: list[int] = Field(default_factory=lambda: [1, 2, 3, 4])
    deltas: list[float] = Field(default_factory=lambda: [0.1, 0.05, 0.01])


class CheckResultModel(BaseModel):
    check: str
    model: str
    passed: bool
    detail: str = ""


class VerifyResponse(BaseModel):
    passed: bool
    checks_run: int
    checks_failed: int
    failures: list[CheckResultModel]


class HealthResponse(BaseModel):
    status: str = "ok"
