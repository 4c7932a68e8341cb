"""HTTP service over the bound/divergence/experiment handlers.

The handler functions are plain request-model -> response-model calls so the CLI
can invoke them in-process; the FastAPI app is a thin routing layer on top.
Run with: uvicorn genbounds.service:app
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import bounds as bounds_mod
from .divergences import (
    chi_square_divergence,
    kl_divergence,
    power_divergence,
    renyi_divergence,
)
from .experiment import ExperimentConfig, run_gaussian_mean_experiment
from .information import (
    JointDistribution,
    build_joint,
    chi_square_information,
    max_density_ratio,
    mutual_information,
    power_information,
)
from .kernels import kernel_from_spec
from .schemas import (
    BoundsRequest,
    BoundsResponse,
    DivergenceRequest,
    DivergenceResponse,
    ExperimentResponse,
    ExperimentRowModel,
    HealthResponse,
    InformationRequest,
    InformationResponse,
    VerifyConfig,
    VerifyResponse,
)
from .verification import build_battery, run_verification_suite


def handle_divergence(req: DivergenceRequest) -> DivergenceResponse:
    p = req.p.to_distribution()
    q = req.q.to_distribution()
    if req.kind == "kl":
        result = kl_divergence(p, q)
    elif req.kind == "chi2":
        result = chi_square_divergence(p, q)
    elif req.kind == "power":
        result = power_divergence(p, q, req.order)
    else:
        result = renyi_divergence(p, q, req.order)
    return DivergenceResponse(value=result.value, kind=result.kind.value, order=result.order)


def handle_information(req: InformationRequest) -> InformationResponse:
    if req.joint is not None:
        joint = JointDistribution.from_dict(req.joint.model_dump())
    else:
        joint = build_joint(
            req.model.data.to_distribution(),
            req.model.n,
            kernel_from_spec(req.model.kernel),
            w_round_digits=req.w_round_digits,
        )
    power = order = None
    if req.t is not None:
        power = power_information(joint, req.t).value
        order = req.t
    return InformationResponse(
        mi=mutual_information(joint).value,
        chi2=chi_square_information(joint).value,
        max_ratio=max_density_ratio(joint),
        power=power,
        order=order,
        w_count=joint.w_count,
        s_count=joint.s_count,
    )


def _require(req: BoundsRequest, field: str):
    value = getattr(req, field)
    if value is None:
        raise ValueError(f"theorem {req.theorem!r} requires parameter {field!r}")
    return value


def handle_bounds(req: BoundsRequest) -> BoundsResponse:
    sigma, n, mode = req.sigma, req.n, req.mode
    tok = req.theorem
    if tok == "thm2":
        report = bounds_mod.moment_bound_power(
            sigma, n, _require(req, "m"), _require(req, "t"), _require(req, "info"), mode)
    elif tok == "cor1":
        report = bounds_mod.moment_bound_chi2(
            sigma, n, _require(req, "m"), _require(req, "info"), mode)
    elif tok == "cor2":
        report = bounds_mod.expected_gen_bound(
            sigma, n, _require(req, "q"), _require(req, "info"), mode)
    elif tok == "eq9":
        report = bounds_mod.moment_bound_ratio(
            sigma, n, _require(req, "m"), _require(req, "ratio"), mode)
    elif tok == "thm3":
        report = bounds_mod.second_moment_bound_mi(sigma, n, _require(req, "mi"), mode)
    elif tok == "thm4":
        report = bounds_mod.highprob_bound_power(
            sigma, n, _require(req, "t"), _require(req, "delta"), _require(req, "info"), mode)
    elif tok == "eq12":
        report = bounds_mod.highprob_bound_renyi(
            sigma, n, _require(req, "alpha"), _require(req, "delta"), _require(req, "info"), mode)
    elif tok == "cor3":
        report = bounds_mod.highprob_bound_chi2(
            sigma, n, _require(req, "delta"), _require(req, "info"), mode)
    else:
        raise ValueError(f"unknown theorem {tok!r}")
    return BoundsResponse(**report.to_dict())


def handle_experiment(config: ExperimentConfig) -> ExperimentResponse:
    rows = run_gaussian_mean_experiment(config)
    return ExperimentResponse(
        config=config,
        rows=[ExperimentRowModel(**r.to_dict()) for r in rows],
    )


def handle_verify(config: VerifyConfig) -> VerifyResponse:
    battery = build_battery(random_count=config.random_count, seed=config.seed)
    report = run_verification_suite(
        models=battery,
        t_values=tuple(config.t_values),
        moment_orders=tuple(config.moment_orders),
        deltas=tuple(config.deltas),
    )
    return VerifyResponse(**report.to_dict())


app = FastAPI(title="genbounds", version="0.1.0")


@app.exception_handler(ValueError)
async def value_error_handler(request: Request, exc: ValueError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse()


@app.post("/divergence", response_model=DivergenceResponse)
def divergence(req: DivergenceRequest) -> DivergenceResponse:
    return handle_divergence(req)


@app.post("/information", response_model=InformationResponse)
def information(req: InformationRequest) -> InformationResponse:
    return handle_information(req)


@app.post("/bounds", response_model=BoundsResponse)
def bounds(req: BoundsRequest) -> BoundsResponse:
    return handle_bounds(req)


@app.post("/experiment/gaussian-mean", response_model=ExperimentResponse)
def experiment_gaussian_mean(config: ExperimentConfig) -> ExperimentResponse:
    return handle_experiment(config)


@app.post("/verify", response_model=VerifyResponse)
def verify(config: VerifyConfig) -> VerifyResponse:
    return handle_verify(config)
