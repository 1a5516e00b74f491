"""HTTP service exposing the distance-bound machinery.

Error envelope: every handled failure returns ``{"error": {"kind", "message",
...}}`` with kind ``input`` (422), ``capacity`` (413), or ``internal`` (500).
The CLI maps those onto its exit codes.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import __version__
from ..apparent import afforded_by, apparent_distance, mad
from ..codes import AbelianCode, apparent_distance_at_alpha, apparent_distance_over_U
from ..dsbounds import REGISTRY, evaluate_best, get_bounds
from ..errors import CapacityError, InputError
from ..gfield import build_context
from ..jobs import run_table1, trace_payload
from ..oracle import (
    DEFAULT_BUDGET,
    OracleBudget,
    run_lattice_suite,
    run_soundness_exhaustive,
    run_soundness_random,
    run_weight_suite,
)
from ..orbits import CodeShape, defining_set_from_reps, q_orbit
from . import schemas


def _shape(q: int, r: list[int]) -> CodeShape:
    return CodeShape(q, tuple(r))


def _defining_set(req) -> tuple[CodeShape, "DefiningSet"]:
    shape = _shape(req.q, req.r)
    reps = [tuple(rep) for rep in req.reps]
    return shape, defining_set_from_reps(reps, shape)


def create_app() -> FastAPI:
    app = FastAPI(title="abds", version=__version__)

    @app.exception_handler(InputError)
    async def input_error(request: Request, exc: InputError):
        return JSONResponse(
            status_code=422,
            content={"error": {"kind": "input", "message": str(exc)}},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=422,
            content={"error": {"kind": "input", "message": str(exc.errors())}},
        )

    @app.exception_handler(CapacityError)
    async def capacity_error(request: Request, exc: CapacityError):
        return JSONResponse(
            status_code=413,
            content={
                "error": {
                    "kind": "capacity",
                    "message": str(exc),
                    "required": exc.required,
                    "budget": exc.budget,
                }
            },
        )

    @app.exception_handler(Exception)
    async def internal_error(request: Request, exc: Exception):
        return JSONResponse(
            status_code=500,
            content={"error": {"kind": "internal", "message": str(exc)}},
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    async def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/orbit", response_model=schemas.OrbitResponse)
    async def orbit(req: schemas.OrbitRequest):
        shape = _shape(req.q, req.r)
        seen: set = set()
        entries = []
        total = 0
        for rep in req.reps:
            members = q_orbit(tuple(rep), shape)
            entries.append(
                schemas.OrbitEntry(
                    rep=list(rep),
                    size=len(members),
                    members=sorted(list(m) for m in members),
                )
            )
            new = members - seen
            seen |= members
            total += len(new)
        return schemas.OrbitResponse(
            version=__version__, q=req.q, r=req.r, orbits=entries, total=total
        )

    @app.post("/bound", response_model=schemas.BoundResponse)
    async def bound(req: schemas.BoundRequest):
        values = {}
        for name in req.bounds:
            b = get_bounds([name])
            values[name.lower()] = evaluate_best(b, frozenset(req.subset), req.n)
        return schemas.BoundResponse(version=__version__, n=req.n, values=values)

    @app.post("/appdist", response_model=schemas.AppdistResponse)
    async def appdist(req: schemas.AppdistRequest):
        shape, D = _defining_set(req)
        value, axes = apparent_distance(afforded_by(D), get_bounds(req.bounds))
        return schemas.AppdistResponse(
            version=__version__,
            value=value,
            axes=[
                schemas.AxisReportModel(
                    axis=ax.axis,
                    supp=list(ax.supp),
                    omega=ax.omega,
                    epsilon=ax.epsilon,
                    delta=ax.delta,
                    involved=list(ax.involved),
                )
                for ax in axes
            ],
        )

    @app.post("/mad", response_model=schemas.MadResponse)
    async def mad_endpoint(req: schemas.MadRequest):
        shape, D = _defining_set(req)
        trace = mad(afforded_by(D), get_bounds(req.bounds))
        return schemas.MadResponse(
            version=__version__,
            trace=schemas.TracePayload(**trace_payload(trace)),
        )

    @app.post("/code", response_model=schemas.CodeResponse)
    async def code(req: schemas.CodeRequest):
        shape, D = _defining_set(req)
        C = AbelianCode(D)
        B = get_bounds(req.bounds)
        report = apparent_distance_over_U(C, B) if req.over_u else apparent_distance_at_alpha(C, B)
        return schemas.CodeResponse(
            version=__version__,
            n=report.n,
            dimension=report.dimension,
            value=report.value,
            bounds=list(report.bound_names),
            alpha_variant=list(report.alpha_variant) if report.alpha_variant else None,
            trace=schemas.TracePayload(**trace_payload(report.trace)) if req.trace else None,
        )

    @app.post("/verify", response_model=schemas.VerifyResponse)
    async def verify(req: schemas.VerifyRequest):
        B = get_bounds(req.bounds)
        budget = (
            OracleBudget(max_codewords=req.max_codewords)
            if req.max_codewords
            else DEFAULT_BUDGET
        )
        if req.suite == "weight":
            if req.q is None or req.r is None:
                raise InputError("weight suite needs q and r")
            report = run_weight_suite(_shape(req.q, req.r), B, req.trials, req.seed)
        elif req.suite == "soundness-exhaustive":
            if req.q is None or req.r is None:
                raise InputError("soundness-exhaustive suite needs q and r")
            report = run_soundness_exhaustive(
                _shape(req.q, req.r), B, max_dim=req.max_dim, budget=budget
            )
        elif req.suite == "soundness-random":
            report = run_soundness_random(
                B, req.count, req.seed, max_n=req.max_n, max_dim=req.max_dim, budget=budget
            )
        else:  # lattice
            if req.q is None or req.r is None:
                raise InputError("lattice suite needs q and r")
            report = run_lattice_suite(_shape(req.q, req.r), B, req.count, req.seed, budget)
        return schemas.VerifyResponse(version=__version__, report=report)

    @app.post("/table1", response_model=schemas.Table1Response)
    async def table1():
        result = run_table1()
        return schemas.Table1Response(version=__version__, **result)

    return app
