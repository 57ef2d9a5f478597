"""JSON-over-HTTP facade for sessions, pooling, previews and risk products.

Every endpoint is a thin adapter over the library modules; numeric payloads
are passed through untouched.  Domain errors map one-to-one onto ApiError
bodies {"code", "message", "details"} with 400/404/409 statuses.
"""

from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, List, Optional

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import distributions
from .aggregation import ExpertEstimate
from .errors import (
    ElicitationError,
    SessionClosed,
    UnknownQuestion,
    UnknownSession,
)
from .jsonio import factor_to_grid, grid_to_json, params_from_json
from .risk_product import DEFAULT_PRODUCT_POINTS, RiskSpec, risk_triple
from .session_store import Question, SessionStore, session_to_document

__all__ = ["create_app", "API_PREFIX"]

API_PREFIX = "/api/v1"

PREVIEW_POINTS = 257


class QuestionIn(BaseModel):
    prompt: str
    domain_kind: str
    bounds: Optional[List[float]] = None
    scenario_label: Optional[str] = None
    question_id: Optional[str] = None


class SessionCreateIn(BaseModel):
    questions: List[QuestionIn] = []


class ParamsIn(BaseModel):
    low: float
    median: float
    high: float
    phi: float


class EstimateIn(BaseModel):
    question_id: str
    expert_id: str
    params: ParamsIn
    weight: float = 1.0
    variant_choice: str = "wide"


class RiskIn(BaseModel):
    consequences: Dict[str, Any]
    vulnerability: Dict[str, Any]
    threat: Dict[str, Any]
    n_points: int = DEFAULT_PRODUCT_POINTS


def _status_for(exc: ElicitationError) -> int:
    if isinstance(exc, (UnknownSession, UnknownQuestion)):
        return 404
    if isinstance(exc, SessionClosed):
        return 409
    return 400


def create_app(data_dir, assets_dir: Optional[str] = None) -> FastAPI:
    """Build the service around a session store rooted at data_dir."""
    app = FastAPI(title="softrisk", docs_url=None, redoc_url=None)
    store = SessionStore(data_dir)
    app.state.store = store

    @app.exception_handler(ElicitationError)
    async def _domain_error(request: Request, exc: ElicitationError) -> JSONResponse:
        body = {"code": exc.code, "message": str(exc)}
        if exc.details is not None:
            body["details"] = exc.details
        return JSONResponse(status_code=_status_for(exc), content=body)

    @app.exception_handler(RequestValidationError)
    async def _request_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={
                "code": "INVALID_REQUEST",
                "message": "request does not match the endpoint schema",
                "details": exc.errors(),
            },
        )

    def _build_question(spec: QuestionIn, index: int) -> Question:
        return Question(
            question_id=spec.question_id or f"q{index + 1}",
            prompt=spec.prompt,
            domain_kind=spec.domain_kind,
            bounds=tuple(spec.bounds) if spec.bounds else (0.0, 1.0),
            scenario_label=spec.scenario_label,
        )

    @app.post(f"{API_PREFIX}/sessions", status_code=201)
    def create_session(body: SessionCreateIn) -> dict:
        questions = [_build_question(q, i) for i, q in enumerate(body.questions)]
        session = store.create_session(questions)
        return session_to_document(session)

    @app.get(API_PREFIX + "/sessions/{session_id}")
    def get_session(session_id: str) -> dict:
        return session_to_document(store.get_session(session_id))

    @app.post(API_PREFIX + "/sessions/{session_id}/estimates")
    def submit_estimate(session_id: str, body: EstimateIn) -> dict:
        params = params_from_json(body.params.model_dump())
        estimate = ExpertEstimate(
            expert_id=body.expert_id,
            params=params,
            weight=body.weight,
            variant_choice=body.variant_choice,  # type: ignore[arg-type]
        )
        session = store.submit_estimate(session_id, body.question_id, estimate)
        per_question = [qid for (qid, _) in session.estimates if qid == body.question_id]
        return {
            "session_id": session.session_id,
            "status": session.status,
            "question_id": body.question_id,
            "expert_id": body.expert_id,
            "estimate_count": len(per_question),
            "experts": session.experts,
        }

    @app.post(API_PREFIX + "/sessions/{session_id}/close")
    def close_session(session_id: str) -> dict:
        return session_to_document(store.close_session(session_id))

    @app.get(API_PREFIX + "/sessions/{session_id}/questions/{question_id}/aggregate")
    def get_aggregate(
        session_id: str,
        question_id: str,
        weighted: bool = False,
        n: int = Query(default=1001),
    ) -> dict:
        pooled = store.get_aggregate(session_id, question_id, weighted=weighted, n_points=n)
        payload = grid_to_json(pooled.grid)
        payload["modes"] = pooled.mode_locations
        payload["contributor_ids"] = pooled.contributor_ids
        return payload

    @app.get(API_PREFIX + "/sessions/{session_id}/questions/{question_id}/preview")
    def preview(
        session_id: str,
        question_id: str,
        low: float,
        median: float,
        high: float,
        phi: float,
        n: int = Query(default=PREVIEW_POINTS),
    ) -> dict:
        # Stateless and side-effect free: only the path is checked against
        # the store, so slider drags can call this at high frequency.
        session = store.get_session(session_id)
        session.question(question_id)
        params = distributions.validate_params(low, median, high, phi)
        xs, density = distributions.pdf_curve(params, n)
        return {"x": xs.tolist(), "density": density.tolist()}

    @app.post(API_PREFIX + "/risk/product")
    def risk_product_endpoint(body: RiskIn) -> dict:
        spec = RiskSpec(
            consequences=factor_to_grid(body.consequences, body.n_points),
            vulnerability=factor_to_grid(body.vulnerability, body.n_points),
            threat=factor_to_grid(body.threat, body.n_points),
        )
        result = risk_triple(spec, n_points=body.n_points)
        return {
            "t": [t for t, _ in result.cdf_grid],
            "cdf": [c for _, c in result.cdf_grid],
            "density": result.density_grid.values.tolist(),
        }

    if assets_dir is not None and Path(assets_dir).is_dir():
        app.mount("/", StaticFiles(directory=assets_dir, html=True), name="ui")

    return app
