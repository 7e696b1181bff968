"""HTTP JSON API for running elicitation sessions.

Thin wrappers over the session operations plus a feedback endpoint. All
state lives in the session store (one JSON document per session, atomic
writes), so restarting the process loses nothing. Writes to one session
are serialized behind a per-session lock; distinct sessions never contend.

Error contract: every engine error surfaces as

    {"error": {"code": "...", "message": "...", "details": {...}}}

with exactly one code per error class (see ``_STATUS_BY_CODE``). Numbers
are emitted via Python's shortest-round-trip float formatting, so payloads
re-parse to the exact same doubles.

Configuration comes from ``create_app`` arguments; the ``elicit serve``
command maps flags and ``ELICIT_*`` environment variables onto them
(listen address, persistence directory, default draw counts, CORS
allowlist).
"""

from __future__ import annotations

import logging
import time
import uuid
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import session as sess
from .errors import (
    DocumentParseError,
    DocumentValidationError,
    DomainError,
    ElicitError,
    FitFailureError,
    InvalidJudgementError,
    InvalidTransformError,
    SessionNotFoundError,
    StateError,
)
from .feedback import FeedbackConfig, PopulationModel, feedback_bundle
from .fitting import normalize_theta
from .session import SessionStore

__all__ = ["create_app", "main"]

logger = logging.getLogger("elicit.service")

_STATUS_BY_CODE = {
    DomainError.code: 400,
    InvalidJudgementError.code: 400,
    InvalidTransformError.code: 400,
    DocumentParseError.code: 400,
    DocumentValidationError.code: 400,
    FitFailureError.code: 422,
    StateError.code: 409,
    SessionNotFoundError.code: 404,
}


class CreateSessionRequest(BaseModel):
    context: dict[str, str] = Field(default_factory=dict)
    transform: str = "identity"
    seed: int | None = None


class BoundsRequest(BaseModel):
    lower: float
    upper: float


class QuantileIn(BaseModel):
    alpha: float
    value: float


class MeanQuantilesRequest(BaseModel):
    quantiles: list[QuantileIn]
    family: str | None = None


class ProportionRequest(BaseModel):
    theta_lo: float
    theta_hi: float
    width: float | None = None
    family: str = "inverse-gamma-on-variance"
    percent: bool = False
    level_lo: float = 0.05
    level_hi: float = 0.95


class ReviseRequest(BaseModel):
    target: str
    quantiles: list[QuantileIn] | None = None
    family: str | None = None
    theta_lo: float | None = None
    theta_hi: float | None = None
    width: float | None = None
    percent: bool = False


class FeedbackShownRequest(BaseModel):
    summary: dict = Field(default_factory=dict)


class ConcludeRequest(BaseModel):
    note: str = ""


class ImportRequest(BaseModel):
    document: dict


def _parse_alphas(raw: str) -> tuple[float, ...]:
    try:
        alphas = tuple(float(part) for part in raw.split(",") if part.strip())
    except ValueError:
        raise DomainError(f"could not parse quantile levels {raw!r}") from None
    if not alphas:
        raise DomainError("at least one quantile level is required")
    return alphas


def _model_from_session(s: sess.Session) -> PopulationModel:
    return PopulationModel(
        transform=s.transform,
        location=s.location_prior,
        variance=s.variance_prior,
        bounds=(s.judgements.lower, s.judgements.upper),
    )


def create_app(
    data_dir: str | Path,
    *,
    default_draws: int = 300,
    default_grid: int = 300,
    max_draws: int = 10_000,
    cors_origins: tuple[str, ...] = (),
) -> FastAPI:
    """Build the API around a persistence directory."""
    store = SessionStore(data_dir)
    app = FastAPI(title="elicit", version="0.1.0")
    app.state.store = store

    if cors_origins:
        app.add_middleware(
            CORSMiddleware,
            allow_origins=list(cors_origins),
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.middleware("http")
    async def _log_requests(request: Request, call_next):
        start = time.perf_counter()
        response = await call_next(request)
        logger.info(
            "%s %s -> %d (%.1f ms)",
            request.method,
            request.url.path,
            response.status_code,
            (time.perf_counter() - start) * 1e3,
        )
        return response

    @app.exception_handler(ElicitError)
    async def _engine_error(request: Request, exc: ElicitError):
        status = _STATUS_BY_CODE.get(exc.code, 500)
        return JSONResponse(
            status_code=status,
            content={
                "error": {"code": exc.code, "message": exc.message, "details": exc.details}
            },
        )

    def _mutate(session_id: str, op):
        """Load-op-save under the per-session lock; returns the view."""
        with store.lock(session_id):
            s = store.load(session_id)
            op(s)
            store.save(s)
            return sess.session_view(s)

    @app.post("/sessions", status_code=201)
    def create_session(body: CreateSessionRequest):
        s = sess.create_session(body.context, body.transform, seed=body.seed)
        with store.lock(s.id):
            store.save(s)
        return sess.session_view(s)

    @app.get("/sessions")
    def list_sessions():
        return {"sessions": store.list_ids()}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return sess.session_view(store.load(session_id))

    @app.post("/sessions/{session_id}/bounds")
    def submit_bounds(session_id: str, body: BoundsRequest):
        return _mutate(session_id, lambda s: sess.record_bounds(s, body.lower, body.upper))

    @app.post("/sessions/{session_id}/mean-quantiles")
    def submit_mean_quantiles(session_id: str, body: MeanQuantilesRequest):
        quantiles = [(q.alpha, q.value) for q in body.quantiles]
        return _mutate(
            session_id,
            lambda s: sess.record_mean_quantiles_and_fit(s, quantiles, body.family),
        )

    @app.post("/sessions/{session_id}/proportion")
    def submit_proportion(session_id: str, body: ProportionRequest):
        theta_lo = normalize_theta(body.theta_lo, percent=body.percent)
        theta_hi = normalize_theta(body.theta_hi, percent=body.percent)
        return _mutate(
            session_id,
            lambda s: sess.record_proportion_and_fit(
                s,
                theta_lo=theta_lo,
                theta_hi=theta_hi,
                width=body.width,
                family=body.family,
                levels=(body.level_lo, body.level_hi),
            ),
        )

    @app.post("/sessions/{session_id}/revise")
    def submit_revision(session_id: str, body: ReviseRequest):
        def op(s: sess.Session):
            if body.target == "mean":
                quantiles = [(q.alpha, q.value) for q in (body.quantiles or [])]
                kwargs = {"quantiles": quantiles}
                if body.family:
                    kwargs["family"] = body.family
                sess.revise(s, "mean", **kwargs)
            elif body.target == "proportion":
                if body.theta_lo is None or body.theta_hi is None:
                    raise InvalidJudgementError(
                        "proportion revision requires theta_lo and theta_hi"
                    )
                kwargs = {
                    "theta_lo": normalize_theta(body.theta_lo, percent=body.percent),
                    "theta_hi": normalize_theta(body.theta_hi, percent=body.percent),
                }
                if body.width is not None:
                    kwargs["width"] = body.width
                if body.family:
                    kwargs["family"] = body.family
                sess.revise(s, "proportion", **kwargs)
            else:
                raise DomainError(f"unknown revision target {body.target!r}")

        return _mutate(session_id, op)

    @app.get("/sessions/{session_id}/mean-summary")
    def mean_summary(session_id: str, levels: str = "0.01,0.99"):
        s = store.load(session_id)
        return {"mean_summary": sess.mean_prior_summary(s, _parse_alphas(levels))}

    @app.get("/sessions/{session_id}/feedback")
    def get_feedback(
        session_id: str,
        k: int | None = None,
        j: int | None = None,
        seed: int | None = None,
        band_level: float = 0.95,
        interval_level: float = 0.90,
        alphas: str = "0.05,0.95",
    ):
        s = store.load(session_id)
        if s.variance_prior is None:
            # before the variance fit only the mean-prior summary exists
            s.require_state(sess.SessionState.MEAN_FITTED, "compute feedback")
            return {"mean_summary": sess.mean_prior_summary(s)}
        draws = int(k) if k is not None else default_draws
        if draws > max_draws:
            raise DomainError(
                f"K={draws} exceeds the API limit {max_draws}; use the CLI for larger runs"
            )
        cfg = FeedbackConfig(
            K=draws,
            J=int(j) if j is not None else default_grid,
            seed=int(seed) if seed is not None else s.seed,
            band_level=band_level,
            quantile_interval_level=interval_level,
        )
        bundle = feedback_bundle(_model_from_session(s), cfg, _parse_alphas(alphas))
        return bundle.to_dict()

    @app.post("/sessions/{session_id}/feedback-shown")
    def feedback_shown(session_id: str, body: FeedbackShownRequest):
        return _mutate(session_id, lambda s: sess.mark_feedback_shown(s, body.summary))

    @app.post("/sessions/{session_id}/conclude")
    def conclude(session_id: str, body: ConcludeRequest):
        return _mutate(session_id, lambda s: sess.conclude(s, body.note))

    @app.get("/sessions/{session_id}/export")
    def export_session(session_id: str):
        return sess.export_session(store.load(session_id))

    @app.post("/sessions/import", status_code=201)
    def import_session(body: ImportRequest):
        document = dict(body.document)
        # imported sessions always get a fresh id so they never collide
        new_id = uuid.uuid4().hex
        document["id"] = new_id
        history = [dict(ev) for ev in document.get("history", [])]
        if history and history[0].get("event") == "session_created":
            first = dict(history[0])
            first["payload"] = dict(first.get("payload", {}), id=new_id)
            history[0] = first
        document["history"] = history
        s = sess.import_session(document)
        with store.lock(s.id):
            store.save(s)
        return sess.session_view(s)

    return app


def main(argv: list[str] | None = None) -> int:
    """Run the service under uvicorn; flags fall back to ELICIT_* env vars."""
    import argparse
    import os

    parser = argparse.ArgumentParser(prog="elicit-serve", description=main.__doc__)
    parser.add_argument("--host", default=os.environ.get("ELICIT_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(os.environ.get("ELICIT_PORT", "8000")))
    parser.add_argument(
        "--data-dir", default=os.environ.get("ELICIT_DATA_DIR", "./elicit-sessions")
    )
    parser.add_argument(
        "--default-draws", type=int, default=int(os.environ.get("ELICIT_DEFAULT_DRAWS", "300"))
    )
    parser.add_argument(
        "--default-grid", type=int, default=int(os.environ.get("ELICIT_DEFAULT_GRID", "300"))
    )
    parser.add_argument(
        "--max-draws", type=int, default=int(os.environ.get("ELICIT_MAX_DRAWS", "10000"))
    )
    parser.add_argument(
        "--cors-origin",
        action="append",
        default=None,
        help="allowed CORS origin for the UI; repeatable "
        "(default: ELICIT_CORS_ORIGINS, comma separated)",
    )
    args = parser.parse_args(argv)
    origins = args.cors_origin
    if origins is None:
        env = os.environ.get("ELICIT_CORS_ORIGINS", "")
        origins = [o for o in env.split(",") if o]

    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(name)s %(message)s")
    app = create_app(
        args.data_dir,
        default_draws=args.default_draws,
        default_grid=args.default_grid,
        max_draws=args.max_draws,
        cors_origins=tuple(origins),
    )

    import uvicorn

    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
