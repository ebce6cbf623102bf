"""FastAPI service exposing the classification pipeline over HTTP.

Every computation is a pure function of the request, so the service is
stateless and safe to serve concurrently.  The CLI drives the same handler
functions in-process.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..algebra import Element, algebra_by_name, bracket
from ..errors import (
    InvalidCore,
    InvalidSymbol,
    MapFormatError,
    NotInClassifiedFamily,
    UnsupportedAlgebra,
    WAlgebraError,
    WindowTooSmall,
)
from ..maps import VERIFY_CHECKS, map_from_json, run_verification
from ..solver import PROBLEMS, center_report, classify
from .schemas import (
    BracketRequest,
    CenterRequest,
    CenterResponse,
    ClassifyRequest,
    ClassifyResponse,
    ElementResponse,
    InfoResponse,
    VerifyMapRequest,
    VerifyMapResponse,
)

_BAD_REQUEST = (InvalidSymbol, UnsupportedAlgebra, WindowTooSmall, InvalidCore, MapFormatError)


def _domain_error(e: WAlgebraError) -> HTTPException:
    return HTTPException(status_code=422, detail=f"{type(e).__name__}: {e}")


def run_classify(req: ClassifyRequest) -> dict:
    return classify(
        req.problem,
        algebra_by_name(req.algebra),
        N=req.window,
        M=req.value_radius,
        K=req.core,
        workers=req.workers,
    )


def run_verify(req: VerifyMapRequest) -> dict:
    m = map_from_json(req.map.model_dump(by_alias=True, exclude_none=True))
    return run_verification(m, req.check)


def run_center(req: CenterRequest) -> dict:
    return center_report(algebra_by_name(req.algebra), req.window, req.core)


def run_bracket(req: BracketRequest) -> dict:
    algebra = algebra_by_name(req.algebra)
    x = Element.from_json([t.model_dump(exclude_none=True) for t in req.x])
    y = Element.from_json([t.model_dump(exclude_none=True) for t in req.y])
    result = bracket(x, y, algebra)
    return {"terms": result.to_json(), "text": str(result)}


app = FastAPI(
    title="walgebra",
    description="Exact classification of biderivations, derivations and "
    "commuting maps on the Virasoro and W(2,2) algebras.",
    version=__version__,
)


@app.get("/api/info", response_model=InfoResponse)
def info() -> dict:
    return {
        "service": "walgebra",
        "version": __version__,
        "algebras": ["vir", "witt", "w22", "w22-centerless"],
        "problems": list(PROBLEMS),
        "checks": sorted(VERIFY_CHECKS),
    }


@app.post("/api/classify", response_model=ClassifyResponse, response_model_exclude_none=True)
def classify_endpoint(req: ClassifyRequest):
    try:
        return run_classify(req)
    except _BAD_REQUEST as e:
        raise _domain_error(e) from None
    except NotInClassifiedFamily as e:
        raise HTTPException(status_code=500, detail=f"NotInClassifiedFamily: {e}") from None


@app.post("/api/verify-map", response_model=VerifyMapResponse, response_model_exclude_none=True)
def verify_endpoint(req: VerifyMapRequest):
    try:
        return run_verify(req)
    except _BAD_REQUEST as e:
        raise _domain_error(e) from None


@app.post("/api/center", response_model=CenterResponse, response_model_exclude_none=True)
def center_endpoint(req: CenterRequest):
    try:
        return run_center(req)
    except _BAD_REQUEST as e:
        raise _domain_error(e) from None


@app.post("/api/bracket", response_model=ElementResponse, response_model_exclude_none=True)
def bracket_endpoint(req: BracketRequest):
    try:
        return run_bracket(req)
    except _BAD_REQUEST as e:
        raise _domain_error(e) from None
