import asyncio
from typing import Literal, Optional, Union

from fastapi import FastAPI, HTTPException, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, field_validator
from slowapi import Limiter, _rate_limit_exceeded_handler
from slowapi.errors import RateLimitExceeded
from slowapi.util import get_remote_address

from src.algebra.fields import FieldTag
from src.analyzers.structure_analyzer import classify_complex
from src.certification.certify import certify_char2, certify_graph_cycle, certify_orientable
from src.core.complex import SimplicialComplex
from src.corpus.registry import corpus_entry, corpus_list
from src.errors import CycleMateError, InvalidField, UnknownEntry
from src.formats.complex_files import ComplexFile
from src.homology.engine import betti_report
from src.settings import load_config

limiter = Limiter(key_func=get_remote_address)

app = FastAPI(title="CycleMate API", version="0.1.0")
app.state.limiter = limiter
app.add_exception_handler(RateLimitExceeded, _rate_limit_exceeded_handler)

config = load_config()


@app.exception_handler(CycleMateError)
async def cyclemate_error_handler(request: Request, exc: CycleMateError):
    return JSONResponse(status_code=422, content={"error": type(exc).__name__, "detail": str(exc)})


# ── Security headers middleware ───────────────────────────────────────────────
@app.middleware("http")
async def add_security_headers(request: Request, call_next):
    response = await call_next(request)
    response.headers["X-Content-Type-Options"] = "nosniff"
    response.headers["X-Frame-Options"] = "DENY"
    response.headers["Referrer-Policy"] = "no-referrer"
    return response


class ComplexRequest(BaseModel):
    name: str = "complex"
    facets: list[list[Union[str, int]]]
    field: str = "gf2"

    @field_validator("field")
    @classmethod
    def validate_field(cls, v):
        return FieldTag.parse(v).label

    @field_validator("facets")
    @classmethod
    def validate_facets(cls, v):
        if not v:
            raise ValueError("At least one facet is required")
        return v

    def to_complex(self) -> SimplicialComplex:
        return ComplexFile(name=self.name, facets=self.facets).to_complex()


class CertifyRequest(ComplexRequest):
    dim: Optional[int] = None
    kind: Literal["auto", "char2", "orientable", "graph"] = "auto"


def _certify(req: CertifyRequest) -> dict:
    complex_ = req.to_complex()
    field = FieldTag.parse(req.field)
    d = req.dim if req.dim is not None else complex_.dim
    kind = req.kind
    if kind == "auto":
        kind = "char2" if field.characteristic == 2 else "orientable"
    limits = config.limits
    if kind == "graph":
        cert = certify_graph_cycle(complex_, field)
    elif kind == "char2":
        if field.characteristic != 2:
            raise InvalidField(f"Char2 certificates need a characteristic-2 field, got {field}")
        cert = certify_char2(complex_, d)
    else:
        cert = certify_orientable(complex_, d, field, limits.kernel_enumeration_max_dim,
                                  limits.orientation_node_budget)
    return {"name": complex_.name, "field": field.label, "dim": d, "kind": kind,
            "certificate": cert.to_dict() if cert else None}


@app.post("/homology")
@limiter.limit("30/minute")
async def homology(request: Request, req: ComplexRequest):
    """Reduced Betti numbers of the posted complex."""
    complex_ = req.to_complex()
    report = await asyncio.to_thread(betti_report, complex_, FieldTag.parse(req.field))
    return report.to_dict()


@app.post("/classify")
@limiter.limit("10/minute")
async def classify(request: Request, req: ComplexRequest):
    limits = config.limits
    return await asyncio.to_thread(classify_complex, req.to_complex(),
                                   limits.kernel_enumeration_max_dim, limits.orientation_node_budget)


@app.post("/certify")
@limiter.limit("10/minute")
async def certify(request: Request, req: CertifyRequest):
    """
    Cycle certificate for the posted complex, or ``certificate: null``.
    Searches are CPU-bound and run in a worker thread.
    """
    return await asyncio.to_thread(_certify, req)


@app.get("/corpus")
def list_corpus():
    return [entry.to_dict() for entry in corpus_list()]


@app.get("/corpus/{name}")
def get_corpus_entry(name: str):
    try:
        entry = corpus_entry(name)
    except UnknownEntry as e:
        raise HTTPException(status_code=404, detail=str(e))
    return {**entry.to_dict(), "complex": {"name": entry.name, "facets": entry.build().facet_lists()}}


@app.get("/metrics")
def get_metrics():
    return {
        "status": "healthy",
        "corpus_entries": len(corpus_list()),
        "version": app.version
    }
