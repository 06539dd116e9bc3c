"""HTTP front end for the design pipeline.

Run with ``uvicorn ediblewing.service.app:app`` (or ``python -m
ediblewing.service.app``). All computation endpoints are stateless POSTs.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import DesignError, PipelineStageError
from . import handlers
from . import schemas as sc

app = FastAPI(
    title="ediblewing design service",
    description="Sizing, structural checks, and cut layouts for edible fixed-wing drones.",
    version=__version__,
)


@app.exception_handler(DesignError)
async def _design_error(request: Request, exc: DesignError) -> JSONResponse:
    payload: dict = {"detail": str(exc)}
    if isinstance(exc, PipelineStageError):
        payload["stage"] = exc.stage
    return JSONResponse(status_code=422, content=payload)


@app.get("/health", response_model=sc.HealthResponse)
async def health() -> sc.HealthResponse:
    return sc.HealthResponse(status="ok", version=__version__)


@app.post("/design", response_model=sc.DesignResponse)
async def design(req: sc.DesignRequest) -> sc.DesignResponse:
    return handlers.handle_design(req)


@app.post("/map", response_model=sc.MapResponse)
async def design_map(req: sc.MapRequest) -> sc.MapResponse:
    return handlers.handle_map(req)


@app.post("/tile", response_model=sc.TileResponse)
async def tile(req: sc.TileRequest) -> sc.TileResponse:
    return handlers.handle_tile(req)


@app.post("/structure", response_model=sc.StructureResponse)
async def structure(req: sc.StructureRequest) -> sc.StructureResponse:
    return handlers.handle_structure(req)


@app.post("/materials/rank", response_model=sc.MaterialsRankResponse)
async def materials_rank(req: sc.MaterialsRankRequest) -> sc.MaterialsRankResponse:
    return handlers.handle_materials_rank(req)


@app.post("/materials/pareto", response_model=sc.ParetoResponse)
async def materials_pareto(req: sc.ParetoRequest) -> sc.ParetoResponse:
    return handlers.handle_materials_pareto(req)


@app.post("/materials/adhesive", response_model=sc.AdhesiveSelectResponse)
async def materials_adhesive(req: sc.AdhesiveSelectRequest) -> sc.AdhesiveSelectResponse:
    return handlers.handle_adhesive_select(req)


@app.get("/materials/seed", response_model=sc.SeedResponse)
async def materials_seed() -> sc.SeedResponse:
    return handlers.handle_seed_db()


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host="127.0.0.1", port=8000)
