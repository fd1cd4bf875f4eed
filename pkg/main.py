"""
halfloop — HTTP API

FastAPI application exposing the library: loop identity reports, nucleus
and quotient, map classification, Scott analysis, half-isomorphism search
and catalog sweeps. Sweep progress is streamed over /ws/sweep.
"""

from __future__ import annotations

import asyncio
import logging
import time
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request, WebSocket, WebSocketDisconnect
from fastapi.encoders import jsonable_encoder
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from core.catalog import catalog_builtin, enumerated_entries, get_entry
from core.config import load_settings
from core.errors import HalfloopError, InputError, TrapError
from core.events import Event, EventBus
from core.halfmorph import ElementMap, classify_map
from core.loop import LoopTable, loop_from_file, loop_to_json
from core.reports import (
    catalog_entry_response,
    check_response,
    classification_response,
    nucleus_response,
    scott_response,
    search_response,
    sweep_response,
)
from core.scott import analyse_proper_map
from core.search import SearchOptions, enumerate_half_homomorphisms, enumerate_half_isomorphisms
from core.sweep import verify_main_sweep
from models.schemas import (
    CatalogEntryResponse,
    CheckResponse,
    ClassificationResponse,
    ClassifyRequest,
    LoopFile,
    LoopRef,
    NucleusResponse,
    ScottResponse,
    SearchRequest,
    SearchResponse,
    SweepReportResponse,
    SweepRequest,
)

# ── Logging ───────────────────────────────────────────────────────

settings = load_settings()

logging.basicConfig(
    level=settings.logging.level.upper(),
    format="%(asctime)s [%(name)s] %(levelname)s: %(message)s",
)
logger = logging.getLogger("halfloop")

bus = EventBus()

# ── WebSocket Connections ─────────────────────────────────────────

ws_connections: list[WebSocket] = []


async def _broadcast_ws(event: Event) -> None:
    dead = []
    for ws in ws_connections:
        try:
            await ws.send_json({"event": event.name, "data": event.payload, "timestamp": event.timestamp})
        except Exception:
            dead.append(ws)
    for ws in dead:
        ws_connections.remove(ws)


# ── Lifespan ──────────────────────────────────────────────────────

@asynccontextmanager
async def lifespan(app: FastAPI):
    bus.subscribe("*", _broadcast_ws)
    entries = catalog_builtin()
    logger.info("Catalog ready with %d loops", len(entries))
    yield
    bus.unsubscribe("*", _broadcast_ws)
    logger.info("Shutting down")


app = FastAPI(
    title="halfloop",
    description="Moufang loops, nuclei and half-isomorphisms.",
    version="1.0.0",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


@app.exception_handler(TrapError)
async def trap_handler(request: Request, exc: TrapError):
    logger.error("Trap on %s: %s", request.url.path, exc.message)
    return JSONResponse(status_code=500, content=jsonable_encoder(exc.to_dict()))


@app.exception_handler(HalfloopError)
async def refusal_handler(request: Request, exc: HalfloopError):
    return JSONResponse(status_code=400, content=jsonable_encoder(exc.to_dict()))


# ── Helpers ───────────────────────────────────────────────────────

def _resolve(ref: LoopRef) -> LoopTable:
    """Catalog names only; files on the server are not reachable over HTTP."""
    if ref.loop is not None:
        return loop_from_file(ref.loop)
    if ref.name is not None:
        return get_entry(ref.name).loop
    raise InputError("loop reference needs a catalog name or an inline table")


def _map(req: ClassifyRequest) -> ElementMap:
    return ElementMap(_resolve(req.source), _resolve(req.target), tuple(req.images))


# ══════════════════════════════════════════════════════════════════
# CATALOG
# ══════════════════════════════════════════════════════════════════

@app.get("/catalog", response_model=list[CatalogEntryResponse], tags=["Catalog"])
async def list_catalog():
    """Every built-in loop with its provenance."""
    return [catalog_entry_response(e) for e in catalog_builtin()]


@app.get("/catalog/{name}", response_model=LoopFile, tags=["Catalog"])
async def get_catalog_entry(name: str):
    return loop_to_json(get_entry(name).loop)


# ══════════════════════════════════════════════════════════════════
# LOOPS
# ══════════════════════════════════════════════════════════════════

@app.post("/loops/check", response_model=CheckResponse, tags=["Loops"])
async def check_loop(ref: LoopRef):
    """Group, commutative, Moufang, diassociative and automorphic reports."""
    return await asyncio.to_thread(check_response, _resolve(ref))


@app.post("/loops/nucleus", response_model=NucleusResponse, tags=["Loops"])
async def loop_nucleus(ref: LoopRef):
    return await asyncio.to_thread(nucleus_response, _resolve(ref))


# ══════════════════════════════════════════════════════════════════
# MAPS
# ══════════════════════════════════════════════════════════════════

@app.post("/maps/classify", response_model=ClassificationResponse, tags=["Maps"])
async def classify(req: ClassifyRequest):
    phi = _map(req)
    return classification_response(phi, classify_map(phi))


@app.post("/maps/scott", response_model=ScottResponse, tags=["Maps"])
async def scott(req: ClassifyRequest):
    """Scott triple and its consequences for a proper half-isomorphism of Moufang loops."""
    phi = _map(req)
    return await asyncio.to_thread(lambda: scott_response(analyse_proper_map(phi)))


@app.post("/search", response_model=SearchResponse, tags=["Maps"])
async def search(req: SearchRequest):
    source, target = _resolve(req.source), _resolve(req.target)
    common = dict(first=req.first, workers=settings.search.workers, order_filter=settings.search.order_filter)
    options = SearchOptions.proper_only(**common) if req.proper_only else SearchOptions(**common)
    if req.homomorphisms:
        mode, run = "half-homomorphisms", enumerate_half_homomorphisms
    else:
        mode, run = "half-isomorphisms", enumerate_half_isomorphisms
    if req.first:
        mode += " (first)"
    return await asyncio.to_thread(
        lambda: search_response(source, target, run(source, target, options), mode, req.limit)
    )


# ══════════════════════════════════════════════════════════════════
# SWEEPS
# ══════════════════════════════════════════════════════════════════

@app.post("/sweep", response_model=SweepReportResponse, tags=["Sweeps"])
async def sweep(req: SweepRequest):
    """Census of half-isomorphisms over the catalog; progress goes to /ws/sweep."""
    entries = [e for e in catalog_builtin() if e.order <= req.named_max_order]
    if req.include_enumerated:
        entries += list(enumerated_entries(req.max_order))
    report = await verify_main_sweep(
        entries,
        bus=bus,
        workers=settings.search.workers,
        max_findings=settings.sweep.max_findings_per_pair,
        order_filter=settings.search.order_filter,
    )
    return sweep_response(report)


# ══════════════════════════════════════════════════════════════════
# REAL-TIME
# ══════════════════════════════════════════════════════════════════

@app.websocket("/ws/sweep")
async def websocket_sweep(websocket: WebSocket):
    """Live stream of sweep events."""
    await websocket.accept()
    ws_connections.append(websocket)
    logger.info("Sweep stream connected")
    try:
        while True:
            data = await websocket.receive_text()
            if data == "ping":
                await websocket.send_json({"event": "pong", "timestamp": time.time()})
    except WebSocketDisconnect:
        ws_connections.remove(websocket)
        logger.info("Sweep stream disconnected")


# ══════════════════════════════════════════════════════════════════
# ROOT
# ══════════════════════════════════════════════════════════════════

@app.get("/", tags=["Root"])
async def root():
    return {
        "name": "halfloop",
        "version": "1.0.0",
        "endpoints": {
            "catalog": "GET /catalog",
            "check": "POST /loops/check",
            "nucleus": "POST /loops/nucleus",
            "classify": "POST /maps/classify",
            "scott": "POST /maps/scott",
            "search": "POST /search",
            "sweep": "POST /sweep",
            "stream": "WS /ws/sweep",
            "docs": "GET /docs",
        },
    }
