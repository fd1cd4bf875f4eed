"""Integration tests for the HTTP API."""

import pytest
from httpx import ASGITransport, AsyncClient

import main
from core.errors import InvariantViolation
from main import app


def client():
    return AsyncClient(transport=ASGITransport(app=app), base_url="http://test")


@pytest.mark.asyncio
async def test_root():
    async with client() as c:
        resp = await c.get("/")
    assert resp.status_code == 200
    data = resp.json()
    assert data["name"] == "halfloop"
    assert "sweep" in data["endpoints"]


@pytest.mark.asyncio
async def test_catalog():
    async with client() as c:
        resp = await c.get("/catalog")
        assert resp.status_code == 200
        names = [e["name"] for e in resp.json()]
        assert "chein-S3" in names

        resp = await c.get("/catalog/paper-star")
        assert resp.status_code == 200
        assert resp.json()["table"][3] == [3, 5, 4, 0, 1, 2]

        resp = await c.get("/catalog/nothing")
        assert resp.status_code == 400
        assert resp.json()["error"] == "InputError"


@pytest.mark.asyncio
async def test_check_inline_and_named():
    async with client() as c:
        resp = await c.post("/loops/check", json={"name": "paper-star"})
        assert resp.status_code == 200
        reports = resp.json()["reports"]
        assert reports["diassociative"]["witness"] == [3, 3, 1]
        assert reports["automorphic"]["holds"] is True

        inline = {"loop": {"order": 2, "table": [[0, 1], [1, 0]]}}
        resp = await c.post("/loops/check", json=inline)
        assert resp.status_code == 200
        assert resp.json()["reports"]["group"]["holds"] is True


@pytest.mark.asyncio
async def test_bad_table_is_refused():
    async with client() as c:
        resp = await c.post("/loops/check", json={"loop": {"order": 2, "table": [[0, 1], [1, 1]]}})
    assert resp.status_code == 400
    assert resp.json()["error"] == "ParseError"
    assert resp.json()["row"] == 1


@pytest.mark.asyncio
async def test_nucleus():
    async with client() as c:
        resp = await c.post("/loops/nucleus", json={"name": "chein-S3"})
    assert resp.status_code == 200
    data = resp.json()
    assert data["nucleus"] == [0]
    assert data["normal"] is True
    assert data["squaring"]["quotient_order"] == 12


@pytest.mark.asyncio
async def test_classify_and_scott():
    body = {"source": {"name": "paper-dot"}, "target": {"name": "paper-star"}, "images": [0, 1, 2, 3, 4, 5]}
    async with client() as c:
        resp = await c.post("/maps/classify", json=body)
        assert resp.status_code == 200
        assert resp.json()["verdict"] == "ProperHalfIsomorphism"
        assert resp.json()["proper_witnesses"] == [[3, 4], [1, 3]]

        resp = await c.post("/maps/scott", json=body)
        assert resp.status_code == 400
        assert resp.json()["error"] == "TargetNotMoufang"

        iso = {"source": {"name": "chein-S3"}, "target": {"name": "chein-S3"}, "images": list(range(12))}
        resp = await c.post("/maps/scott", json=iso)
        assert resp.status_code == 400
        assert resp.json()["error"] == "NotProper"


@pytest.mark.asyncio
async def test_search():
    body = {"source": {"name": "S3"}, "target": {"name": "S3"}, "limit": 5}
    async with client() as c:
        resp = await c.post("/search", json=body)
    assert resp.status_code == 200
    data = resp.json()
    assert data["count"] == 5
    assert data["truncated"] is True


@pytest.mark.asyncio
async def test_sweep():
    async with client() as c:
        resp = await c.post("/sweep", json={"max_order": 3, "named_max_order": 3})
    assert resp.status_code == 200
    summary = resp.json()["summary"]
    assert summary["pairs"] == 12
    assert summary["proper_total"] == 0


@pytest.mark.asyncio
async def test_trap_maps_to_500(monkeypatch):
    def trap(Q):
        raise InvariantViolation("planted")

    monkeypatch.setattr(main, "check_response", trap)
    async with client() as c:
        resp = await c.post("/loops/check", json={"name": "C2"})
    assert resp.status_code == 500
    assert resp.json()["error"] == "InvariantViolation"
