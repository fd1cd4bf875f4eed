"""Tests for the EventBus."""

import pytest

from core.events import Event, EventBus


@pytest.mark.asyncio
async def test_emit_and_subscribe(bus):
    received = []

    async def handler(e: Event):
        received.append(e)

    bus.subscribe("pair_searched", handler)
    await bus.signal("pair_searched", {"index": 0}, emitter="test")

    assert len(received) == 1
    assert received[0].name == "pair_searched"
    assert received[0].payload == {"index": 0}
    assert received[0].emitter == "test"


@pytest.mark.asyncio
async def test_wildcard_receives_everything(bus):
    names = []

    async def handler(e: Event):
        names.append(e.name)

    bus.subscribe("*", handler)
    await bus.signal("sweep_started")
    await bus.signal("sweep_finished")
    assert names == ["sweep_started", "sweep_finished"]


@pytest.mark.asyncio
async def test_failing_subscriber_is_isolated(bus):
    received = []

    async def broken(e: Event):
        raise RuntimeError("boom")

    async def handler(e: Event):
        received.append(e)

    bus.subscribe("proper_found", broken)
    bus.subscribe("proper_found", handler)
    await bus.signal("proper_found")
    assert len(received) == 1


@pytest.mark.asyncio
async def test_history():
    bus = EventBus(history_size=3)
    await bus.signal("a", emitter="test")
    await bus.signal("b", emitter="test")
    await bus.signal("a", emitter="test")
    await bus.signal("c", emitter="test")

    assert [e.name for e in bus.history] == ["b", "a", "c"]
    assert len(bus.history_for("a")) == 1
    assert len(bus.recent(2)) == 2
    bus.clear_history()
    assert bus.history == []


@pytest.mark.asyncio
async def test_unsubscribe(bus):
    received = []

    async def handler(e: Event):
        received.append(e)

    bus.subscribe("unsub_test", handler)
    await bus.signal("unsub_test")
    assert len(received) == 1

    bus.unsubscribe("unsub_test", handler)
    await bus.signal("unsub_test")
    assert len(received) == 1
    assert bus.subscriber_count == {"unsub_test": 0}


def test_event_to_dict():
    e = Event(name="x", payload={"k": 1}, emitter="sweep")
    d = e.to_dict()
    assert d["name"] == "x"
    assert d["payload"] == {"k": 1}
    assert set(d) == {"name", "payload", "emitter", "id", "timestamp"}
