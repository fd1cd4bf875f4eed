"""
Event Bus — Progress Signals

Async pub/sub used by long sweeps to report progress. The CLI subscribes to
log events; the HTTP layer forwards them to websocket clients. A failing
subscriber is logged and never interrupts the emitter.
"""

from __future__ import annotations

import asyncio
import logging
import time
import uuid
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Coroutine

logger = logging.getLogger("halfloop.events")


@dataclass
class Event:
    name: str
    payload: dict[str, Any] = field(default_factory=dict)
    emitter: str = "unknown"
    id: str = field(default_factory=lambda: uuid.uuid4().hex[:12])
    timestamp: float = field(default_factory=time.time)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "payload": self.payload,
            "emitter": self.emitter,
            "id": self.id,
            "timestamp": self.timestamp,
        }


EventCallback = Callable[[Event], Coroutine[Any, Any, None]]

WILDCARD = "*"


class EventBus:
    def __init__(self, history_size: int = 1000):
        self._subscribers: dict[str, list[EventCallback]] = {}
        self._history: deque[Event] = deque(maxlen=history_size)

    # ── Subscription ──────────────────────────────────────────────

    def subscribe(self, event_name: str, callback: EventCallback) -> None:
        """Register a callback; the name "*" receives every event."""
        self._subscribers.setdefault(event_name, []).append(callback)
        logger.debug("Subscribed to '%s': %s", event_name, callback.__qualname__)

    def unsubscribe(self, event_name: str, callback: EventCallback) -> None:
        if event_name in self._subscribers:
            self._subscribers[event_name] = [
                cb for cb in self._subscribers[event_name] if cb is not callback
            ]

    # ── Emission ──────────────────────────────────────────────────

    async def emit(self, event: Event) -> None:
        self._history.append(event)
        callbacks = self._subscribers.get(event.name, []) + self._subscribers.get(WILDCARD, [])
        if not callbacks:
            return
        results = await asyncio.gather(*(cb(event) for cb in callbacks), return_exceptions=True)
        for cb, result in zip(callbacks, results):
            if isinstance(result, Exception):
                logger.error(
                    "Subscriber %s raised %s on event '%s': %s",
                    cb.__qualname__,
                    type(result).__name__,
                    event.name,
                    result,
                )

    async def signal(self, name: str, payload: dict[str, Any] | None = None, emitter: str = "unknown") -> None:
        await self.emit(Event(name=name, payload=payload or {}, emitter=emitter))

    # ── History ───────────────────────────────────────────────────

    @property
    def history(self) -> list[Event]:
        return list(self._history)

    def recent(self, n: int = 50) -> list[Event]:
        return list(self._history)[-n:]

    def history_for(self, event_name: str) -> list[Event]:
        return [e for e in self._history if e.name == event_name]

    def clear_history(self) -> None:
        self._history.clear()

    @property
    def subscriber_count(self) -> dict[str, int]:
        return {name: len(cbs) for name, cbs in self._subscribers.items()}
