"""
Shared test fixtures — the two example tables, a few small groups and a bus.
"""

from __future__ import annotations

import pytest
import pytest_asyncio

from core.catalog import catalog_builtin, cyclic_group, get_entry
from core.events import EventBus
from core.loop import LoopTable


@pytest.fixture
def paper_dot() -> LoopTable:
    return get_entry("paper-dot").loop


@pytest.fixture
def paper_star() -> LoopTable:
    return get_entry("paper-star").loop


@pytest.fixture
def s3() -> LoopTable:
    return get_entry("S3").loop


@pytest.fixture
def c3() -> LoopTable:
    return cyclic_group(3)


@pytest.fixture
def catalog():
    return catalog_builtin()


@pytest_asyncio.fixture
async def bus():
    b = EventBus()
    yield b
    b.clear_history()
