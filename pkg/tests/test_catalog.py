"""Tests for the built-in catalog and the group constructions."""

import pytest

from core.catalog import (
    Provenance,
    catalog_names,
    chein_double,
    cyclic_group,
    enumerated_entries,
    get_entry,
    resolve_loop,
    user_entries,
)
from core.errors import InputError
from core.identities import is_commutative, is_diassociative, is_group, is_moufang
from core.loop import element_order, parse_loop, serialize_loop


def test_catalog_contents(catalog):
    names = [e.name for e in catalog]
    assert names[:2] == ["paper-dot", "paper-star"]
    for required in ["C1", "C2", "C8", "S3", "D4", "Q8", "chein-S3", "chein-D4", "chein-Q8"]:
        assert required in names
    assert len(set(names)) == len(names)


def test_example_rows(paper_dot, paper_star):
    assert paper_dot.rows[1] == [1, 2, 0, 5, 3, 4]
    assert paper_star.rows[3] == [3, 5, 4, 0, 1, 2]
    assert get_entry("paper-dot").provenance is Provenance.PAPER_EXAMPLE


def test_every_entry_round_trips(catalog):
    for entry in catalog:
        assert parse_loop(serialize_loop(entry.loop)) == entry.loop


def test_trivial_loop():
    C1 = get_entry("C1").loop
    assert C1.order == 1
    assert is_group(C1).holds


def test_small_groups():
    Q8 = get_entry("Q8").loop
    D4 = get_entry("D4").loop
    assert Q8.order == D4.order == 8
    assert sum(element_order(Q8, x) == 2 for x in range(8)) == 1
    assert sum(element_order(D4, x) == 2 for x in range(8)) == 5
    assert get_entry("S3").loop.same_table(get_entry("S3").loop)


def test_chein_doubles():
    for name, order in (("chein-S3", 12), ("chein-D4", 16), ("chein-Q8", 16)):
        entry = get_entry(name)
        assert entry.provenance is Provenance.CHEIN_DOUBLE
        assert entry.order == order
        assert is_moufang(entry.loop).holds
        assert not is_group(entry.loop).holds
        assert is_diassociative(entry.loop).holds


def test_chein_double_of_abelian_group_is_a_group():
    M = chein_double(cyclic_group(2))
    assert M.order == 4
    assert is_group(M).holds
    assert is_commutative(M).holds


def test_chein_double_needs_a_group(paper_star):
    with pytest.raises(InputError):
        chein_double(paper_star)


def test_unknown_entry():
    with pytest.raises(InputError):
        get_entry("no-such-loop")


def test_resolve_loop_by_name_and_path(tmp_path, paper_star):
    assert resolve_loop("paper-star") == paper_star
    path = tmp_path / "star.loop"
    path.write_text(serialize_loop(paper_star))
    assert resolve_loop(str(path)).same_table(paper_star)
    with pytest.raises(InputError):
        resolve_loop(str(tmp_path / "missing.loop"))


def test_user_entries(tmp_path, paper_star):
    path = tmp_path / "mine.loop"
    path.write_text(serialize_loop(paper_star.renamed(None)))
    entries = user_entries(["S3", str(path)])
    assert [e.name for e in entries] == ["S3", "mine"]
    assert entries[1].provenance is Provenance.USER_SUPPLIED
    assert entries[1].named


def test_enumerated_entries():
    entries = list(enumerated_entries(4))
    assert len(entries) == 1 + 1 + 1 + 4
    assert all(e.provenance is Provenance.ENUMERATED and not e.named for e in entries)
    assert "paper-dot" in catalog_names()
