"""Tests for the loop core — tables, primitives and file formats."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from core.catalog import catalog_builtin
from core.errors import InputError, ParseError, TwoSidedInverseAbsent
from core.latin import enumerate_loops
from core.loop import (
    LoopTable,
    closure,
    dump_loop_json,
    element_order,
    inverse,
    left_divide,
    load_loop,
    multiply,
    parse_loop,
    parse_loop_json,
    power,
    right_divide,
    serialize_loop,
    two_sided_inverses,
)

SMALL_LOOPS = [e.loop for e in catalog_builtin() if e.order <= 8] + list(enumerate_loops(4))


def test_multiply_and_divide(paper_dot, paper_star):
    assert multiply(paper_dot, 1, 3) == 5
    assert multiply(paper_star, 3, 4) == 1
    assert left_divide(paper_dot, 1, 0) == 2
    assert left_divide(paper_star, 3, 2) == 5
    assert right_divide(paper_dot, 1, 0) == 2


def test_inverses(paper_dot, paper_star):
    assert inverse(paper_dot, 1) == 2
    assert inverse(paper_star, 3) == 3
    assert two_sided_inverses(paper_dot) == [0, 2, 1, 3, 4, 5]


ONE_SIDED = """order 5
0 1 2 3 4
1 2 0 4 3
2 4 3 0 1
3 0 4 1 2
4 3 1 2 0
"""


def test_one_sided_inverse_is_refused():
    Q = parse_loop(ONE_SIDED)
    with pytest.raises(TwoSidedInverseAbsent) as info:
        inverse(Q, 1)
    assert info.value.right_inverse == 2
    assert info.value.left_inverse == 3
    assert info.value.to_dict()["right_inverse"] == 2
    assert "right inverse 2 but left inverse 3" in info.value.message
    assert two_sided_inverses(Q)[1] == -1


def test_powers(paper_dot):
    assert power(paper_dot, 1, 2) == 2
    assert power(paper_dot, 1, 3) == 0
    assert power(paper_dot, 3, -1) == 3
    assert power(paper_dot, 4, 0) == 0
    assert element_order(paper_dot, 1) == 3
    assert element_order(paper_dot, 3) == 2


def test_element_out_of_range(paper_dot):
    with pytest.raises(InputError):
        multiply(paper_dot, 0, 6)
    with pytest.raises(InputError):
        multiply(paper_dot, -1, 0)


def test_closure(paper_dot):
    assert np.flatnonzero(closure(paper_dot, [3])).tolist() == [0, 3]
    assert np.flatnonzero(closure(paper_dot, [1])).tolist() == [0, 1, 2]
    assert closure(paper_dot, [1, 3]).all()
    assert np.flatnonzero(closure(paper_dot, [])).tolist() == [0]


def test_non_latin_rejected_with_location():
    with pytest.raises(ParseError) as exc:
        LoopTable(np.array([[0, 1], [1, 1]]))
    assert exc.value.column is not None or exc.value.row is not None


def test_identity_must_be_zero():
    with pytest.raises(ParseError):
        LoopTable(np.array([[1, 0], [0, 1]]))


def test_table_is_read_only(paper_dot):
    with pytest.raises(ValueError):
        paper_dot.table[0, 0] = 1


def test_parse_text_format():
    text = "# C2\norder 2\nname C2\n0 1\n1 0\n"
    loop = parse_loop(text)
    assert loop.order == 2
    assert loop.name == "C2"
    assert multiply(loop, 1, 1) == 0


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_loop("0 1\n1 0\n")
    with pytest.raises(ParseError):
        parse_loop("order 2\n0 1\n")
    with pytest.raises(ParseError) as exc:
        parse_loop("order 2\n0 1\n1 x\n")
    assert exc.value.row == 1


def test_text_and_json_agree(paper_star):
    from_text = parse_loop(serialize_loop(paper_star))
    from_json = parse_loop_json(dump_loop_json(paper_star))
    assert from_text == paper_star
    assert from_json == paper_star


def test_load_shipped_file_matches_catalog(paper_dot):
    from core.catalog import DATA_DIR

    loaded = load_loop(DATA_DIR / "paper-dot.loop")
    assert loaded.rows[1] == [1, 2, 0, 5, 3, 4]
    assert loaded == paper_dot


def test_load_missing_file():
    with pytest.raises(InputError):
        load_loop("/nonexistent/loop.txt")


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_division_laws(data):
    Q = data.draw(st.sampled_from(SMALL_LOOPS))
    a = data.draw(st.integers(0, Q.order - 1))
    b = data.draw(st.integers(0, Q.order - 1))
    assert multiply(Q, a, left_divide(Q, a, b)) == b
    assert multiply(Q, right_divide(Q, a, b), a) == b


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_closure_is_monotone_and_closed(data):
    Q = data.draw(st.sampled_from(SMALL_LOOPS))
    seeds = data.draw(st.sets(st.integers(0, Q.order - 1), max_size=3))
    extra = data.draw(st.integers(0, Q.order - 1))
    small = closure(Q, seeds)
    large = closure(Q, seeds | {extra})
    assert (large | small).tolist() == large.tolist()
    idx = np.flatnonzero(small)
    assert small[Q.table[np.ix_(idx, idx)]].all()
