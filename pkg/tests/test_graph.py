import gzip
import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tss.graph import (
    Graph,
    ParseError,
    Thresholds,
    load_graph,
    majority_thresholds,
    parse_edge_list,
    thresholds_from_file,
    validate_thresholds,
    write_edge_list,
)


def test_parse_basic():
    g = parse_edge_list("0 1\n1 2\n")
    assert g.vertex_count == 3
    assert g.edge_count == 2
    assert list(g.neighbors(1)) == [0, 2]
    assert g.degree(0) == 1 and g.degree(1) == 2


def test_parse_comments_and_blank_lines():
    g = parse_edge_list("# header\n\n0 1\n   \n# more\n1 2\n")
    assert g.vertex_count == 3 and g.edge_count == 2


def test_parse_multiple_pairs_per_line():
    g = parse_edge_list("0 1 1 2\n")
    assert g.edge_count == 2


def test_parse_odd_token_count_names_line():
    with pytest.raises(ParseError, match="line 2"):
        parse_edge_list("0 1\n0 1 2\n")


def test_parse_non_integer_token_names_line_and_token():
    with pytest.raises(ParseError, match="line 1.*'x'"):
        parse_edge_list("0 x\n")


def test_parse_negative_id():
    with pytest.raises(ParseError, match="line 1"):
        parse_edge_list("0 -1\n")


def test_self_loop_dropped_but_vertex_kept():
    g = parse_edge_list("3 3\n")
    assert g.vertex_count == 1
    assert g.edge_count == 0
    assert g.meta.self_loops_dropped == 1
    assert list(g.original_ids) == [3]


def test_duplicate_edges_dropped_both_orders():
    g = parse_edge_list("0 1\n1 0\n0 1\n")
    assert g.edge_count == 1
    assert g.meta.duplicate_edges_dropped == 2


def test_renumbering_keeps_original_ids():
    g = parse_edge_list("10 30\n30 20\n")
    assert g.vertex_count == 3
    assert list(g.original_ids) == [10, 20, 30]
    assert g.internal_id(30) == 2
    assert list(g.to_original([0, 2])) == [10, 30]


def test_internal_id_unknown():
    g = parse_edge_list("0 1\n")
    with pytest.raises(ValueError, match="unknown vertex id 7"):
        g.internal_id(7)


def test_neighbors_sorted_and_readonly():
    g = parse_edge_list("2 0\n2 3\n2 1\n")
    nbrs = g.neighbors(2)
    assert list(nbrs) == [0, 1, 3]
    with pytest.raises(ValueError):
        nbrs[0] = 9


def test_edges_iterates_ascending():
    g = parse_edge_list("2 0\n1 0\n2 1\n")
    assert list(g.edges()) == [(0, 1), (0, 2), (1, 2)]


def test_from_edges_range_check():
    with pytest.raises(ValueError, match="out of range"):
        Graph.from_edges(2, [(0, 2)])


def test_from_edges_counts_drops():
    g = Graph.from_edges(3, [(0, 1), (1, 0), (2, 2)])
    assert g.edge_count == 1
    assert g.meta.duplicate_edges_dropped == 1
    assert g.meta.self_loops_dropped == 1


def test_empty_input():
    g = parse_edge_list("")
    assert g.vertex_count == 0 and g.edge_count == 0
    assert majority_thresholds(g).values.shape == (0,)


def test_load_graph_detects_gzip_by_magic(tmp_path):
    # gzipped content behind a name with no .gz suffix
    path = tmp_path / "g.txt"
    path.write_bytes(gzip.compress(b"0 1\n1 2\n"))
    g = load_graph(path)
    assert g.vertex_count == 3 and g.edge_count == 2

    plain = tmp_path / "plain.txt"
    plain.write_text("0 1\n")
    assert load_graph(plain).edge_count == 1


def test_write_edge_list_round_trip(tmp_path):
    g = parse_edge_list("10 30\n30 20\n20 10\n")
    out = tmp_path / "out.txt"
    write_edge_list(g, out)
    g2 = load_graph(out)
    assert list(g2.original_ids) == list(g.original_ids)
    assert list(g2.edges()) == list(g.edges())


def test_write_edge_list_to_stream():
    g = parse_edge_list("5 7\n")
    buf = io.StringIO()
    write_edge_list(g, buf)
    assert buf.getvalue() == "5 7\n"


def test_degree_orders():
    # degrees: 0 -> 2, 1 -> 1, 2 -> 3, 3 -> 2
    g = parse_edge_list("0 2\n0 3\n1 2\n2 3\n")
    assert list(g.degree_order_desc) == [2, 0, 3, 1]
    assert list(g.degree_order_asc) == [1, 0, 3, 2]


def test_majority_thresholds_match_ceil():
    g = parse_edge_list("0 1\n0 2\n0 3\n1 2\n4 4\n")
    th = majority_thresholds(g)
    for v in range(g.vertex_count):
        assert th[v] == math.ceil(g.degree(v) / 2)
    assert th[g.internal_id(4)] == 0  # isolated vertex


def test_thresholds_from_file_defaults_and_overrides():
    g = parse_edge_list("10 20\n20 30\n")
    th = thresholds_from_file(g, "# comment\n20 2\n")
    assert th[g.internal_id(20)] == 2
    assert th[g.internal_id(10)] == 1  # majority default


def test_thresholds_from_file_zero_allowed():
    g = parse_edge_list("0 1\n")
    th = thresholds_from_file(g, "0 0\n")
    assert th[0] == 0


def test_thresholds_from_file_unknown_vertex():
    g = parse_edge_list("0 1\n")
    with pytest.raises(ValueError, match="unknown vertex id 9"):
        thresholds_from_file(g, "9 1\n")


def test_thresholds_from_file_value_above_degree_names_original_id():
    g = parse_edge_list("10 20\n")
    with pytest.raises(ValueError, match="vertex 10"):
        thresholds_from_file(g, "10 2\n")


def test_thresholds_from_file_bad_tokens():
    g = parse_edge_list("0 1\n")
    with pytest.raises(ParseError, match="line 1"):
        thresholds_from_file(g, "0 1 2\n")
    with pytest.raises(ParseError, match="'x'"):
        thresholds_from_file(g, "0 x\n")


def test_validate_thresholds_errors():
    g = parse_edge_list("0 1\n")
    with pytest.raises(ValueError, match="1 entries for 2 vertices"):
        validate_thresholds(g, Thresholds(np.array([1], dtype=np.int32)))
    with pytest.raises(ValueError, match="out of range"):
        validate_thresholds(g, Thresholds(np.array([-1, 0], dtype=np.int32)))
    with pytest.raises(ValueError, match="out of range"):
        validate_thresholds(g, Thresholds(np.array([0, 2], dtype=np.int32)))


@st.composite
def edge_lists(draw):
    n = draw(st.integers(min_value=1, max_value=12))
    m = draw(st.integers(min_value=0, max_value=20))
    edges = [
        (draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))) for _ in range(m)
    ]
    return n, edges


def _original_edges(g: Graph) -> set[tuple[int, int]]:
    orig = g.original_ids
    return {(int(orig[u]), int(orig[v])) for u, v in g.edges()}


@given(edge_lists())
@settings(deadline=None, max_examples=60)
def test_round_trip_preserves_edge_set(case):
    n, edges = case
    g = Graph.from_edges(n, edges)
    buf = io.StringIO()
    write_edge_list(g, buf)
    g2 = parse_edge_list(buf.getvalue())
    # vertices with no incident edges vanish from the text form, but the
    # edge set in original ids survives exactly
    assert _original_edges(g2) == _original_edges(g)


@given(edge_lists())
@settings(deadline=None, max_examples=60)
def test_csr_is_consistent(case):
    n, edges = case
    g = Graph.from_edges(n, edges)
    assert g.indptr[0] == 0 and g.indptr[-1] == len(g.indices)
    assert int(g.degrees.sum()) == 2 * g.edge_count
    seen = set()
    for u in range(n):
        nbrs = list(g.neighbors(u))
        assert nbrs == sorted(nbrs)
        assert u not in nbrs
        for v in nbrs:
            seen.add((min(u, v), max(u, v)))
            assert u in g.neighbors(v)  # symmetry
    assert len(seen) == g.edge_count
