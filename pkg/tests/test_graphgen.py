import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewrand.errors import EdgeListError, ParameterError, SamplingError
from skewrand.graphgen import (
    GnpParams,
    OrientedGraph,
    RegularParams,
    degree_sequence,
    derive_seed,
    format_edge_list,
    is_simple_regular,
    parse_edge_list,
    read_edge_list,
    sample_gnp_oriented,
    sample_regular_oriented,
    write_edge_list,
)


@st.composite
def oriented_graphs(draw, max_n=12):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    states = draw(st.lists(st.sampled_from((-1, 0, 1)), min_size=len(pairs), max_size=len(pairs)))
    arcs = [(u, v) if s > 0 else (v, u) for (u, v), s in zip(pairs, states) if s]
    return OrientedGraph(n, arcs)


def test_graph_rejects_bad_arcs():
    with pytest.raises(ParameterError):
        OrientedGraph(3, [(0, 0)])
    with pytest.raises(ParameterError):
        OrientedGraph(3, [(0, 1), (1, 0)])
    with pytest.raises(ParameterError):
        OrientedGraph(3, [(0, 3)])
    with pytest.raises(ParameterError):
        OrientedGraph(0, [])


def test_arcs_are_sorted_and_frozen():
    g = OrientedGraph(4, [(3, 1), (0, 2), (2, 1)])
    assert g.arcs.tolist() == [[0, 2], [2, 1], [3, 1]]
    with pytest.raises(ValueError):
        g.arcs[0, 0] = 1


def test_gnp_p_zero_is_empty():
    assert sample_gnp_oriented(GnpParams(4, 0.0, seed=99)).num_arcs == 0


def test_gnp_p_one_is_tournament():
    g = sample_gnp_oriented(GnpParams(3, 1.0, seed=5))
    assert g.num_arcs == 3
    assert {frozenset(a) for a in g.arc_set()} == {frozenset(p) for p in [(0, 1), (1, 2), (0, 2)]}


def test_gnp_edge_count_binomial():
    g = sample_gnp_oriented(GnpParams(1000, 0.1, seed=7))
    pairs = 1000 * 999 // 2
    assert abs(g.num_arcs - pairs * 0.1) <= 4 * math.sqrt(pairs * 0.1 * 0.9)


def test_gnp_orientation_balance():
    # 142 vertices give 10011 forced pairs; use the first 10000
    g = sample_gnp_oriented(GnpParams(142, 1.0, seed=11))
    forward = (g.arcs[:, 0] < g.arcs[:, 1])[:10000].sum()
    assert abs(forward - 5000) <= 4 * math.sqrt(10000 * 0.25)


def test_gnp_invalid_p():
    with pytest.raises(ParameterError):
        GnpParams(5, 1.5)
    with pytest.raises(ParameterError):
        GnpParams(5, -0.1)


def test_seed_determinism_byte_exact():
    a = format_edge_list(sample_gnp_oriented(GnpParams(80, 0.3, seed=3)))
    b = format_edge_list(sample_gnp_oriented(GnpParams(80, 0.3, seed=3)))
    c = format_edge_list(sample_gnp_oriented(GnpParams(80, 0.3, seed=4)))
    assert a == b and a != c
    r1 = format_edge_list(sample_regular_oriented(RegularParams(50, 4, seed=2)))
    r2 = format_edge_list(sample_regular_oriented(RegularParams(50, 4, seed=2)))
    assert r1 == r2


def test_derive_seed_is_stable_and_distinct():
    seeds = {derive_seed(7, t) for t in range(1000)}
    assert len(seeds) == 1000
    assert derive_seed(7, 3) == derive_seed(7, 3)
    assert all(0 <= s < 2**64 for s in seeds)
    with pytest.raises(ParameterError):
        derive_seed(-1, 0)


def test_regular_triangle():
    g = sample_regular_oriented(RegularParams(3, 2, seed=123))
    assert g.num_arcs == 3
    assert all(i + o == 2 for i, o in degree_sequence(g))


def test_regular_odd_product_rejected():
    with pytest.raises(ParameterError):
        RegularParams(5, 3)
    with pytest.raises(ParameterError):
        RegularParams(4, 4)


@pytest.mark.parametrize("sampler", ["pairing", "steger-wormald"])
def test_regular_degree_scan(sampler):
    g = sample_regular_oriented(RegularParams(100, 3, seed=1, sampler=sampler))
    assert all(i + o == 3 for i, o in degree_sequence(g))
    assert is_simple_regular(g, 3)
    assert g.num_arcs == 150


@pytest.mark.parametrize(
    "n,d,seed,sampler",
    [
        (10, 0, 0, "pairing"),
        (40, 4, 2, "pairing"),
        (200, 4, 3, "pairing"),
        (12, 11, 1, "steger-wormald"),
        (40, 6, 2, "steger-wormald"),
    ],
)
def test_regular_outputs_pass_validation_scan(n, d, seed, sampler):
    g = sample_regular_oriented(RegularParams(n, d, seed=seed, sampler=sampler))
    assert is_simple_regular(g, d)


def test_steger_wormald_large_degree():
    g = sample_regular_oriented(RegularParams(300, 40, seed=9, sampler="steger-wormald"))
    assert is_simple_regular(g, 40)


def test_pairing_budget_exhaustion_is_loud():
    # acceptance ~ exp(-(d^2-1)/4) is astronomically small at d = 30
    with pytest.raises(SamplingError, match="max_attempts"):
        sample_regular_oriented(RegularParams(200, 30, seed=0, max_attempts=5))


def test_regular_pairing_is_uniform_on_small_case():
    # K4 minus a perfect matching: the three 2-regular graphs on 4 vertices are 4-cycles
    seen = {}
    for s in range(600):
        g = sample_regular_oriented(RegularParams(4, 2, seed=s))
        key = frozenset(frozenset(a) for a in g.arc_set())
        seen[key] = seen.get(key, 0) + 1
    assert len(seen) == 3
    assert all(abs(c - 200) <= 4 * math.sqrt(600 * (1 / 3) * (2 / 3)) for c in seen.values())


def test_degree_sequence_examples():
    assert degree_sequence(OrientedGraph(3, [])) == [(0, 0)] * 3
    assert degree_sequence(OrientedGraph(2, [(0, 1)])) == [(0, 1), (1, 0)]
    assert degree_sequence(OrientedGraph(3, [(0, 1), (1, 2), (2, 0)])) == [(1, 1)] * 3


@given(oriented_graphs())
def test_degree_sums_equal_arc_count(g):
    seq = degree_sequence(g)
    assert sum(i for i, _ in seq) == g.num_arcs == sum(o for _, o in seq)


def test_edge_list_format():
    assert format_edge_list(OrientedGraph(2, [(0, 1)])) == "2 1\n0 1\n"


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("2 1\n0 0\n", 2),
        ("2 1\n0 2\n", 2),
        ("3 2\n0 1\n1 0\n", 3),
        ("3 2\n0 1\n", 2),
        ("x 1\n0 1\n", 1),
        ("3 1\n0 1 2\n", 2),
        ("", 1),
    ],
)
def test_edge_list_parse_errors(text, lineno):
    with pytest.raises(EdgeListError) as info:
        parse_edge_list(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_edge_list_round_trip_file(tmp_path):
    g = sample_gnp_oriented(GnpParams(50, 0.2, seed=3))
    path = tmp_path / "g.txt"
    write_edge_list(g, path)
    assert read_edge_list(path) == g
    assert path.read_bytes() == format_edge_list(g).encode("ascii")


@settings(max_examples=50)
@given(oriented_graphs())
def test_edge_list_round_trip_property(g):
    buf = io.StringIO()
    write_edge_list(g, buf)
    buf.seek(0)
    assert read_edge_list(buf) == g
