import random

import pytest
from hypothesis import given, settings, strategies as st

from ditop.cubecore import (
    DPath,
    PrecubicalSet,
    build_grid_complex,
    concat,
    enumerate_dpaths,
    gamma,
    grid_vertex,
    reachable,
)
from ditop.errors import ModelError, PathCapExceeded

from oracles import brute_grid_cells, closure_pairs, path_count_dp


def test_edge_endpoint_validation():
    with pytest.raises(ModelError, match="unknown endpoint"):
        PrecubicalSet(2, [(0, 5)])


def test_square_commutation_validation():
    # 0->1->3 and 0->2->3 commute; swapping roles must not
    edges = [(0, 1), (1, 3), (0, 2), (2, 3)]
    PrecubicalSet(4, edges, [(0, 1, 2, 3)])
    with pytest.raises(ModelError, match="commute"):
        PrecubicalSet(4, edges, [(0, 2, 1, 3)])


def test_cycle_rejected():
    with pytest.raises(ModelError, match="cycle"):
        PrecubicalSet(2, [(0, 1), (1, 0)])


def test_json_roundtrip_byte_stable(any_fixture):
    _, x = any_fixture
    text = x.to_json()
    y = PrecubicalSet.from_json(text)
    assert y.to_json() == text
    assert y.edges == x.edges
    assert y.squares == x.squares


@st.composite
def grids(draw):
    n = draw(st.integers(1, 2))
    dims = tuple(draw(st.integers(1, 3)) for _ in range(n))
    boxes = []
    if draw(st.booleans()):
        box = []
        for d in dims:
            lo = draw(st.integers(0, d - 1))
            hi = draw(st.integers(lo + 1, d))
            box.append((lo, hi))
        boxes.append(tuple(box))
    return dims, boxes


@settings(max_examples=120, deadline=None)
@given(grids())
def test_grid_matches_midpoint_oracle(case):
    dims, boxes = case
    x = build_grid_complex(dims, boxes)
    verts, edges, squares = brute_grid_cells(dims, boxes)
    assert x.coords == tuple(sorted(verts))
    got_edges = {
        (x.coords[s], tuple(b - a for a, b in zip(x.coords[s], x.coords[t])))
        for s, t in x.edges
    }
    want_edges = {
        (p, tuple(1 if i == k else 0 for i in range(len(dims))))
        for p, k in edges
    }
    assert got_edges == want_edges
    assert len(x.squares) == len(squares)


def test_gamma_matches_closure_oracle(any_fixture):
    _, x = any_fixture
    assert set(gamma(x).pairs) == closure_pairs(x)


def test_reachable_consistent_with_gamma(sf):
    pairs = set(gamma(sf).pairs)
    for a in range(sf.n_vertices):
        for b in range(sf.n_vertices):
            assert reachable(sf, a, b) == ((a, b) in pairs)


def test_enumeration_counts_match_dp(any_fixture):
    _, x = any_fixture
    for a, b in gamma(x):
        assert len(enumerate_dpaths(x, a, b)) == path_count_dp(x, a, b)


def test_enumeration_lexicographic(pv1):
    paths = enumerate_dpaths(pv1, 0, pv1.n_vertices - 1)
    seqs = [tuple(pv1.edges[e][1] for e in p.edges) for p in paths]
    assert seqs == sorted(seqs)


def test_enumeration_unreachable_rejected(seg):
    with pytest.raises(ModelError, match="not reachable"):
        enumerate_dpaths(seg, 1, 0)


def test_path_cap():
    x = build_grid_complex((4, 4))
    with pytest.raises(PathCapExceeded) as exc:
        enumerate_dpaths(x, 0, x.n_vertices - 1, cap=10)
    assert exc.value.pair == (0, x.n_vertices - 1)


def test_concat_checks_endpoints(seg):
    p = DPath(0, (0,))
    with pytest.raises(ModelError, match="mismatch"):
        concat(seg, p, p)
    q = concat(seg, DPath(0), p)
    assert q == p


def test_check_path_rejects_gaps(pv1):
    with pytest.raises(ModelError, match="consecutive"):
        bad = DPath(0, (0, 0))
        pv1.check_path(bad)


def test_grid_vertex_lookup(pv1):
    assert grid_vertex(pv1, (0, 0)) == 0
    assert grid_vertex(pv1, (3, 3)) == pv1.n_vertices - 1
    with pytest.raises(ModelError):
        grid_vertex(pv1, (9, 9))


def test_flip_table_symmetric(any_fixture):
    _, x = any_fixture
    for b, r, l, t in x.squares:
        assert x.flip(b, r) == (l, t)
        assert x.flip(l, t) == (b, r)


def test_grid_dims_validation():
    with pytest.raises(ModelError):
        build_grid_complex(())
    with pytest.raises(ModelError):
        build_grid_complex((0,))
    with pytest.raises(ModelError, match="out of range"):
        build_grid_complex((2,), [((0, 3),)])
