import random

import pytest

from ditop.cubecore import DPath, build_grid_complex
from ditop.equivcheck import (
    DMapData,
    EquivFailure,
    check_dihomotopy_equivalence,
    check_strong,
    check_two_of_three_surjective,
    compose_dmaps,
    compose_equivalences,
    dmap_from_vertex_map,
    dmap_violations,
    identity_dmap,
    induced_class_map,
    map_path,
    validate_dmap,
)
from ditop.errors import ModelError
from ditop.fixtures import matchbox_maps, sf_hs_maps
from ditop.natsys import bisimilar, build_natural_system

from oracles import relabel_complex


def test_identity_validates(any_fixture):
    _, x = any_fixture
    assert validate_dmap(x, x, identity_dmap(x))


def test_reversed_segment_rejected(seg):
    # orientation reversal is not a dmap
    f = DMapData((1, 0), (("e", 0),), ())
    msgs = dmap_violations(seg, seg, f)
    assert msgs


def test_collapse_to_point(seg):
    point = build_grid_complex((1,))  # two vertices, one edge
    f = DMapData((0, 0), (("v", 0),), ())
    assert validate_dmap(seg, point, f)


def test_dmap_from_vertex_map_roundtrip(pv1):
    f = dmap_from_vertex_map(pv1, pv1, range(pv1.n_vertices))
    assert f == identity_dmap(pv1)


def test_dmap_from_vertex_map_rejects_nonmonotone(seg):
    with pytest.raises(ModelError):
        dmap_from_vertex_map(seg, seg, (1, 0))


def test_dmap_json_roundtrip(matchbox, topface):
    f, g = matchbox_maps()
    assert DMapData.from_json(f.to_json()) == f
    assert DMapData.from_json(g.to_json()) == g


def test_map_path_collapses_edges(matchbox, topface):
    f, _ = matchbox_maps()
    p = DPath(0, (0,))  # first edge out of the origin
    q = map_path(f, p)
    assert q.start == f.vertex_map[0]


def test_compose_dmaps_identity(pv1):
    i = identity_dmap(pv1)
    assert compose_dmaps(i, i) == i


def test_induced_class_map_identity(pv1):
    m = induced_class_map(pv1, pv1, identity_dmap(pv1), 0, pv1.n_vertices - 1)
    assert m == (0, 1)


def test_identity_is_equivalence(any_fixture):
    _, x = any_fixture
    i = identity_dmap(x)
    ok, cert = check_dihomotopy_equivalence(x, x, i, i)
    assert ok, cert
    assert check_strong(x, x, i, i)


def test_relabeling_is_equivalence(any_fixture):
    _, x = any_fixture
    rng = random.Random(3)
    perm = list(range(x.n_vertices))
    rng.shuffle(perm)
    y, f, g = relabel_complex(x, perm)
    ok, cert = check_dihomotopy_equivalence(x, y, f, g)
    assert ok, cert
    assert check_strong(x, y, f, g)


def test_grid_to_point_is_equivalence():
    x = build_grid_complex((2, 2))
    y = build_grid_complex((1,))
    # collapse everything to vertex 0 of the segment
    f = dmap_from_vertex_map(x, y, [0] * x.n_vertices)
    g = dmap_from_vertex_map(y, x, [0, 0])
    ok, cert = check_dihomotopy_equivalence(x, y, f, g)
    assert ok, cert
    assert check_strong(x, y, f, g)


def test_matchbox_projection_refuted(matchbox, topface):
    f, g = matchbox_maps()
    assert validate_dmap(matchbox, topface, f)
    assert validate_dmap(topface, matchbox, g)
    ok, failure = check_dihomotopy_equivalence(matchbox, topface, f, g)
    assert not ok
    assert isinstance(failure, EquivFailure)
    assert failure.stage == "f-class-bijection"
    assert failure.location == (0, 6)
    assert not failure.exhausted


def test_sf_hs_refuted(sf, hs):
    f, g = sf_hs_maps()
    assert validate_dmap(sf, hs, f)
    assert validate_dmap(hs, sf, g)
    ok, failure = check_dihomotopy_equivalence(sf, hs, f, g)
    assert not ok
    assert failure.stage == "f-class-bijection"
    assert not failure.exhausted


def test_accepted_implies_bisimilar(any_fixture):
    # sanity: an accepted self-equivalence never contradicts bisimilarity
    _, x = any_fixture
    i = identity_dmap(x)
    ok, _ = check_dihomotopy_equivalence(x, x, i, i)
    assert ok
    s = build_natural_system(x)
    assert bisimilar(s, s)[0]


def test_strong_implies_accepted():
    x = build_grid_complex((2, 2))
    y = build_grid_complex((1,))
    f = dmap_from_vertex_map(x, y, [0] * x.n_vertices)
    g = dmap_from_vertex_map(y, x, [0, 0])
    assert check_strong(x, y, f, g)
    ok, _ = check_dihomotopy_equivalence(x, y, f, g)
    assert ok


def test_compose_equivalences():
    x = build_grid_complex((2, 2))
    y = build_grid_complex((1,))
    f1 = dmap_from_vertex_map(x, y, [0] * x.n_vertices)
    g1 = dmap_from_vertex_map(y, x, [0, 0])
    ok1, e1 = check_dihomotopy_equivalence(x, y, f1, g1)
    i = identity_dmap(y)
    ok2, e2 = check_dihomotopy_equivalence(y, y, i, i)
    assert ok1 and ok2
    e = compose_equivalences(e1, e2)
    assert e.x is x and e.y is y


def test_compose_mismatched_middle_rejected(seg, pv1):
    i1 = identity_dmap(seg)
    i2 = identity_dmap(pv1)
    ok1, e1 = check_dihomotopy_equivalence(seg, seg, i1, i1)
    ok2, e2 = check_dihomotopy_equivalence(pv1, pv1, i2, i2)
    with pytest.raises(ModelError, match="compose"):
        compose_equivalences(e1, e2)


def test_two_of_three_surjective():
    from ditop.cubecore import PrecubicalSet

    x = build_grid_complex((2, 2))
    point = PrecubicalSet(1, [])
    i = identity_dmap(x)
    ok1, e1 = check_dihomotopy_equivalence(x, x, i, i)
    f2 = dmap_from_vertex_map(x, point, [0] * x.n_vertices)
    g21 = dmap_from_vertex_map(point, x, [0])
    ok21, e21 = check_dihomotopy_equivalence(x, point, f2, g21)
    assert ok1 and ok21
    ok, cert = check_two_of_three_surjective(e1, e21, f2)
    assert ok, cert
