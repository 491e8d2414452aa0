import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homloc.complex import Chain, build
from homloc.metric import (
    Metric,
    WeightFunction,
    diam,
    distance_table,
    geodesic_ball,
    geodesic_field,
    rad,
    vol,
)
from homloc.testkit import RandomParams, fixture, random_complex
from oracles import ball_set, diam_brute, floyd_warshall, rad_brute


def test_metric_validation():
    with pytest.raises(ValueError):
        Metric((1.0, 0.0))
    with pytest.raises(ValueError):
        Metric((1.0, math.inf))
    k = build([(0, 1), (1, 2)])
    with pytest.raises(ValueError):
        distance_table(k, Metric((1.0,)))


def test_from_edges_default_and_required():
    k = build([(0, 1), (1, 2)])
    assert Metric.from_edges(k, {(2, 1): 3.0}).lengths == (1.0, 3.0)
    with pytest.raises(KeyError):
        Metric.from_edges(k, {(0, 1): 2.0}, default=None)
    with pytest.raises(KeyError):
        Metric.from_edges(k, {(0, 2): 2.0})


def test_square_distances():
    f = fixture("hollow_square")
    field = geodesic_field(f.complex, f.metric, 0)
    assert field.vertex_values == (0.0, 1.0, 2.0, 1.0)
    # edges take the larger endpoint value
    assert field.simplex_values[1] == (1.0, 1.0, 2.0, 2.0)
    assert field.distinct_values() == [0.0, 1.0, 2.0]


def test_unknown_source_vertex():
    f = fixture("hollow_square")
    with pytest.raises(KeyError):
        geodesic_field(f.complex, f.metric, 9)


def test_disconnected_vertices_are_infinitely_far():
    k = build([(0, 1), (2, 3)])
    assert geodesic_field(k, Metric.unit(k), 0).vertex_values[2] == math.inf


def test_ball_is_face_closed_and_radius_checked():
    f = fixture("cylinder_3_6")
    field = geodesic_field(f.complex, f.metric, 0)
    for r in field.distinct_values():
        assert geodesic_ball(f.complex, field, r).is_closed()
    with pytest.raises(ValueError):
        geodesic_ball(f.complex, field, -1.0)


def test_vol_diam_rad_on_square():
    f = fixture("hollow_square")
    k, m = f.complex, f.metric
    loop = f.cycles["loop"]
    assert vol(loop) == 4.0
    assert vol(loop, WeightFunction.uniform(k, 0.5)) == 2.0
    assert diam(loop, k, m) == 2.0
    assert rad(loop, k, m) == (2.0, 0)
    edge = Chain.from_simplices(k, [(1, 2)])
    assert rad(edge, k, m) == (1.0, 1)


def test_empty_chain_size_is_undefined():
    f = fixture("hollow_square")
    with pytest.raises(ValueError):
        diam(Chain.zero(f.complex, 1), f.complex, f.metric)


def test_missing_weight():
    with pytest.raises(KeyError):
        WeightFunction({})[(1, 0)]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000))
def test_distances_match_floyd_warshall(seed):
    k, m = random_complex(RandomParams(n_vertices=7, edge_prob=0.45), seed)
    dist = floyd_warshall(k, m.lengths)
    table = distance_table(k, m)
    for a, va in enumerate(k.vertex_ids):
        for b, vb in enumerate(k.vertex_ids):
            if math.isinf(dist[(va, vb)]):
                assert math.isinf(table[a][b])
            else:
                assert table[a][b] == pytest.approx(dist[(va, vb)], abs=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_balls_match_oracle(seed, data):
    k, m = random_complex(RandomParams(n_vertices=6, edge_prob=0.6), seed)
    dist = floyd_warshall(k, m.lengths)
    p = data.draw(st.sampled_from(k.vertex_ids))
    field = geodesic_field(k, m, p)
    r = data.draw(st.sampled_from(field.distinct_values()))
    ball = geodesic_ball(k, field, r)
    got = {s for d in range(k.max_dim + 1) for s in ball.simplices(d)}
    assert got == ball_set(k, dist, p, r)
    assert ball.is_closed()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_rad_and_diam_match_oracle(seed, data):
    k, m = random_complex(RandomParams(n_vertices=6, edge_prob=0.7), seed)
    if k.n(1) == 0:
        return
    dist = floyd_warshall(k, m.lengths)
    idx = data.draw(st.lists(st.integers(0, k.n(1) - 1), min_size=1, max_size=k.n(1), unique=True))
    z = Chain.from_indices(k, 1, idx)
    assert diam(z, k, m) == pytest.approx(diam_brute(dist, z.simplices()), abs=1e-12)
    assert rad(z, k, m)[0] == pytest.approx(rad_brute(k, dist, z.simplices()), abs=1e-12)
    # rad <= diam <= 2 rad
    r, d = rad(z, k, m)[0], diam(z, k, m)
    assert r <= d + 1e-12 <= 2 * r + 2e-12 or math.isinf(d)
