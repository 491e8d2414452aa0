import itertools

import pytest

from homloc.basis import (
    FiltrationDistance,
    all_class_sizes,
    class_size,
    filtration,
    filtration_distance,
    greedy_basis,
    optimal_basis,
    projection,
)
from homloc.errors import EnumerationCapError
from homloc.homology import combine, homology_basis
from homloc.metric import Metric
from homloc.testkit import fixture, three_hole_disk_flip_metric
from oracles import rank_dense


def _mask_rank(masks, beta):
    return rank_dense([[(m >> i) & 1 for i in range(beta)] for m in masks])


def test_wedge_sizes():
    f = fixture("wedge_3_6")
    b = optimal_basis(f.complex, f.metric, 1)
    assert b.sizes == [1.0, 3.0]
    assert sorted(len(z) for z in b.representatives) == [3, 6]


def test_square_has_one_class():
    f = fixture("hollow_square")
    b = optimal_basis(f.complex, f.metric, 1)
    assert b.beta == 1 and b.sizes == [2.0]


def test_three_hole_disk_sizes():
    f = fixture("three_hole_disk")
    k = f.complex
    for name, size in f.sizes.items():
        assert class_size(k, f.metric, f.cycles[name]).value == size
    b = optimal_basis(k, f.metric, 1)
    assert b.sizes == [1.0, 4.0, 5.0]


def test_trivial_group_and_cap():
    f = fixture("filled_triangle")
    with pytest.raises(ValueError):
        optimal_basis(f.complex, f.metric, 1)
    t = fixture("torus_7")
    with pytest.raises(EnumerationCapError):
        optimal_basis(t.complex, t.metric, 1, max_classes=2)


def test_greedy_skips_dependent_classes():
    f = fixture("wedge_3_6")
    ref = homology_basis(f.complex, 1)
    sizes = all_class_sizes(f.complex, f.metric, ref)
    b = greedy_basis(f.complex, ref, sizes)
    assert _mask_rank(b.masks, 2) == 2
    # the class small + big has size 3 too, but is never needed
    assert len(b.masks) == 2


def test_filtration_sizes_and_subgroups():
    f = fixture("wedge_3_6")
    x = filtration(optimal_basis(f.complex, f.metric, 1))
    assert x.sizes == (0.0, 1.0, 3.0)
    assert x.subgroup(0) == []
    assert len(x.subgroup(2)) == 2
    with pytest.raises(IndexError):
        x.subgroup(3)


def test_projection_and_self_distance():
    f = fixture("three_hole_disk")
    x = filtration(optimal_basis(f.complex, f.metric, 1))
    for i in range(x.beta + 1):
        assert projection(x.subgroup(i), x) == i
    assert filtration_distance(x, x) == FiltrationDistance(0.0, 0, "1->2")


def test_unstable_basis_stable_filtration():
    f = fixture("three_hole_disk")
    k = f.complex
    b1 = optimal_basis(k, f.metric, 1)
    b2 = optimal_basis(k, three_hole_disk_flip_metric(0.1), 1)
    assert b1.masks != b2.masks
    assert filtration_distance(filtration(b1), filtration(b2)).value <= 0.1 + 1e-9


def test_distance_needs_same_group():
    a = fixture("wedge_3_6")
    b = fixture("hollow_square")
    xa = filtration(optimal_basis(a.complex, a.metric, 1))
    xb = filtration(optimal_basis(b.complex, b.metric, 1))
    with pytest.raises(ValueError):
        filtration_distance(xa, xb)


def test_distance_reports_worst_subgroup():
    f = fixture("wedge_3_6")
    k = f.complex
    x1 = filtration(optimal_basis(k, f.metric, 1))
    stretched = Metric(tuple(x * 1.5 for x in f.metric.lengths))
    x2 = filtration(optimal_basis(k, stretched, 1))
    d = filtration_distance(x1, x2)
    assert d.value == pytest.approx(1.5)
    assert d.index == 2


@pytest.mark.parametrize("name", ["wedge_3_6", "three_hole_disk", "annulus", "torus_7"])
def test_basis_sum_is_minimal(name):
    f = fixture(name)
    b = optimal_basis(f.complex, f.metric, 1)
    beta = b.beta
    best = min(
        sum(b.sizes_by_mask[m].value for m in subset)
        for subset in itertools.combinations(b.sizes_by_mask, beta)
        if _mask_rank(subset, beta) == beta
    )
    assert sum(b.sizes) == best


def test_sizes_agree_with_direct_class_size():
    f = fixture("annulus")
    k = f.complex
    ref = homology_basis(k, 1)
    sizes = all_class_sizes(k, f.metric, ref)
    for mask, s in sizes.items():
        assert s.value == class_size(k, f.metric, combine(k, ref, mask, 1)).value
