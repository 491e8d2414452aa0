import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homloc.errors import EnumerationCapError
from homloc.homology import betti
from homloc.metric import Metric
from homloc.stability import (
    Perturbation,
    epsilon,
    perturb,
    sweep,
    verify_class_stability,
    verify_filtration_stability,
)
from homloc.testkit import RandomParams, fixture, random_complex, three_hole_disk_flip_metric
from oracles import floyd_warshall


def test_perturbation_schemes():
    m = Metric((1.0, 2.0, 3.0))
    assert perturb(m, Perturbation("scale", 0.5)).lengths == (1.5, 3.0, 4.5)
    assert perturb(m, Perturbation("single_edge", 0.25, edge=1)).lengths == (1.0, 2.25, 3.0)
    noisy = perturb(m, Perturbation("uniform_noise", 0.1, seed=4))
    assert all(abs(a - b) <= 0.1 for a, b in zip(noisy.lengths, m.lengths))
    assert noisy == perturb(m, Perturbation("uniform_noise", 0.1, seed=4))


def test_perturbation_errors():
    with pytest.raises(ValueError):
        Perturbation("wiggle", 0.1)
    with pytest.raises(ValueError):
        perturb(Metric((0.1,)), Perturbation("single_edge", -0.5, edge=0))


def test_epsilon_single_edge_on_square():
    f = fixture("hollow_square")
    m2 = perturb(f.metric, Perturbation("single_edge", 0.2, edge=0))
    assert epsilon(f.complex, f.metric, m2) == pytest.approx(0.2)


def test_epsilon_of_identical_metrics_is_zero():
    f = fixture("torus_7")
    assert epsilon(f.complex, f.metric, f.metric) == 0.0


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 1000))
def test_epsilon_matches_oracle(seed, pseed):
    k, m = random_complex(RandomParams(n_vertices=6, edge_prob=0.6), seed)
    if k.n(1) == 0:
        return
    m2 = perturb(m, Perturbation("uniform_noise", 0.2, seed=pseed))
    d1, d2 = floyd_warshall(k, m.lengths), floyd_warshall(k, m2.lengths)
    expected = max((abs(d1[p] - d2[p]) for p in d1 if d1[p] != d2[p]), default=0.0)
    assert epsilon(k, m, m2) == pytest.approx(expected, abs=1e-12)


def test_class_stability_report():
    f = fixture("wedge_3_6")
    m2 = perturb(f.metric, Perturbation("uniform_noise", 0.2, seed=1))
    r = verify_class_stability(f.complex, f.metric, m2, 1)
    assert len(r.per_class) == 3
    assert r.class_violations == 0
    assert r.filtration_distance is None and r.passed


def test_flip_report():
    f = fixture("three_hole_disk")
    r = verify_filtration_stability(f.complex, f.metric, three_hole_disk_flip_metric(0.1), 1)
    assert r.basis_changed
    assert r.filtration_pass and r.passed
    assert r.epsilon == pytest.approx(0.1)


def test_sweep_is_seeded_and_parallel_safe():
    f = fixture("cylinder_3_6")
    a = sweep(f.complex, f.metric, 1, "uniform_noise", 0.05, 4, seed=7)
    b = sweep(f.complex, f.metric, 1, "uniform_noise", 0.05, 4, seed=7, jobs=2)
    assert [r.epsilon for r in a] == [r.epsilon for r in b]
    assert all(r.passed for r in a)
    assert sweep(f.complex, f.metric, 1, "scale", 0.1, 0) == []


def test_sweep_errors():
    f = fixture("filled_triangle")
    with pytest.raises(ValueError):
        sweep(f.complex, f.metric, 1, "scale", 0.1, 1)
    t = fixture("torus_7")
    with pytest.raises(EnumerationCapError):
        sweep(t.complex, t.metric, 1, "scale", 0.1, 1, max_classes=1)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["uniform_noise", "single_edge", "scale"]), st.integers(0, 99))
def test_random_complexes_stay_within_epsilon(seed, scheme, pseed):
    k, m = random_complex(RandomParams(n_vertices=6, edge_prob=0.6, max_triangles=5), seed)
    if betti(k, 1) == 0 or betti(k, 1) > 4:
        return
    m2 = perturb(m, Perturbation(scheme, 0.3, seed=pseed))
    assert verify_filtration_stability(k, m, m2, 1).passed
