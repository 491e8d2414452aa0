import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homloc.complex import Chain, Subcomplex, boundary, build
from homloc.errors import EnumerationCapError, NotACycleError, NotCarriedError
from homloc.homology import (
    HomologyClass,
    betti,
    class_coordinates,
    combine,
    contain_cycle,
    enumerate_class,
    homologous,
    homology_basis,
    is_trivial,
    max_enum,
    representative_in,
)
from homloc.testkit import RandomParams, all_fixtures, fixture, random_complex
from oracles import betti_dense, class_members


@pytest.mark.parametrize("f", all_fixtures(), ids=lambda f: f.name)
def test_fixture_betti_against_dense_oracle(f):
    k = f.complex
    for d in range(k.max_dim + 1):
        assert betti(k, d) == betti_dense(k, d) == f.betti[d]


def test_betti_dimension_range():
    with pytest.raises(ValueError):
        betti(fixture("hollow_square").complex, 2)


def test_homologous_rims_on_cylinder():
    f = fixture("cylinder_3_6")
    k = f.complex
    assert homologous(k, f.cycles["short"], f.cycles["long"])
    assert not is_trivial(k, f.cycles["short"])
    assert HomologyClass(f.cycles["short"]) == HomologyClass(f.cycles["long"])


def test_filled_triangle_rim_is_trivial():
    f = fixture("filled_triangle")
    assert is_trivial(f.complex, f.cycles["rim"])


def test_non_cycle_rejected():
    k = build([(0, 1), (1, 2)])
    path = Chain.from_simplices(k, [(0, 1)])
    with pytest.raises(NotACycleError):
        is_trivial(k, path)
    with pytest.raises(NotACycleError):
        HomologyClass(path)
    with pytest.raises(NotACycleError):
        contain_cycle(k, Subcomplex.full(k), path)


def test_contain_cycle_basic_cases():
    f = fixture("hollow_square")
    k, loop = f.complex, f.cycles["loop"]
    assert contain_cycle(k, Subcomplex.full(k), loop)
    assert not contain_cycle(k, Subcomplex.from_simplices(k, [(0, 1), (1, 2), (2, 3)]), loop)
    # a trivial class is carried by anything, including the empty subcomplex
    assert contain_cycle(k, Subcomplex.empty(k), Chain.zero(k, 1))


def test_representative_in_ball():
    f = fixture("cylinder_3_6")
    k = f.complex
    inner = Subcomplex.from_simplices(k, [(0, 1), (1, 2), (0, 2)])
    z = representative_in(k, inner, f.cycles["long"])
    assert inner.carries(z)
    assert homologous(k, z, f.cycles["long"])
    with pytest.raises(NotCarriedError):
        representative_in(k, Subcomplex.from_simplices(k, [(0, 1)]), f.cycles["long"])


def test_enumerate_class_matches_oracle_on_cylinder():
    f = fixture("cylinder_3_6")
    k = f.complex
    members = {frozenset(z.simplices()) for z in enumerate_class(k, f.cycles["short"])}
    assert members == class_members(k, 1, set(f.cycles["short"].simplices()))
    # 2^9 chains gamma, boundary map injective on 2-chains here (H_2 = 0)
    assert len(members) == 2 ** k.n(2)


def test_enumerate_class_cap(monkeypatch):
    f = fixture("torus_7")
    z = homology_basis(f.complex, 1)[0]
    with pytest.raises(EnumerationCapError):
        enumerate_class(f.complex, z, cap=10)
    monkeypatch.setenv("HOMLOC_MAX_ENUM", "5")
    assert max_enum() == 5
    with pytest.raises(EnumerationCapError):
        enumerate_class(f.complex, z)


@pytest.mark.parametrize("f", all_fixtures(), ids=lambda f: f.name)
def test_homology_basis_size_and_coordinates(f):
    k = f.complex
    for d in range(k.max_dim + 1):
        ref = homology_basis(k, d)
        assert len(ref) == f.betti[d]
        for mask in range(1, 1 << len(ref)):
            z = combine(k, ref, mask, d)
            assert not is_trivial(k, z)
            assert class_coordinates(k, ref, z) == mask


def test_class_coordinates_ignore_boundaries():
    f = fixture("cylinder_3_6")
    k = f.complex
    ref = homology_basis(k, 1)
    z = f.cycles["long"] + boundary(Chain.from_indices(k, 2, [0, 4]))
    assert class_coordinates(k, ref, z) == 1


def _random_cycle(k, d, rng_data):
    ref = homology_basis(k, d)
    mask = rng_data.draw(st.integers(0, (1 << len(ref)) - 1))
    z = combine(k, ref, mask, d) if ref else Chain.zero(k, d)
    if k.n(d + 1):
        gamma = rng_data.draw(st.lists(st.integers(0, k.n(d + 1) - 1), max_size=k.n(d + 1)))
        z = z + boundary(Chain.from_indices(k, d + 1, set(gamma)))
    return z


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_enumeration_is_the_whole_class(seed, data):
    k, _ = random_complex(RandomParams(n_vertices=6, edge_prob=0.6, max_triangles=8), seed)
    z = _random_cycle(k, 1, data)
    got = [frozenset(c.simplices()) for c in enumerate_class(k, z)]
    assert len(got) == len(set(got))
    assert set(got) == class_members(k, 1, set(z.simplices()))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.data())
def test_betti_of_random_complexes(seed, data):
    k, _ = random_complex(RandomParams(n_vertices=7), seed)
    for d in range(k.max_dim + 1):
        assert betti(k, d) == betti_dense(k, d)


def test_tree_has_no_loops():
    for seed in range(10):
        k, _ = random_complex(RandomParams(n_vertices=8, tree=True), seed)
        assert betti(k, 1) == 0
        assert betti(k, 0) == 1
