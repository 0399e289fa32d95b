import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spectral_t.errors import EmptyGraph, IsolatedVertex, MalformedGraph, NotBipartite
from spectral_t.generators import complete_bipartite, cycle, heawood, random_bipartite_graph
from spectral_t.spectra import (
    WeightedGraph,
    contraction_norm,
    graph_from_edges,
    is_one_sided_expander,
    m_sides_apply,
    m_sides_matrix,
    random_walk_spectrum,
    side_indicator_difference,
    sign_flip,
    vector_contraction_check,
    walk_matrix,
    weighted_inner,
)


def nonsymmetric_spectrum(g):
    # oracle: general eigensolver on D^{-1} Adj directly
    eigs = np.linalg.eigvals(g.adjacency / g.degrees[:, None])
    assert np.abs(eigs.imag).max() < 1e-9
    return np.sort(eigs.real)[::-1]


bipartite_graphs = st.builds(
    random_bipartite_graph,
    left=st.integers(1, 6),
    right=st.integers(1, 6),
    p=st.floats(0.0, 1.0),
    seed=st.integers(0, 2**31 - 1),
).filter(lambda g: len(g.vertices) >= 3)


@pytest.mark.parametrize("length", [4, 6, 8, 10])
def test_cycle_spectrum_closed_form(length):
    expected = np.sort(np.cos(2 * np.pi * np.arange(length) / length))[::-1]
    spec = random_walk_spectrum(cycle(length))
    assert np.allclose(spec.eigenvalues, expected, atol=1e-12)
    assert spec.lambda_second == pytest.approx(np.cos(2 * np.pi / length), abs=1e-12)


def test_c4_and_c6_values():
    assert random_walk_spectrum(cycle(4)).lambda_second == pytest.approx(0.0, abs=1e-12)
    merged = random_walk_spectrum(cycle(6)).merged()
    assert [m for _, m in merged] == [1, 2, 2, 1]
    assert [v for v, _ in merged] == pytest.approx([1.0, 0.5, -0.5, -1.0], abs=1e-12)


def test_heawood_lambda_second():
    g = heawood()
    spec = random_walk_spectrum(g)
    assert np.allclose(spec.eigenvalues, nonsymmetric_spectrum(g), atol=1e-10)
    assert spec.lambda_second == pytest.approx(np.sqrt(2) / 3, abs=1e-12)


def test_single_edge_is_degenerate():
    spec = random_walk_spectrum(complete_bipartite(1, 1))
    assert spec.lambda_second == -1.0
    assert spec.degenerate


def test_malformed_graphs():
    with pytest.raises(MalformedGraph):
        WeightedGraph(("a", "a"), ())
    with pytest.raises(MalformedGraph):
        WeightedGraph(("a", "b"), (("a", "a"),))
    with pytest.raises(MalformedGraph):
        WeightedGraph(("a", "b"), (("a", "b"), ("b", "a")))
    with pytest.raises(NotBipartite):
        WeightedGraph(("a", "b", "c"), (("a", "b"),), (("a", "b"), ("c",)))
    with pytest.raises(EmptyGraph):
        walk_matrix(WeightedGraph((), ()))
    with pytest.raises(IsolatedVertex):
        walk_matrix(WeightedGraph(("a", "b", "c"), (("a", "b"),)))


def test_triangle_is_not_bipartite():
    g = graph_from_edges([("a", "b"), ("b", "c"), ("a", "c")])
    assert not g.is_bipartite
    assert random_walk_spectrum(g).lambda_second == pytest.approx(-0.5)


def test_m_sides_fixes_constants_and_side_difference():
    g = heawood()
    ones = np.ones(len(g.vertices))
    f = side_indicator_difference(g)
    assert np.allclose(m_sides_apply(g, 3.0 * ones), 3.0 * ones)
    assert np.allclose(m_sides_apply(g, f), f)


def test_m_sides_kills_alternating_on_square():
    g = cycle(4)
    phi = np.zeros(4)
    for name, value in (("c0", 1.0), ("c2", -1.0)):
        phi[g.index[name]] = value
    assert np.allclose(m_sides_apply(g, phi), 0.0)


def test_m_sides_vector_valued():
    g = cycle(6)
    phi = np.random.default_rng(0).standard_normal((6, 3))
    out = m_sides_apply(g, phi)
    for k in range(3):
        assert np.allclose(out[:, k], m_sides_apply(g, phi[:, k]))


def test_contraction_complete_bipartite():
    res = vector_contraction_check(complete_bipartite(3, 3), 4, 100, seed=1)
    assert res.lambda_second == pytest.approx(0.0, abs=1e-12)
    assert res.max_ratio <= 1e-9 and res.holds


def test_contraction_heawood_scalar_attains():
    res = vector_contraction_check(heawood(), 1, 0, seed=0, eigenbasis=True)
    assert res.max_ratio == pytest.approx(np.sqrt(2) / 3, abs=1e-9)


def test_contraction_constant_phi():
    g = cycle(8)
    phi = np.tile([1.0, -2.0], (8, 1))
    M = np.eye(8) - m_sides_matrix(g)
    assert np.allclose(walk_matrix(g) @ M @ phi, 0.0)


@settings(max_examples=40, deadline=None)
@given(bipartite_graphs)
def test_bipartite_spectrum_symmetric(g):
    eigs = random_walk_spectrum(g).eigenvalues
    assert np.allclose(np.sort(eigs), np.sort(-eigs), atol=1e-9)
    assert np.allclose(eigs, nonsymmetric_spectrum(g), atol=1e-8)


@settings(max_examples=40, deadline=None)
@given(bipartite_graphs, st.integers(0, 1000))
def test_bipartite_identities(g, seed):
    rng = np.random.default_rng(seed)
    A = walk_matrix(g)
    M = m_sides_matrix(g)
    f = side_indicator_difference(g)
    phi, psi = rng.standard_normal((2, len(g.vertices)))
    assert np.abs(A @ f + f).max() <= 1e-12
    assert np.abs(M @ M - M).max() <= 1e-12
    assert abs(weighted_inner(g, M @ phi, psi) - weighted_inner(g, phi, M @ psi)) <= 1e-12 * len(g.vertices)
    assert np.abs(A @ sign_flip(g, phi) + sign_flip(g, A @ phi)).max() <= 1e-12


@settings(max_examples=40, deadline=None)
@given(bipartite_graphs)
def test_one_sided_expander_equivalence(g):
    spec = random_walk_spectrum(g)
    norm = contraction_norm(g)
    assert norm == pytest.approx(max(spec.lambda_second, 0.0) if len(g.vertices) > 2 else 0.0, abs=1e-9)
    for lam in np.linspace(0.0, 1.0, 11):
        assert (norm <= lam + 1e-9) == is_one_sided_expander(spec, lam)


@settings(max_examples=25, deadline=None)
@given(bipartite_graphs, st.sampled_from([1, 2, 6]), st.integers(0, 100))
def test_vector_contraction_bound(g, d, seed):
    res = vector_contraction_check(g, d, 10, seed, eigenbasis=True)
    assert res.holds
