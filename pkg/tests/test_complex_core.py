from itertools import combinations

import numpy as np
import pytest

from spectral_t.complex_core import (
    build_complex,
    codim2_links,
    gallery_connectivity,
    link,
    link_graph,
    thickness_report,
)
from spectral_t.errors import (
    ConnectivityCapExceeded,
    DimensionTooLow,
    DuplicateVertex,
    TypeClash,
    UnknownVertex,
    WrongSimplexSize,
)
from spectral_t.generators import complete_multipartite, octahedron, random_partite_complex, single_chamber


def all_faces(chambers):
    # brute-force oracle: every subset of every chamber
    out = set()
    for c in chambers:
        for k in range(1, len(c) + 1):
            out.update(frozenset(s) for s in combinations(c, k))
    return out


def floyd_warshall(chambers):
    m = len(chambers)
    d = np.full((m, m), np.inf)
    np.fill_diagonal(d, 0)
    for a, b in combinations(range(m), 2):
        if len(set(chambers[a]) & set(chambers[b])) == len(chambers[a]) - 1:
            d[a, b] = d[b, a] = 1
    for k in range(m):
        d = np.minimum(d, d[:, [k]] + d[[k], :])
    return d


def test_octahedron_face_counts():
    X = octahedron()
    oracle = all_faces(X.chambers)
    for k, expected in enumerate((6, 12, 8)):
        assert len(X.skeleton(k)) == expected
        assert expected == sum(1 for f in oracle if len(f) == k + 1)


def test_single_edge():
    X = build_complex(1, [("a", 0), ("b", 1)], [("a", "b")])
    assert X.skeleton(0) == (("a",), ("b",))
    assert X.skeleton(1) == (("a", "b"),)


def test_validation_errors():
    with pytest.raises(TypeClash):
        build_complex(2, [("a", 0), ("b", 0), ("c", 1)], [("a", "b", "c")])
    with pytest.raises(DuplicateVertex):
        build_complex(1, [("a", 0), ("a", 1)], [("a", "a")])
    with pytest.raises(UnknownVertex):
        build_complex(1, [("a", 0), ("b", 1)], [("a", "z")])
    with pytest.raises(WrongSimplexSize):
        build_complex(2, [("a", 0), ("b", 1), ("c", 2)], [("a", "b")])


def test_vertex_link_is_square():
    X = octahedron()
    lg = link_graph(X, ("t0v0",))
    assert len(lg.graph.vertices) == 4 and len(lg.graph.edges) == 4
    assert lg.connected
    assert lg.pair == (1, 2)


def test_edge_link_is_two_apexes():
    X = octahedron()
    L = link(X, ("t0v0", "t1v0"))
    assert L.n == 0
    assert sorted(v for v in L.vertices) == ["t2v0", "t2v1"]
    assert L.skeleton(1) == ()


def test_empty_link_is_whole_complex():
    X = octahedron()
    assert link(X, ()) == X


def test_links_are_pure_of_right_dimension():
    X = complete_multipartite((2, 3, 2, 2))
    for tau in X.faces:
        if not tau:
            continue
        L = link(X, tau)
        assert L.n == X.n - len(tau)
        assert all(len(c) == L.n + 1 for c in L.chambers)


def test_codim2_links_octahedron():
    entries = codim2_links(octahedron())
    assert len(entries) == 6
    pairs = sorted(e.pair for e in entries)
    assert pairs == [(0, 1), (0, 1), (0, 2), (0, 2), (1, 2), (1, 2)]
    for e in entries:
        assert len(e.graph.edges) == 4 and e.graph.is_bipartite


def test_codim2_links_join():
    entries = codim2_links(complete_multipartite((3, 3, 3)))
    assert len(entries) == 9
    assert all(len(e.graph.edges) == 9 for e in entries)


def test_codim2_links_single_triangle():
    entries = codim2_links(single_chamber(2))
    assert len(entries) == 3
    assert all(len(e.graph.edges) == 1 for e in entries)


def test_codim2_links_bipartite_by_type():
    X = random_partite_complex(3, (3, 2, 3, 2), 0.7, seed=4)
    for e in codim2_links(X):
        i, j = e.pair
        for u, v in e.graph.edges:
            assert {X.type_of[u], X.type_of[v]} == {i, j}


def test_codim2_links_need_dimension_two():
    with pytest.raises(DimensionTooLow):
        codim2_links(single_chamber(1))


def test_gallery_octahedron_matches_floyd_warshall():
    X = octahedron()
    rep = gallery_connectivity(X)
    assert rep.connected
    assert np.array_equal(rep.distances, floyd_warshall(X.chambers))
    assert rep.distances.max() == 3


def test_gallery_metric_axioms():
    X = random_partite_complex(2, (3, 3, 3), 0.6, seed=11)
    d = gallery_connectivity(X).distances
    assert np.array_equal(d, d.T)
    m = len(d)
    for k in range(m):
        assert np.all(d <= d[:, [k]] + d[[k], :])


def test_gallery_disconnected():
    X = build_complex(
        2,
        [("a", 0), ("b", 1), ("c", 2), ("d", 0), ("e", 1), ("f", 2)],
        [("a", "b", "c"), ("d", "e", "f")],
    )
    assert not gallery_connectivity(X).connected


def test_gallery_single_chamber():
    rep = gallery_connectivity(single_chamber(2))
    assert rep.connected
    assert rep.distances.tolist() == [[0]]


def test_thickness():
    assert tuple(thickness_report(octahedron())) == (2, 2, False)
    assert tuple(thickness_report(single_chamber(2))) == (1, 1, False)
    assert tuple(thickness_report(complete_multipartite((3, 3, 3)))) == (3, 3, True)


def test_random_complex_density_one():
    assert random_partite_complex(2, (2, 3, 2), 1.0, seed=0) == complete_multipartite((2, 3, 2))


def test_random_complex_is_deterministic():
    a = random_partite_complex(2, (4, 4, 4), 0.6, seed=7)
    b = random_partite_complex(2, (4, 4, 4), 0.6, seed=7)
    assert a == b
    assert gallery_connectivity(a).connected


def test_random_complex_cap():
    # at this density almost every sample is empty; seed pinned
    with pytest.raises(ConnectivityCapExceeded):
        random_partite_complex(2, (2, 2, 2), 0.01, seed=2, max_attempts=10)
