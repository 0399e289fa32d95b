"""Deterministic example complexes, link graphs and link families."""

from __future__ import annotations

from itertools import product
from typing import Mapping, Sequence

import numpy as np

from .complex_core import SimplicialComplex, build_complex, gallery_connectivity
from .criterion import LinkFamilyInput, Pair
from .errors import BadSizes, ConnectivityCapExceeded, OddLength, UnknownFamily, UnsupportedQ
from .spectra import WeightedGraph

RANDOM_ATTEMPT_CAP = 100
FAMILIES = ("a2_tilde_q2", "a2_tilde_q3", "coxeter_a2", "custom")


def vertex_id(part: int, k: int) -> str:
    return f"t{part}v{k}"


def complete_multipartite(sizes: Sequence[int]) -> SimplicialComplex:
    """Join of discrete sets: every transversal of the parts is a chamber.

    ``(2, 2, 2)`` is the octahedron; codimension-2 links are complete
    bipartite graphs.
    """
    if len(sizes) < 2 or any(int(s) < 1 for s in sizes):
        raise BadSizes(f"need at least two parts of size >= 1, got {list(sizes)}")
    parts = [[vertex_id(i, k) for k in range(s)] for i, s in enumerate(sizes)]
    vertices = [(v, i) for i, part in enumerate(parts) for v in part]
    return build_complex(len(sizes) - 1, vertices, product(*parts))


def octahedron() -> SimplicialComplex:
    return complete_multipartite((2, 2, 2))


def single_chamber(n: int) -> SimplicialComplex:
    return complete_multipartite((1,) * (n + 1))


def _projective_points(q: int) -> list[tuple[int, int, int]]:
    # normalised so the first nonzero coordinate is 1
    return [v for v in product(range(q), repeat=3) if any(v) and v[next(i for i in range(3) if v[i])] == 1]


def pg2_incidence(q: int) -> WeightedGraph:
    """Point-line incidence graph of the projective plane over the field with q elements."""
    if q not in (2, 3):
        raise UnsupportedQ(f"q must be 2 or 3, got {q}")
    pts = _projective_points(q)
    points = [f"p{k}" for k in range(len(pts))]
    lines = [f"L{k}" for k in range(len(pts))]
    edges = [
        (points[a], lines[b])
        for a, p in enumerate(pts)
        for b, l in enumerate(pts)
        if sum(x * y for x, y in zip(p, l)) % q == 0
    ]
    return WeightedGraph(tuple(points + lines), tuple(edges), (tuple(points), tuple(lines)))


def heawood() -> WeightedGraph:
    return pg2_incidence(2)


def cycle(length: int) -> WeightedGraph:
    if length < 4 or length % 2:
        raise OddLength(f"cycle length must be even and >= 4, got {length}")
    names = [f"c{k}" for k in range(length)]
    edges = [(names[k], names[(k + 1) % length]) for k in range(length)]
    return WeightedGraph(tuple(names), tuple(edges), (tuple(names[0::2]), tuple(names[1::2])))


def complete_bipartite(a: int, b: int) -> WeightedGraph:
    if a < 1 or b < 1:
        raise BadSizes(f"complete bipartite sides must be nonempty, got {a}, {b}")
    left = [f"a{k}" for k in range(a)]
    right = [f"b{k}" for k in range(b)]
    return WeightedGraph(tuple(left + right), tuple(product(left, right)), (tuple(left), tuple(right)))


def link_family(name: str, custom: Mapping[Pair, WeightedGraph] | None = None) -> LinkFamilyInput:
    """Two-dimensional link families, one graph per type pair.

    ``a2_tilde_q2`` / ``a2_tilde_q3`` use projective-plane incidence graphs
    (vertex links of thick A2-tilde buildings); ``coxeter_a2`` uses hexagons
    (the thin Coxeter complex). ``custom`` takes ``{pair: graph}``.
    """
    pairs: list[Pair] = [(0, 1), (0, 2), (1, 2)]
    if name == "a2_tilde_q2":
        graph = pg2_incidence(2)
    elif name == "a2_tilde_q3":
        graph = pg2_incidence(3)
    elif name == "coxeter_a2":
        graph = cycle(6)
    elif name == "custom":
        if custom is None:
            raise UnknownFamily("custom family needs a {pair: graph} mapping")
        return LinkFamilyInput(2, tuple((tuple(sorted(p)), g) for p, g in sorted(custom.items())))
    else:
        raise UnknownFamily(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    return LinkFamilyInput(2, tuple((p, graph) for p in pairs))


def random_partite_complex(
    n: int,
    sizes: Sequence[int],
    density: float,
    seed: int,
    max_attempts: int = RANDOM_ATTEMPT_CAP,
) -> SimplicialComplex:
    """Keep each transversal chamber with probability ``density``; retry until gallery connected.

    Raises:
        ConnectivityCapExceeded: no connected sample within ``max_attempts``.
    """
    if len(sizes) != n + 1 or any(s < 1 for s in sizes):
        raise BadSizes(f"need n + 1 = {n + 1} positive part sizes, got {list(sizes)}")
    if not 0 < density <= 1:
        raise ValueError(f"density must lie in (0, 1], got {density}")
    parts = [[vertex_id(i, k) for k in range(s)] for i, s in enumerate(sizes)]
    transversals = list(product(*parts))
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        keep = rng.random(len(transversals)) < density
        chambers = [t for t, k in zip(transversals, keep) if k]
        if not chambers:
            continue
        used = {v for c in chambers for v in c}
        vertices = [(v, i) for i, part in enumerate(parts) for v in part if v in used]
        X = build_complex(n, vertices, chambers)
        if gallery_connectivity(X, cap=0).connected:
            return X
    raise ConnectivityCapExceeded(f"no gallery-connected sample in {max_attempts} attempts (seed {seed})")


def random_bipartite_graph(left: int, right: int, p: float, seed: int) -> WeightedGraph:
    """Connected random bipartite graph: a random spanning tree plus each other cross edge with probability ``p``."""
    if left < 1 or right < 1:
        raise BadSizes(f"bipartite sides must be nonempty, got {left}, {right}")
    a = [f"a{k}" for k in range(left)]
    b = [f"b{k}" for k in range(right)]
    rng = np.random.default_rng(seed)
    order = [a[0], b[0]] + [str(v) for v in rng.permutation(a[1:] + b[1:])]
    placed = {"a": [a[0]], "b": [b[0]]}
    tree = {(a[0], b[0])}
    for v in order[2:]:
        other = placed["b" if v[0] == "a" else "a"]
        u = other[int(rng.integers(len(other)))]
        tree.add((v, u) if v[0] == "a" else (u, v))
        placed[v[0]].append(v)
    extra = [e for e in product(a, b) if e not in tree and rng.random() < p]
    return WeightedGraph(tuple(a + b), tuple(sorted(tree)) + tuple(extra), (tuple(a), tuple(b)))


def part_swaps(sizes: Sequence[int]) -> list[dict[str, str]]:
    """For each part of size >= 2, the transposition of its first two vertices."""
    out = []
    for i, s in enumerate(sizes):
        if s >= 2:
            a, b = vertex_id(i, 0), vertex_id(i, 1)
            out.append({a: b, b: a})
    return out


def part_rotation(sizes: Sequence[int]) -> dict[str, str]:
    """Cyclic shift of the parts, t_i v_k -> t_{i+1} v_k; needs equal part sizes."""
    if len(set(sizes)) != 1:
        raise BadSizes("part rotation needs equal part sizes")
    count = len(sizes)
    return {vertex_id(i, k): vertex_id((i + 1) % count, k) for i in range(count) for k in range(sizes[0])}
