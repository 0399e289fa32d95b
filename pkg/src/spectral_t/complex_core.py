"""Partite pure simplicial complexes, their links, galleries and panel counts.

A complex is presented by its maximal simplices (chambers); every lower face is
derived. Simplices are canonical sorted tuples of vertex ids.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import (
    BadTypeLabel,
    DimensionTooLow,
    DuplicateVertex,
    MissingType,
    OrphanVertex,
    SimplexNotInComplex,
    TypeClash,
    UnknownVertex,
    WrongSimplexSize,
)
from .spectra import WeightedGraph

Simplex = tuple[str, ...]

DISTANCE_TABLE_CAP = 512


def canonical(simplex: Iterable[str]) -> Simplex:
    return tuple(sorted(simplex))


@dataclass(frozen=True)
class SimplicialComplex:
    """Pure partite complex stored by its chambers.

    ``type_labels`` is ``(0, ..., n)`` for complexes built from input; links
    keep the labels of the types they inherit, so a vertex link of a
    2-complex carries two of the three original labels.
    """

    n: int
    vertices: tuple[str, ...]
    types: tuple[int, ...]
    maximal_simplices: tuple[Simplex, ...]
    type_labels: tuple[int, ...]

    @cached_property
    def type_of(self) -> dict[str, int]:
        return dict(zip(self.vertices, self.types))

    @property
    def chambers(self) -> tuple[Simplex, ...]:
        return self.maximal_simplices

    @cached_property
    def _skeletons(self) -> dict[int, tuple[Simplex, ...]]:
        faces: dict[int, set[Simplex]] = defaultdict(set)
        for sigma in self.maximal_simplices:
            for size in range(len(sigma) + 1):
                faces[size - 1].update(combinations(sigma, size))
        return {k: tuple(sorted(v)) for k, v in faces.items()}

    @cached_property
    def faces(self) -> frozenset[Simplex]:
        return frozenset(s for level in self._skeletons.values() for s in level)

    def skeleton(self, k: int) -> tuple[Simplex, ...]:
        """X(k): the faces with k + 1 vertices (k = -1 gives the empty face)."""
        return self._skeletons.get(k, ())

    def type_set(self, simplex: Iterable[str]) -> frozenset[int]:
        return frozenset(self.type_of[v] for v in simplex)

    def __contains__(self, simplex: object) -> bool:
        if isinstance(simplex, str):
            simplex = (simplex,)
        return canonical(simplex) in self.faces  # type: ignore[arg-type]

    def vertex_of_type(self, chamber: Simplex, label: int) -> str:
        for v in chamber:
            if self.type_of[v] == label:
                return v
        raise KeyError(label)


def build_complex(
    n: int,
    vertices: Iterable[tuple[str, int]],
    maximal_simplices: Iterable[Iterable[str]],
) -> SimplicialComplex:
    """Validate and build a pure partite n-dimensional complex.

    Raises:
        DuplicateVertex, BadTypeLabel, UnknownVertex, WrongSimplexSize,
        TypeClash, MissingType, OrphanVertex.
    """
    if n < 1:
        raise DimensionTooLow(f"dimension must be at least 1, got {n}")
    type_of: dict[str, int] = {}
    for vid, label in vertices:
        if vid in type_of:
            raise DuplicateVertex(f"vertex {vid!r} listed twice")
        if not isinstance(label, int) or not 0 <= label <= n:
            raise BadTypeLabel(f"vertex {vid!r} has type {label!r}, expected 0..{n}")
        type_of[vid] = label

    labels = tuple(range(n + 1))
    chambers: set[Simplex] = set()
    for raw in maximal_simplices:
        raw = list(raw)
        for v in raw:
            if v not in type_of:
                raise UnknownVertex(f"simplex {raw} uses undeclared vertex {v!r}")
        sigma = canonical(set(raw))
        if len(sigma) != n + 1 or len(raw) != n + 1:
            raise WrongSimplexSize(f"simplex {raw} has {len(raw)} vertices, expected {n + 1}")
        seen = [type_of[v] for v in sigma]
        if len(set(seen)) != len(seen):
            raise TypeClash(f"simplex {list(sigma)} repeats a type: {seen}")
        if set(seen) != set(labels):
            raise MissingType(f"simplex {list(sigma)} misses types {sorted(set(labels) - set(seen))}")
        chambers.add(sigma)

    used = {v for sigma in chambers for v in sigma}
    orphans = sorted(set(type_of) - used)
    if orphans:
        raise OrphanVertex(f"vertices in no maximal simplex: {orphans}")

    ids = tuple(sorted(type_of))
    return SimplicialComplex(
        n=n,
        vertices=ids,
        types=tuple(type_of[v] for v in ids),
        maximal_simplices=tuple(sorted(chambers)),
        type_labels=labels,
    )


def link(X: SimplicialComplex, tau: Iterable[str]) -> SimplicialComplex:
    """Link of ``tau``: faces disjoint from tau whose union with tau is a face.

    The result is pure of dimension ``n - |tau|``; its type labels are the
    types missing from tau.
    """
    tau = canonical(tau)
    if tau not in X.faces:
        raise SimplexNotInComplex(f"{list(tau)} is not a face")
    if not tau:
        return X
    tau_set = set(tau)
    pieces = sorted({tuple(v for v in sigma if v not in tau_set)
                     for sigma in X.maximal_simplices if tau_set.issubset(sigma)})
    ids = tuple(sorted({v for p in pieces for v in p}))
    tau_types = X.type_set(tau)
    return SimplicialComplex(
        n=X.n - len(tau),
        vertices=ids,
        types=tuple(X.type_of[v] for v in ids),
        maximal_simplices=tuple(pieces),
        type_labels=tuple(t for t in X.type_labels if t not in tau_types),
    )


@dataclass(frozen=True)
class LinkGraph:
    """One-dimensional link of a codimension-2 face, as a bipartite graph.

    ``pair`` holds the two missing types; side 0 carries the smaller label.
    """

    base: Simplex
    pair: tuple[int, int]
    graph: WeightedGraph

    @property
    def connected(self) -> bool:
        return self.graph.is_connected

    @property
    def link_id(self) -> str:
        return ",".join(self.base)


def link_graph(X: SimplicialComplex, eta: Iterable[str]) -> LinkGraph:
    eta = canonical(eta)
    if len(eta) != X.n - 1:
        raise SimplexNotInComplex(f"{list(eta)} is not in X({X.n - 2})")
    lk = link(X, eta)
    i, j = lk.type_labels
    side_i = tuple(v for v in lk.vertices if lk.type_of[v] == i)
    side_j = tuple(v for v in lk.vertices if lk.type_of[v] == j)
    graph = WeightedGraph(lk.vertices, lk.maximal_simplices, (side_i, side_j))
    return LinkGraph(base=eta, pair=(i, j), graph=graph)


def codim2_links(X: SimplicialComplex) -> list[LinkGraph]:
    """All links of faces in X(n-2), in canonical order of the base face."""
    if X.n < 2:
        raise DimensionTooLow(f"codimension-2 links need n >= 2, got n = {X.n}")
    return [link_graph(X, eta) for eta in X.skeleton(X.n - 2)]


class GalleryReport(NamedTuple):
    connected: bool
    distances: np.ndarray | None
    degenerate: bool


def _chamber_adjacency(X: SimplicialComplex) -> list[list[int]]:
    by_panel: dict[Simplex, list[int]] = defaultdict(list)
    for idx, sigma in enumerate(X.maximal_simplices):
        for panel in combinations(sigma, len(sigma) - 1):
            by_panel[panel].append(idx)
    adjacent: list[set[int]] = [set() for _ in X.maximal_simplices]
    for members in by_panel.values():
        for a in members:
            adjacent[a].update(b for b in members if b != a)
    return [sorted(s) for s in adjacent]


def _bfs(adjacent: Sequence[Sequence[int]], source: int) -> list[int]:
    dist = [-1] * len(adjacent)
    dist[source] = 0
    queue = deque([source])
    while queue:
        a = queue.popleft()
        for b in adjacent[a]:
            if dist[b] < 0:
                dist[b] = dist[a] + 1
                queue.append(b)
    return dist


def gallery_connectivity(X: SimplicialComplex, cap: int = DISTANCE_TABLE_CAP) -> GalleryReport:
    """Connectivity of the chamber graph (chambers adjacent across a panel).

    The pairwise gallery-distance table (``-1`` for unreachable pairs) is only
    computed when there are at most ``cap`` chambers.
    """
    count = len(X.maximal_simplices)
    if count == 0:
        return GalleryReport(True, np.zeros((0, 0), dtype=int), True)
    adjacent = _chamber_adjacency(X)
    if count > cap:
        connected = min(_bfs(adjacent, 0)) >= 0
        return GalleryReport(connected, None, False)
    table = np.array([_bfs(adjacent, s) for s in range(count)], dtype=int)
    return GalleryReport(bool((table >= 0).all()), table, False)


class ThicknessReport(NamedTuple):
    min_chambers_per_panel: int
    max_chambers_per_panel: int
    is_thick: bool


def thickness_report(X: SimplicialComplex) -> ThicknessReport:
    counts: dict[Simplex, int] = defaultdict(int)
    for sigma in X.maximal_simplices:
        for panel in combinations(sigma, len(sigma) - 1):
            counts[panel] += 1
    if not counts:
        return ThicknessReport(0, 0, False)
    lo, hi = min(counts.values()), max(counts.values())
    return ThicknessReport(lo, hi, lo >= 3)
