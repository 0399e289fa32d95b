"""Random walks on finite graphs in the degree-weighted space l2(V, m).

The walk operator ``A = D^{-1} Adj`` is self-adjoint only for the weighted
inner product, so eigenvalues are computed from the symmetric conjugate
``D^{1/2} A D^{-1/2} = D^{-1/2} Adj D^{-1/2}``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import Disconnected, EmptyGraph, IsolatedVertex, MalformedGraph, NotBipartite

MERGE_TOL = 1e-9
CONTRACTION_SLACK = 1e-9


@dataclass(frozen=True)
class WeightedGraph:
    """Simple undirected graph; weights m(v) are vertex degrees.

    Vertices, edges and sides are canonicalised (sorted) on construction so
    that equal graphs compare and serialise identically.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    sides: tuple[tuple[str, ...], tuple[str, ...]] | None = None

    def __post_init__(self) -> None:
        verts = tuple(sorted(self.vertices))
        if len(set(verts)) != len(verts):
            raise MalformedGraph("duplicate vertex ids")
        known = set(verts)
        edges = set()
        for e in self.edges:
            e = tuple(e)
            if len(e) != 2:
                raise MalformedGraph(f"edge {list(e)} must have two endpoints")
            u, v = e
            if u not in known or v not in known:
                raise MalformedGraph(f"edge {list(e)} uses an unknown vertex")
            if u == v:
                raise MalformedGraph(f"loop at {u!r}")
            key = (u, v) if u < v else (v, u)
            if key in edges:
                raise MalformedGraph(f"multi-edge {list(key)}")
            edges.add(key)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(sorted(edges)))
        if self.sides is not None:
            s1, s2 = (tuple(sorted(s)) for s in self.sides)
            if set(s1) & set(s2) or set(s1) | set(s2) != known or len(s1) + len(s2) != len(verts):
                raise MalformedGraph("sides must partition the vertex set")
            left = set(s1)
            for u, v in self.edges:
                if (u in left) == (v in left):
                    raise NotBipartite(f"edge {[u, v]} does not cross the given sides")
            object.__setattr__(self, "sides", (s1, s2))

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def adjacency(self) -> np.ndarray:
        adj = np.zeros((len(self.vertices), len(self.vertices)))
        for u, v in self.edges:
            adj[self.index[u], self.index[v]] = adj[self.index[v], self.index[u]] = 1.0
        return adj

    @cached_property
    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    @cached_property
    def _neighbours(self) -> list[list[int]]:
        return [list(np.flatnonzero(row)) for row in self.adjacency]

    @cached_property
    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {0}
        queue = deque([0])
        while queue:
            a = queue.popleft()
            for b in self._neighbours[a]:
                if b not in seen:
                    seen.add(b)
                    queue.append(b)
        return len(seen) == len(self.vertices)

    def find_bipartition(self) -> tuple[tuple[str, ...], tuple[str, ...]] | None:
        """A 2-colouring (side of the first vertex in each component is side 0), or None."""
        colour = [-1] * len(self.vertices)
        for start in range(len(self.vertices)):
            if colour[start] >= 0:
                continue
            colour[start] = 0
            queue = deque([start])
            while queue:
                a = queue.popleft()
                for b in self._neighbours[a]:
                    if colour[b] < 0:
                        colour[b] = 1 - colour[a]
                        queue.append(b)
                    elif colour[b] == colour[a]:
                        return None
        s1 = tuple(v for v, c in zip(self.vertices, colour) if c == 0)
        s2 = tuple(v for v, c in zip(self.vertices, colour) if c == 1)
        return s1, s2

    @property
    def is_bipartite(self) -> bool:
        return self.sides is not None or self.find_bipartition() is not None

    def with_sides(self) -> WeightedGraph:
        """This graph with a bipartition attached (computed if absent)."""
        if self.sides is not None:
            return self
        sides = self.find_bipartition()
        if sides is None:
            raise NotBipartite("graph has an odd cycle")
        return WeightedGraph(self.vertices, self.edges, sides)

    def side_masks(self) -> tuple[np.ndarray, np.ndarray]:
        if self.sides is None:
            raise NotBipartite("graph carries no bipartition")
        first = np.array([v in set(self.sides[0]) for v in self.vertices])
        return first, ~first


def _require_walkable(g: WeightedGraph) -> None:
    if not g.vertices:
        raise EmptyGraph("graph has no vertices")
    isolated = [v for v, m in zip(g.vertices, g.degrees) if m == 0]
    if isolated:
        raise IsolatedVertex(f"vertices of degree 0: {isolated}")


def walk_matrix(g: WeightedGraph) -> np.ndarray:
    """A = D^{-1} Adj, acting on column vectors indexed like ``g.vertices``."""
    _require_walkable(g)
    return g.adjacency / g.degrees[:, None]


def symmetric_walk_matrix(g: WeightedGraph) -> np.ndarray:
    _require_walkable(g)
    s = 1.0 / np.sqrt(g.degrees)
    return s[:, None] * g.adjacency * s[None, :]


def weighted_inner(g: WeightedGraph, phi: np.ndarray, psi: np.ndarray) -> complex:
    """<phi, psi> = sum_v m(v) <phi(v), psi(v)> for scalar or vector-valued functions."""
    phi, psi = np.asarray(phi), np.asarray(psi)
    m = g.degrees.reshape((-1,) + (1,) * (phi.ndim - 1))
    return complex(np.sum(m * phi * np.conj(psi)))


def weighted_norm(g: WeightedGraph, phi: np.ndarray) -> float:
    return float(np.sqrt(max(weighted_inner(g, phi, phi).real, 0.0)))


class SpectrumResult(NamedTuple):
    eigenvalues: np.ndarray
    lambda_second: float
    connected: bool
    bipartite: bool
    degenerate: bool

    def merged(self, tol: float = MERGE_TOL) -> list[tuple[float, int]]:
        """Eigenvalues with multiplicities, clustering values within ``tol``."""
        out: list[tuple[float, int]] = []
        for lam in self.eigenvalues:
            if out and abs(out[-1][0] - lam) <= tol:
                out[-1] = (out[-1][0], out[-1][1] + 1)
            else:
                out.append((float(lam), 1))
        return out


def random_walk_spectrum(g: WeightedGraph) -> SpectrumResult:
    """Spectrum of the random walk, sorted descending.

    ``lambda_second`` is the largest eigenvalue once a single copy of the top
    eigenvalue is removed. For K_{1,1} the spectrum is exactly {1, -1};
    ``lambda_second`` is then -1 and the result is flagged degenerate.
    """
    eigs = np.linalg.eigvalsh(symmetric_walk_matrix(g))[::-1].copy()
    second = float(eigs[1]) if len(eigs) > 1 else float("nan")
    degenerate = len(eigs) <= 2
    return SpectrumResult(eigs, second, g.is_connected, g.is_bipartite, degenerate)


def m_sides_matrix(g: WeightedGraph) -> np.ndarray:
    """Matrix of the side-averaging projection M_sides."""
    weights = g.degrees
    out = np.zeros((len(g.vertices), len(g.vertices)))
    for mask in g.side_masks():
        total = weights[mask].sum()
        if total > 0:
            out[mask] = np.where(mask, weights, 0.0) / total
    return out


def m_sides_apply(g: WeightedGraph, phi: np.ndarray) -> np.ndarray:
    """Replace phi on each side by its m-weighted side average.

    ``phi`` has shape ``(|V|,)`` or ``(|V|, d)``; vector coefficients are
    averaged coordinate-wise.
    """
    phi = np.asarray(phi)
    if phi.shape[0] != len(g.vertices):
        raise ValueError(f"phi has {phi.shape[0]} rows for {len(g.vertices)} vertices")
    return m_sides_matrix(g) @ phi


def contraction_operator(g: WeightedGraph) -> np.ndarray:
    """A (I - M_sides) as a matrix on functions V -> C."""
    return walk_matrix(g) @ (np.eye(len(g.vertices)) - m_sides_matrix(g))


def contraction_norm(g: WeightedGraph) -> float:
    """Operator norm of A (I - M_sides) on l2(V, m), via the conjugate by D^{1/2}."""
    root = np.sqrt(g.degrees)
    conj = root[:, None] * contraction_operator(g) / root[None, :]
    return float(np.linalg.norm(conj, 2))


def is_one_sided_expander(spectrum: SpectrumResult, lam: float, tol: float = MERGE_TOL) -> bool:
    """Spectrum inside [-1, lam] union {1} (one copy of 1 removed first)."""
    rest = spectrum.eigenvalues[1:]
    return bool(np.all(rest <= lam + tol))


class ContractionResult(NamedTuple):
    max_ratio: float
    lambda_second: float
    holds: bool
    trials: int
    seed: int


def vector_contraction_check(
    g: WeightedGraph,
    d: int,
    trials: int,
    seed: int,
    *,
    eigenbasis: bool = False,
) -> ContractionResult:
    """Sample ||(A(I - M_sides)) (x) id phi|| / ||phi|| over phi in l2(V, m; C^d).

    Entries of phi are independent standard complex Gaussians. With
    ``eigenbasis`` every walk eigenfunction (tensored with a random unit vector
    of C^d) is tried as well, which attains the bound in the scalar case.
    """
    if d < 1:
        raise ValueError("coefficient dimension must be positive")
    if g.sides is None:
        g = g.with_sides()
    if not g.is_connected:
        raise Disconnected("contraction bound needs a connected graph")
    spectrum = random_walk_spectrum(g)
    T = contraction_operator(g)
    rng = np.random.default_rng(seed)

    candidates: list[np.ndarray] = []
    for _ in range(trials):
        candidates.append(rng.standard_normal((len(g.vertices), d))
                          + 1j * rng.standard_normal((len(g.vertices), d)))
    if eigenbasis:
        _, vecs = np.linalg.eigh(symmetric_walk_matrix(g))
        funcs = vecs / np.sqrt(g.degrees)[:, None]
        for k in range(funcs.shape[1]):
            w = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            candidates.append(np.outer(funcs[:, k], w / np.linalg.norm(w)))

    best = 0.0
    for phi in candidates:
        norm = weighted_norm(g, phi)
        if norm > 0:
            best = max(best, weighted_norm(g, T @ phi) / norm)
    return ContractionResult(best, spectrum.lambda_second,
                             best <= spectrum.lambda_second + CONTRACTION_SLACK, len(candidates), seed)


def sign_flip(g: WeightedGraph, phi: np.ndarray) -> np.ndarray:
    """phi' = phi on side 0, -phi on side 1."""
    _, second = g.side_masks()
    sign = np.where(second, -1.0, 1.0)
    return sign.reshape((-1,) + (1,) * (np.ndim(phi) - 1)) * phi


def side_indicator_difference(g: WeightedGraph) -> np.ndarray:
    first, second = g.side_masks()
    return first.astype(float) - second.astype(float)


def graph_from_edges(edges: Iterable[Sequence[str]], sides: Sequence[Sequence[str]] | None = None) -> WeightedGraph:
    """Graph whose vertex set is the set of edge endpoints."""
    edges = [tuple(e) for e in edges]
    verts = tuple(sorted({v for e in edges for v in e}))
    return WeightedGraph(verts, tuple(edges), None if sides is None else (tuple(sides[0]), tuple(sides[1])))
