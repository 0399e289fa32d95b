"""Seeded property suites: the Kassabov inequality, the vector-valued contraction
bound, bipartite spectral facts, and the equivariant checks on the octahedron.

Each suite returns a :class:`SuiteResult` whose ``to_dict`` output is
byte-stable for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator

import numpy as np

from . import generators as gen
from .criterion import lambda_table
from .equivariant import (
    build_equivariant_space,
    character_representation,
    kazhdan_set_properties,
    load_action,
    phi_x_chain_check,
    random_unit_vectors,
    regular_representation,
    verify_angle_bounds,
    verify_intersect_lemma,
)
from .hilbert_geometry import Subspace, cosine_matrix, kassabov_check, span_columns
from .spectra import (
    WeightedGraph,
    contraction_norm,
    is_one_sided_expander,
    m_sides_matrix,
    random_walk_spectrum,
    side_indicator_difference,
    sign_flip,
    vector_contraction_check,
    walk_matrix,
)

KASSABOV_MIN_LAMBDA = 0.05
FACT_TOL = 1e-12
SYMMETRY_TOL = 1e-9


@dataclass
class SuiteResult:
    name: str
    instances: int
    failures: int
    metrics: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "passed": self.passed, "instances": self.instances,
                "failures": self.failures, "metrics": self.metrics}


def _orthonormal(rng: np.random.Generator, d: int, k: int) -> np.ndarray:
    q, _ = np.linalg.qr(rng.standard_normal((d, max(k, 1))))
    return q[:, :k]


def random_subspace_family(rng: np.random.Generator) -> tuple[list[Subspace], int]:
    """2-5 subspaces of R^d, d <= 10, sharing a random common part.

    Half of the families are spans of coordinate subsets in a random frame,
    which produces nested and orthogonal configurations; the rest add random
    directions to the common part.
    """
    d = int(rng.integers(2, 11))
    count = int(rng.integers(2, 6))
    frame = _orthonormal(rng, d, d)
    if rng.random() < 0.5:
        subspaces = []
        for _ in range(count):
            size = int(rng.integers(1, d + 1))
            cols = np.sort(rng.choice(d, size=size, replace=False))
            subspaces.append(Subspace(frame[:, cols]))
        return subspaces, d
    common = int(rng.integers(0, d // 3 + 1))
    W = frame[:, :common]
    rest = d - common
    subspaces = []
    for _ in range(count):
        extra = int(rng.integers(1, max(1, rest // 2) + 1))
        subspaces.append(span_columns(np.column_stack([W, rng.standard_normal((d, extra))])))
    return subspaces, d


def kassabov_suite(instances: int = 1000, seed: int = 0) -> SuiteResult:
    """Random positive definite configurations (lambda_min >= 0.05), one x each."""
    rng = np.random.default_rng(seed)
    failures, drawn = 0, 0
    worst_rel = -np.inf
    min_lambda = np.inf
    for _ in range(instances):
        while True:
            drawn += 1
            subspaces, d = random_subspace_family(rng)
            cm = cosine_matrix(subspaces)
            if cm.lambda_min >= KASSABOV_MIN_LAMBDA:
                break
        x = rng.standard_normal(d)
        res = kassabov_check(subspaces, x)
        failures += not res.holds
        if res.rhs > 1e-9:
            worst_rel = max(worst_rel, (res.lhs - res.rhs) / res.rhs)
        min_lambda = min(min_lambda, cm.lambda_min)
    return SuiteResult("kassabov", instances, failures, {
        "seed": seed,
        "configurations_drawn": drawn,
        "max_relative_excess": float(worst_rel),
        "min_lambda": float(min_lambda),
    })


def random_bipartite_graphs(count: int, seed: int, max_vertices: int = 12) -> Iterator[WeightedGraph]:
    """Connected bipartite graphs with 3..max_vertices vertices (K_{1,1} excluded)."""
    rng = np.random.default_rng(seed)
    for k in range(count):
        while True:
            left = int(rng.integers(1, max_vertices))
            right = int(rng.integers(1, max_vertices - left + 1))
            if left + right >= 3:
                break
        p = float(rng.uniform(0.3, 1.0))
        yield gen.random_bipartite_graph(left, right, p, seed=int(rng.integers(2**31)))


def contraction_suite(
    graphs: int = 200, dims: tuple[int, ...] = (1, 2, 6), trials: int = 20, seed: int = 0
) -> SuiteResult:
    failures, checks = 0, 0
    worst_excess = -np.inf
    worst_attain = 0.0
    for k, g in enumerate(random_bipartite_graphs(graphs, seed)):
        for d in dims:
            res = vector_contraction_check(g, d, trials, seed=seed + 1000 * k + d, eigenbasis=True)
            checks += 1
            failures += not res.holds
            worst_excess = max(worst_excess, res.max_ratio - res.lambda_second)
            if d == 1:
                gap = abs(res.max_ratio - res.lambda_second)
                worst_attain = max(worst_attain, gap)
                failures += gap > 1e-9
    return SuiteResult("contraction", checks, failures, {
        "seed": seed,
        "graphs": graphs,
        "dims": list(dims),
        "max_ratio_minus_lambda": float(worst_excess),
        "max_scalar_attainment_gap": float(worst_attain),
    })


def bipartite_fact_residuals(g: WeightedGraph, rng: np.random.Generator) -> dict[str, float]:
    """Residuals of the bipartite spectral facts for one graph (all should be ~0)."""
    A = walk_matrix(g)
    spec = random_walk_spectrum(g)
    eigs = spec.eigenvalues
    f = side_indicator_difference(g)
    M = m_sides_matrix(g)
    D = np.diag(g.degrees)
    phi = rng.standard_normal(len(g.vertices))
    return {
        "spectrum_symmetry": float(np.abs(np.sort(eigs) - np.sort(-eigs)).max()),
        "minus_one_residual": float(np.abs(A @ f + f).max()),
        "sides_idempotent": float(np.abs(M @ M - M).max()),
        "sides_self_adjoint": float(np.abs(D @ M - (D @ M).T).max()),
        "sign_flip_conjugation": float(np.abs(A @ sign_flip(g, phi) + sign_flip(g, A @ phi)).max()),
    }


def expander_equivalence(g: WeightedGraph) -> bool:
    """||A(I - M_sides)|| <= lam iff the spectrum lies in [-1, lam] u {1}, probed around lambda_second."""
    spec = random_walk_spectrum(g)
    norm = contraction_norm(g)
    for lam in (spec.lambda_second - 1e-3, spec.lambda_second, spec.lambda_second + 1e-3, 0.999):
        if lam < 0:
            continue
        if (norm <= lam + 1e-9) != is_one_sided_expander(spec, lam):
            return False
    return True


def bipartite_facts_suite(graphs: int = 200, seed: int = 0) -> SuiteResult:
    family = list(random_bipartite_graphs(graphs, seed))
    family += [gen.cycle(L) for L in (4, 6, 8, 10)] + [gen.pg2_incidence(2), gen.pg2_incidence(3)]
    family += [gen.complete_bipartite(a, b) for a, b in ((2, 2), (3, 3), (2, 5))]
    rng = np.random.default_rng(seed)
    worst: dict[str, float] = {}
    failures = 0
    for g in family:
        res = bipartite_fact_residuals(g, rng)
        ok = res["spectrum_symmetry"] <= SYMMETRY_TOL and all(
            v <= FACT_TOL for k, v in res.items() if k != "spectrum_symmetry")
        ok = ok and expander_equivalence(g)
        failures += not ok
        for k, v in res.items():
            worst[k] = max(worst.get(k, 0.0), v)
    return SuiteResult("bipartite_facts", len(family), failures, {"seed": seed, "max_residuals": worst})


def octahedron_equivariant_suite(samples: int = 50, seed: int = 0) -> SuiteResult:
    """Regular and sign representations of (Z/2)^3 acting on the octahedron."""
    X = gen.octahedron()
    action = load_action(X, gen.part_swaps((2, 2, 2)))
    table = lambda_table(X)
    failures = 0
    metrics: dict[str, Any] = {"seed": seed, "group_order": action.order}

    regular = build_equivariant_space(X, action, regular_representation(action))
    lemma = verify_intersect_lemma(regular)
    angles = verify_angle_bounds(regular, table)
    max_cos = float(max(-angles.cosines.matrix[i, j] for i in range(3) for j in range(3) if i != j))
    failures += not (lemma.match and lemma.dim_intersection == 1 and angles.entrywise_ok and angles.eigen_ok
                     and max_cos <= 1e-9)
    metrics["regular"] = {
        "dim_intersection": lemma.dim_intersection,
        "dim_invariant": lemma.dim_invariant,
        "containment_residual": max(lemma.residual_constants_in_intersection,
                                    lemma.residual_intersection_in_constants),
        "max_cosine": max_cos,
        "lambda_min_pi": angles.cosines.lambda_min,
        "lambda_x": angles.lambda_x,
    }

    sign = build_equivariant_space(X, action, character_representation(action, [-1.0] * len(action.generators)))
    sign_lemma = verify_intersect_lemma(sign)
    failures += not (sign_lemma.match and sign_lemma.dim_intersection == 0)
    metrics["sign"] = {"dim_intersection": sign_lemma.dim_intersection, "dim_invariant": sign_lemma.dim_invariant}

    symmetric, generating = kazhdan_set_properties(regular)
    failures += not (symmetric and generating)
    chain_fail = 0
    for x in random_unit_vectors(regular.rep.dim, samples, seed):
        chain_fail += not phi_x_chain_check(regular, x, lambda_x=angles.lambda_x).holds
    failures += chain_fail
    metrics["kazhdan_set"] = {"symmetric": symmetric, "generating": generating}
    metrics["chain"] = {"samples": samples, "failures": chain_fail}
    return SuiteResult("octahedron_equivariant", 3 + samples, failures, metrics)
