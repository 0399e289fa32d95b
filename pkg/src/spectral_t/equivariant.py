"""Finite group actions, unitary representations and the space of equivariant chamber maps.

Haar measure on a finite group is the counting measure, so the stabiliser
measure of a chamber is the size of its stabiliser. The space of equivariant
maps is modelled by its values on a fundamental domain D: at a representative
sigma the value lies in the fixed space of pi(G_sigma), and the coordinates
used here are orthonormal for the weighted norm

    ||phi||^2 = (sum_D 1/|G_sigma|)^{-1} sum_D |phi(sigma)|^2 / |G_sigma|.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

from .complex_core import Simplex, SimplicialComplex, canonical, gallery_connectivity
from .criterion import LambdaTable, Pair, all_pairs, build_and_analyze_A, lambda_table
from .errors import (
    BadTypeSet,
    ClosureCapExceeded,
    FormatError,
    KEmpty,
    NotARepresentation,
    NotGalleryConnected,
    NotSimplicial,
    NotTypePreserving,
    NotUnitVector,
    TableMismatch,
)
from .hilbert_geometry import (
    CONTAIN_TOL,
    CosineMatrix,
    KassabovResult,
    Subspace,
    cosine_matrix,
    intersect,
    kassabov_check,
    span_columns,
)

Perm = tuple[int, ...]

CLOSURE_CAP = 20160
REP_TOL = 1e-10
REP_EXHAUSTIVE = 64
REP_SAMPLES = 4096
PROJECTION_TOL = 1e-10
CHAIN_SLACK = 1e-9


def compose(a: Perm, b: Perm) -> Perm:
    """a after b."""
    return tuple(a[i] for i in b)


def invert(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, ai in enumerate(a):
        out[ai] = i
    return tuple(out)


@dataclass(frozen=True, eq=False)
class GroupAction:
    """A finite group of vertex permutations acting simplicially on ``complex``.

    ``elements`` are sorted (the identity comes first). ``words[k]`` lists
    generator indices, first applied first, whose product is ``elements[k]``.
    """

    complex: SimplicialComplex
    generators: tuple[Perm, ...]
    elements: tuple[Perm, ...]
    words: tuple[tuple[int, ...], ...]

    @cached_property
    def index(self) -> dict[Perm, int]:
        return {g: k for k, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.complex.vertices)}

    def mul(self, a: int, b: int) -> int:
        return self.index[compose(self.elements[a], self.elements[b])]

    def inv(self, a: int) -> int:
        return self.index[invert(self.elements[a])]

    def act(self, g: int, simplex: Iterable[str]) -> Simplex:
        perm, verts = self.elements[g], self.complex.vertices
        return canonical(verts[perm[self._vertex_index[v]]] for v in simplex)

    def vertex_map(self, g: int) -> dict[str, str]:
        verts = self.complex.vertices
        return {verts[i]: verts[j] for i, j in enumerate(self.elements[g])}

    @cached_property
    def chamber_images(self) -> np.ndarray:
        """``[g, c]`` = index of g applied to chamber c."""
        chambers = self.complex.chambers
        where = {c: k for k, c in enumerate(chambers)}
        return np.array([[where[self.act(g, c)] for c in chambers] for g in range(self.order)], dtype=int)


def _preserves_chambers(X: SimplicialComplex, perm: Perm) -> bool:
    verts = X.vertices
    idx = {v: i for i, v in enumerate(verts)}
    chambers = set(X.chambers)
    return all(canonical(verts[perm[idx[v]]] for v in c) in chambers for c in X.chambers)


def _close(X: SimplicialComplex, generators: Sequence[Perm], cap: int) -> GroupAction:
    identity = tuple(range(len(X.vertices)))
    words: dict[Perm, tuple[int, ...]] = {identity: ()}
    queue = deque([identity])
    while queue:
        e = queue.popleft()
        for k, s in enumerate(generators):
            new = compose(s, e)
            if new not in words:
                words[new] = words[e] + (k,)
                if len(words) > cap:
                    raise ClosureCapExceeded(f"group closure exceeds {cap} elements")
                queue.append(new)
    elements = tuple(sorted(words))
    return GroupAction(X, tuple(generators), elements, tuple(words[g] for g in elements))


def load_action(
    X: SimplicialComplex, generators: Sequence[Mapping[str, str]], cap: int = CLOSURE_CAP
) -> GroupAction:
    """Close the generating permutations into a group and check it acts simplicially.

    Vertices a generator does not mention are fixed.

    Raises:
        FormatError: a generator is not a bijection of the vertex set.
        NotSimplicial: some element does not map chambers to chambers.
        ClosureCapExceeded: the group has more than ``cap`` elements.
    """
    idx = {v: i for i, v in enumerate(X.vertices)}
    perms = []
    for g in generators:
        unknown = sorted(set(g) - set(idx) | set(g.values()) - set(idx))
        if unknown:
            raise FormatError(f"permutation mentions unknown vertices {unknown}")
        image = [idx[g.get(v, v)] for v in X.vertices]
        if len(set(image)) != len(image):
            raise FormatError(f"generator {dict(sorted(g.items()))} is not a bijection")
        perm = tuple(image)
        if not _preserves_chambers(X, perm):
            raise NotSimplicial(f"generator {dict(sorted(g.items()))} does not map chambers to chambers")
        perms.append(perm)
    action = _close(X, perms, cap)
    for g in action.elements:
        if not _preserves_chambers(X, g):
            raise NotSimplicial("a group element does not map chambers to chambers")
    return action


def is_type_preserving(action: GroupAction) -> bool:
    types = action.complex.types
    return all(types[g[i]] == types[i] for g in action.elements for i in range(len(g)))


def _generating_subset(X: SimplicialComplex, members: Sequence[Perm]) -> list[Perm]:
    gens: list[Perm] = []
    reached = {tuple(range(len(X.vertices)))}
    for g in members:
        if g not in reached:
            gens.append(g)
            reached = set(_close(X, gens, len(members)).elements)
    return gens


class KernelResult(NamedTuple):
    phi: tuple[Perm, ...]
    kernel: GroupAction
    index: int


def type_permutation_kernel(action: GroupAction, base: Iterable[str] | None = None) -> KernelResult:
    """Type permutation table Phi(g)(i) = type(g^{-1} v_i) and its kernel.

    Phi satisfies Phi(gh) = Phi(h) o Phi(g) with o the usual right-to-left
    composition, i.e. it is a homomorphism when permutations of the types are
    multiplied left to right. The kernel, the type-preserving elements, is the
    same under either convention.
    """
    X = action.complex
    if not gallery_connectivity(X, cap=0).connected:
        raise NotGalleryConnected("type permutation table needs a gallery-connected complex")
    sigma = X.chambers[0] if base is None else canonical(base)
    if sigma not in set(X.chambers):
        raise FormatError(f"base {list(sigma)} is not a chamber")
    vidx = {v: i for i, v in enumerate(X.vertices)}
    base_idx = [vidx[X.vertex_of_type(sigma, t)] for t in X.type_labels]
    phi = []
    for g in action.elements:
        ginv = invert(g)
        phi.append(tuple(X.types[ginv[b]] for b in base_idx))
    for k in range(action.order):
        for s in action.generators:
            sk = action.index[compose(s, action.elements[k])]
            expected = tuple(phi[k][phi[action.index[s]][i]] for i in range(len(base_idx)))
            if phi[sk] != expected:
                raise NotGalleryConnected("type permutation table is not multiplicative")
    identity = tuple(range(len(base_idx)))
    members = [g for g, p in zip(action.elements, phi) if p == identity]
    kernel = _close(X, _generating_subset(X, members), action.order)
    return KernelResult(tuple(phi), kernel, action.order // kernel.order)


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    action: GroupAction
    matrices: tuple[np.ndarray, ...]
    kind: str

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]

    def __call__(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def averaging(self, members: Iterable[int]) -> np.ndarray:
        members = list(members)
        return sum(self.matrices[g] for g in members) / len(members)


def validate_representation(rep: UnitaryRep, *, seed: int = 0) -> None:
    """Unitarity and pi(g) pi(h) = pi(gh), on all pairs for small groups, sampled pairs otherwise."""
    act = rep.action
    eye = np.eye(rep.dim)
    for g, M in enumerate(rep.matrices):
        if M.shape != (rep.dim, rep.dim) or np.abs(M.conj().T @ M - eye).max() > REP_TOL:
            raise NotARepresentation(f"pi of element {g} is not unitary")
    if act.order <= REP_EXHAUSTIVE:
        pairs: Iterable[tuple[int, int]] = ((a, b) for a in range(act.order) for b in range(act.order))
    else:
        rng = np.random.default_rng(seed)
        pairs = rng.integers(0, act.order, size=(REP_SAMPLES, 2)).tolist()
    for a, b in pairs:
        if np.abs(rep(a) @ rep(b) - rep(act.mul(a, b))).max() > REP_TOL:
            raise NotARepresentation(f"pi fails to be multiplicative on elements {a}, {b}")


def regular_representation(action: GroupAction) -> UnitaryRep:
    """pi(g) e_h = e_{gh} on C[G]."""
    size = action.order
    mats = []
    for g in range(size):
        M = np.zeros((size, size))
        for h in range(size):
            M[action.mul(g, h), h] = 1.0
        mats.append(M)
    return UnitaryRep(action, tuple(mats), "regular")


def vertex_permutation_representation(action: GroupAction) -> UnitaryRep:
    """pi(g) e_v = e_{g v} on functions of the vertices."""
    size = len(action.complex.vertices)
    mats = []
    for perm in action.elements:
        M = np.zeros((size, size))
        M[list(perm), list(range(size))] = 1.0
        mats.append(M)
    return UnitaryRep(action, tuple(mats), "vertex")


def representation_from_generators(
    action: GroupAction,
    generator_matrices: Sequence[np.ndarray],
    kind: str = "explicit",
    *,
    dim: int | None = None,
    seed: int = 0,
) -> UnitaryRep:
    """Extend generator images along the closure words, then validate.

    ``dim`` is only needed when the action has no generators.
    """
    if len(generator_matrices) != len(action.generators):
        raise NotARepresentation(
            f"{len(generator_matrices)} matrices for {len(action.generators)} generators"
        )
    gens = [np.atleast_2d(np.asarray(M)) for M in generator_matrices]
    shapes = {M.shape for M in gens}
    if len(shapes) > 1:
        raise NotARepresentation(f"generator matrices have shapes {sorted(shapes)}")
    if gens:
        dim = gens[0].shape[0]
    elif dim is None:
        raise NotARepresentation("dimension required for a group without generators")
    dtype = np.result_type(float, *gens)
    mats = []
    for word in action.words:
        M = np.eye(dim, dtype=dtype)
        for k in word:
            M = gens[k] @ M
        mats.append(M)
    rep = UnitaryRep(action, tuple(mats), kind)
    validate_representation(rep, seed=seed)
    return rep


def character_representation(action: GroupAction, values: Sequence[complex]) -> UnitaryRep:
    """One-dimensional representation sending generator k to ``values[k]``."""
    return representation_from_generators(action, [np.array([[v]]) for v in values], "character")


def trivial_representation(action: GroupAction, dim: int = 1) -> UnitaryRep:
    return representation_from_generators(
        action, [np.eye(dim) for _ in action.generators], "trivial", dim=dim
    )


def trivial_action(X: SimplicialComplex) -> GroupAction:
    return load_action(X, [])


class _Orbit(NamedTuple):
    representative: int          # chamber index
    stabilizer: tuple[int, ...]  # element indices


@dataclass(frozen=True, eq=False)
class EquivariantSpace:
    action: GroupAction
    rep: UnitaryRep
    representatives: tuple[int, ...]          # chamber indices forming D(n)
    stabilizers: tuple[tuple[int, ...], ...]  # aligned with representatives
    fixed_bases: tuple[np.ndarray, ...]       # orthonormal basis of H^{pi(G_sigma)} per representative
    scales: tuple[float, ...]
    placement: tuple[tuple[int, int], ...]    # per chamber: (position in D, element g with g.rep = chamber)

    @property
    def complex(self) -> SimplicialComplex:
        return self.action.complex

    @property
    def n(self) -> int:
        return self.complex.n

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, total = [], 0
        for B in self.fixed_bases:
            out.append(total)
            total += B.shape[1]
        return tuple(out + [total])

    @property
    def dim(self) -> int:
        return self.offsets[-1]

    @property
    def fundamental_domain(self) -> tuple[Simplex, ...]:
        return tuple(self.complex.chambers[r] for r in self.representatives)

    @cached_property
    def dtype(self) -> np.dtype:
        return np.result_type(float, *self.rep.matrices)

    def representative_values(self, coords: np.ndarray) -> list[np.ndarray]:
        """phi(sigma) for each sigma in D."""
        return [
            s * (B @ coords[a:b])
            for B, s, a, b in zip(self.fixed_bases, self.scales, self.offsets, self.offsets[1:])
        ]

    def evaluate(self, coords: np.ndarray) -> np.ndarray:
        """Values of the equivariant map on every chamber, shape (chambers, dim H)."""
        at_reps = self.representative_values(np.asarray(coords))
        return np.array([self.rep(g) @ at_reps[pos] for pos, g in self.placement])

    def coords_from_representative_values(self, values: Sequence[np.ndarray]) -> np.ndarray:
        parts = [B.conj().T @ v / s for B, s, v in zip(self.fixed_bases, self.scales, values)]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=self.dtype)

    def restrict(self, values: np.ndarray) -> np.ndarray:
        return self.coords_from_representative_values([values[r] for r in self.representatives])

    @cached_property
    def embedding(self) -> np.ndarray:
        """Stacked evaluations of the basis maps, shape (chambers, dim H, dim)."""
        cols = [self.evaluate(e) for e in np.eye(self.dim, dtype=self.dtype)]
        if not cols:
            return np.zeros((len(self.complex.chambers), self.rep.dim, 0), dtype=self.dtype)
        return np.stack(cols, axis=-1)

    def weighted_norm(self, values_at_reps: Sequence[np.ndarray]) -> float:
        """The weighted norm computed straight from values on D."""
        weights = np.array([1.0 / len(s) for s in self.stabilizers])
        sq = np.array([np.vdot(v, v).real for v in values_at_reps])
        return float(np.sqrt((weights * sq).sum() / weights.sum()))


def build_equivariant_space(
    X: SimplicialComplex, action: GroupAction, rep: UnitaryRep, tie_break: str = "least"
) -> EquivariantSpace:
    """Fundamental domain, stabilisers and fixed spaces of the equivariant chamber maps.

    ``tie_break`` picks the lexicographically least (default) or greatest
    chamber of each orbit as its representative.

    Raises:
        NotTypePreserving: use :func:`type_permutation_kernel` to pass to the kernel first.
    """
    if action.complex is not X and action.complex != X:
        raise FormatError("action belongs to a different complex")
    if not is_type_preserving(action):
        raise NotTypePreserving("action permutes types; restrict to the type_permutation_kernel subgroup")
    if tie_break not in ("least", "greatest"):
        raise ValueError(f"unknown tie_break {tie_break!r}")
    images = action.chamber_images
    count = len(X.chambers)
    seen = [False] * count
    orbits: list[_Orbit] = []
    for c in range(count):
        if seen[c]:
            continue
        members = sorted(set(images[:, c].tolist()))
        for m in members:
            seen[m] = True
        r = members[0] if tie_break == "least" else members[-1]
        orbits.append(_Orbit(r, tuple(int(g) for g in np.flatnonzero(images[:, r] == r))))
    orbits.sort(key=lambda o: o.representative)

    orbit_of = [0] * count
    for k, o in enumerate(orbits):
        for m in images[:, o.representative]:
            orbit_of[m] = k
    placement = []
    for c in range(count):
        r = orbits[orbit_of[c]].representative
        placement.append((orbit_of[c], int(np.flatnonzero(images[:, r] == c)[0])))

    weight_sum = sum(1.0 / len(o.stabilizer) for o in orbits)
    bases = tuple(span_columns(rep.averaging(o.stabilizer)).basis for o in orbits)
    scales = tuple(float(np.sqrt(weight_sum * len(o.stabilizer))) for o in orbits)
    return EquivariantSpace(
        action=action,
        rep=rep,
        representatives=tuple(o.representative for o in orbits),
        stabilizers=tuple(o.stabilizer for o in orbits),
        fixed_bases=bases,
        scales=scales,
        placement=tuple(placement),
    )


def check_well_defined(space: EquivariantSpace, coords: np.ndarray) -> float:
    """Largest disagreement between pi(g) phi(sigma) over all g with g.sigma fixed."""
    at_reps = space.representative_values(coords)
    values = space.evaluate(coords)
    images = space.action.chamber_images
    worst = 0.0
    for pos, r in enumerate(space.representatives):
        for g in range(space.action.order):
            target = images[g, r]
            worst = max(worst, float(np.abs(space.rep(g) @ at_reps[pos] - values[target]).max(initial=0.0)))
    return worst


def _type_set(space: EquivariantSpace, nu: Iterable[int]) -> frozenset[int]:
    nu = frozenset(nu)
    labels = set(space.complex.type_labels)
    if len(nu) != space.n or not nu <= labels:
        raise BadTypeSet(f"type set {sorted(nu)} must be an {space.n}-subset of {sorted(labels)}")
    return nu


def equivalence_classes(X: SimplicialComplex, nu: Iterable[int]) -> list[list[int]]:
    """Chambers grouped by their common face of type ``nu``."""
    nu = frozenset(nu)
    groups: dict[Simplex, list[int]] = {}
    for k, c in enumerate(X.chambers):
        key = tuple(v for v in c if X.type_of[v] in nu)
        groups.setdefault(key, []).append(k)
    return [groups[key] for key in sorted(groups)]


def p_nu_projection(space: EquivariantSpace, nu: Iterable[int]) -> np.ndarray:
    """Matrix (in the orthonormal coordinates) of averaging over nu-equivalence classes."""
    nu = _type_set(space, nu)
    E = space.embedding
    averaged = np.empty_like(E)
    for members in equivalence_classes(space.complex, nu):
        averaged[members] = E[members].mean(axis=0)
    if space.dim == 0:
        return np.zeros((0, 0), dtype=space.dtype)
    P = np.stack([space.restrict(averaged[..., k]) for k in range(space.dim)], axis=-1)
    residual = projection_residuals(P)
    if max(residual) > 1e-8:
        raise AssertionError(f"class averaging is not an orthogonal projection (residuals {residual})")
    return P


def projection_residuals(P: np.ndarray) -> tuple[float, float]:
    """(||P^2 - P||, ||P - P^*||), max-abs entries."""
    if P.size == 0:
        return 0.0, 0.0
    return float(np.abs(P @ P - P).max()), float(np.abs(P - P.conj().T).max())


def type_subspaces(space: EquivariantSpace) -> list[Subspace]:
    """U_i = image of the projection for the type set missing i."""
    labels = space.complex.type_labels
    return [span_columns(p_nu_projection(space, [t for t in labels if t != i])) for i in labels]


def invariant_subspace(rep: UnitaryRep) -> Subspace:
    """H^{pi(G)}."""
    return span_columns(rep.averaging(range(rep.action.order)))


def constant_maps(space: EquivariantSpace) -> Subspace:
    """Coordinates of the constant maps phi = x0, x0 invariant under all of pi(G)."""
    inv = invariant_subspace(space.rep)
    cols = [space.coords_from_representative_values([x0] * len(space.representatives)) for x0 in inv.basis.T]
    if not cols:
        return Subspace(np.zeros((space.dim, 0), dtype=space.dtype))
    return span_columns(np.column_stack(cols))


class IntersectLemmaResult(NamedTuple):
    dim_intersection: int
    dim_invariant: int
    residual_constants_in_intersection: float
    residual_intersection_in_constants: float
    match: bool


def verify_intersect_lemma(space: EquivariantSpace) -> IntersectLemmaResult:
    """Compare the intersection of the U_i with the constant maps into H^{pi(G)}."""
    if space.dim == 0:
        inv_dim = invariant_subspace(space.rep).dim
        return IntersectLemmaResult(0, inv_dim, 0.0, 0.0, inv_dim == 0)
    cap = intersect(type_subspaces(space))
    consts = constant_maps(space)
    fwd, back = cap.residual(consts), consts.residual(cap)
    inv_dim = invariant_subspace(space.rep).dim
    match = cap.dim == inv_dim == consts.dim and fwd <= CONTAIN_TOL and back <= CONTAIN_TOL
    return IntersectLemmaResult(cap.dim, inv_dim, fwd, back, match)


class AngleBoundResult(NamedTuple):
    cosines: CosineMatrix
    lambda_x: float
    entrywise_ok: bool
    eigen_ok: bool


def _table_values(table: LambdaTable | Mapping[Pair, float], n: int) -> dict[Pair, float]:
    values = table.values() if isinstance(table, LambdaTable) else {tuple(sorted(p)): v for p, v in table.items()}
    missing = [p for p in all_pairs(n) if p not in values]
    if missing:
        raise TableMismatch(f"lambda table lacks pairs {[list(p) for p in missing]}")
    return values


def representation_cosine_matrix(space: EquivariantSpace) -> CosineMatrix:
    if space.dim == 0:
        k = space.n + 1
        return CosineMatrix(np.eye(k), 1.0, "positive-definite")
    return cosine_matrix(type_subspaces(space))


def verify_angle_bounds(space: EquivariantSpace, table: LambdaTable | Mapping[Pair, float]) -> AngleBoundResult:
    """Entrywise A(pi) >= A(X), and lambda_min(A(pi)) >= lambda_min(A(X))."""
    values = _table_values(table, space.n)
    cm = representation_cosine_matrix(space)
    _, lam_x, _ = build_and_analyze_A(values, space.n)
    entrywise = all(-cm.matrix[i, j] <= values[(i, j)] + CHAIN_SLACK for i, j in all_pairs(space.n))
    eigen = cm.lambda_min >= lam_x - CHAIN_SLACK
    return AngleBoundResult(cm, lam_x, entrywise, eigen)


def kazhdan_set(space: EquivariantSpace) -> tuple[int, ...]:
    """Elements g with |g.sigma' cap sigma| >= n for some sigma, sigma' in D."""
    reps = space.fundamental_domain
    out = []
    for g in range(space.action.order):
        moved = [set(space.action.act(g, s)) for s in reps]
        if any(len(m & set(s)) >= space.n for m in moved for s in reps):
            out.append(g)
    return tuple(out)


def kazhdan_set_properties(space: EquivariantSpace) -> tuple[bool, bool]:
    """(symmetric, generates the group)."""
    K = kazhdan_set(space)
    act = space.action
    symmetric = set(K) == {act.inv(g) for g in K}
    generated = _close(act.complex, [act.elements[g] for g in K], act.order)
    return symmetric, generated.order == act.order


def phi_x_coords(space: EquivariantSpace, x: np.ndarray) -> np.ndarray:
    """phi_x(sigma) = average of pi(g) x over G_sigma, for sigma in D."""
    vals = [space.rep.averaging(stab) @ x for stab in space.stabilizers]
    return space.coords_from_representative_values(vals)


class ChainReport(NamedTuple):
    epsilon_prime: float
    kazhdan_size: int
    phi_norm: float
    nu_defects: tuple[float, ...]
    intersection_defect_sq: float
    chain_bound: float | None
    lambda_x: float
    kassabov: KassabovResult | None
    projection_norm: float
    a_ok: bool
    b_ok: bool
    c_ok: bool | None

    @property
    def holds(self) -> bool:
        return self.a_ok and self.b_ok and self.c_ok is not False


def phi_x_chain_check(space: EquivariantSpace, x: np.ndarray, lambda_x: float | None = None) -> ChainReport:
    """Evaluate the estimates leading from an almost-invariant x to an invariant vector.

    (a) ||phi_x|| >= 1 - eps', (b) ||phi_x - P_nu phi_x|| <= 2 eps' for every nu,
    (c) ||phi_x - P_cap phi_x||^2 <= (1/lambda_X) sum_i ||phi_x - P_{U_i} phi_x||^2,
    where eps' = max over the Kazhdan set of |pi(g) x - x|. (c) is only
    evaluated (and ``kassabov`` only filled) when A(pi) is positive definite
    and lambda_X > 0. ``lambda_x`` defaults to the smallest eigenvalue of
    A(X) for the space's complex.
    """
    x = np.asarray(x)
    if x.shape != (space.rep.dim,) or abs(np.linalg.norm(x) - 1.0) > 1e-9:
        raise NotUnitVector("x must be a unit vector of the representation space")
    K = kazhdan_set(space)
    if not K:
        raise KEmpty("the Kazhdan set is empty")
    eps = max(float(np.linalg.norm(space.rep(g) @ x - x)) for g in K)
    if lambda_x is None:
        _, lambda_x, _ = build_and_analyze_A(lambda_table(space.complex), space.n)

    phi = phi_x_coords(space, x)
    phi_norm = float(np.linalg.norm(phi))
    labels = space.complex.type_labels
    nu_defects = []
    for drop in labels:
        P = p_nu_projection(space, [t for t in labels if t != drop])
        nu_defects.append(float(np.linalg.norm(phi - P @ phi)))

    subspaces = type_subspaces(space) if space.dim else []
    cap = intersect(subspaces) if subspaces else None
    proj = cap.project(phi) if cap is not None else phi
    defect_sq = float(np.linalg.norm(phi - proj) ** 2)
    cm = representation_cosine_matrix(space)
    kas, bound, c_ok = None, None, None
    if cm.positive_definite and lambda_x > 0:
        bound = sum(d * d for d in nu_defects) / lambda_x
        c_ok = defect_sq <= bound + CHAIN_SLACK
        if subspaces:
            kas = kassabov_check(subspaces, phi)
    return ChainReport(
        epsilon_prime=eps,
        kazhdan_size=len(K),
        phi_norm=phi_norm,
        nu_defects=tuple(nu_defects),
        intersection_defect_sq=defect_sq,
        chain_bound=bound,
        lambda_x=float(lambda_x),
        kassabov=kas,
        projection_norm=float(np.linalg.norm(proj)),
        a_ok=phi_norm >= 1.0 - eps - CHAIN_SLACK,
        b_ok=all(d <= 2 * eps + CHAIN_SLACK for d in nu_defects),
        c_ok=c_ok,
    )


def random_unit_vectors(dim: int, count: int, seed: int, complex_valued: bool = False) -> np.ndarray:
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((count, dim))
    if complex_valued:
        v = v + 1j * rng.standard_normal((count, dim))
    return v / np.linalg.norm(v, axis=1, keepdims=True)
