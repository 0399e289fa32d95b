import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spectral_t.errors import DimensionMismatch, NotPositiveDefinite
from spectral_t.hilbert_geometry import (
    BORDERLINE,
    NOT_POSITIVE_DEFINITE,
    POSITIVE_DEFINITE,
    angle_cos,
    classify_min_eigenvalue,
    cosine_matrix,
    intersect,
    kassabov_check,
    span_columns,
    subspace_from_spanning,
)
from spectral_t.suites import random_subspace_family

E = np.eye(3)


def line(theta):
    return subspace_from_spanning([[np.cos(theta), np.sin(theta)]])


def random_subspace(rng, d, k):
    return span_columns(rng.standard_normal((d, k)))


def test_spanning_sets():
    assert subspace_from_spanning([[1, 0, 0], [1, 1, 0]]).dim == 2
    assert subspace_from_spanning([[1, 1], [2, 2]]).dim == 1
    assert subspace_from_spanning([], ambient=3).dim == 0
    with pytest.raises(DimensionMismatch):
        subspace_from_spanning([[1, 0], [1, 0, 0]])


def test_intersect_coordinate_planes():
    W = intersect([subspace_from_spanning([E[0], E[1]]), subspace_from_spanning([E[0], E[2]])])
    assert W.dim == 1
    assert abs(abs(W.basis[0, 0]) - 1) < 1e-12


def test_intersect_generic_is_zero():
    rng = np.random.default_rng(5)
    U, V = random_subspace(rng, 6, 3), random_subspace(rng, 6, 3)
    # oracle: stacked bases have full rank, so the intersection is trivial
    assert np.linalg.matrix_rank(np.hstack([U.basis, V.basis])) == 6
    assert intersect([U, V]).dim == 0


def test_intersect_idempotent():
    U = random_subspace(np.random.default_rng(2), 5, 3)
    W = intersect([U, U])
    assert W.dim == 3 and W.contains(U) and U.contains(W)


def test_angle_between_lines():
    assert angle_cos(line(0.0), line(np.pi / 3)) == pytest.approx(0.5, abs=1e-12)


def test_angle_after_removing_intersection():
    theta = np.pi / 4
    U1 = subspace_from_spanning([E[0], E[1]])
    U2 = subspace_from_spanning([E[0], np.cos(theta) * E[1] + np.sin(theta) * E[2]])
    assert angle_cos(U1, U2) == pytest.approx(np.cos(theta), abs=1e-12)


def test_angle_zero_under_containment():
    U1 = subspace_from_spanning([E[0]])
    U2 = subspace_from_spanning([E[0], E[1]])
    assert angle_cos(U1, U2) == 0.0
    assert angle_cos(U2, U1) == 0.0


def test_cosine_matrix_orthogonal():
    cm = cosine_matrix([subspace_from_spanning([e]) for e in E])
    assert np.array_equal(cm.matrix, np.eye(3))
    assert cm.lambda_min == pytest.approx(1.0)
    assert cm.verdict == POSITIVE_DEFINITE


def test_cosine_matrix_three_lines():
    cm = cosine_matrix([line(0.0), line(np.pi / 3), line(2 * np.pi / 3)])
    assert np.allclose(cm.matrix, np.eye(3) - 0.5 * (np.ones((3, 3)) - np.eye(3)), atol=1e-12)
    # eigenvalues of I - (J - I)/2 are 0, 3/2, 3/2
    assert cm.lambda_min == pytest.approx(0.0, abs=1e-12)
    assert cm.verdict == BORDERLINE


def test_cosine_matrix_copies():
    U = random_subspace(np.random.default_rng(0), 4, 2)
    assert np.array_equal(cosine_matrix([U, U, U]).matrix, np.eye(3))


def test_classify():
    assert classify_min_eigenvalue(1e-9) == POSITIVE_DEFINITE
    assert classify_min_eigenvalue(-5e-11) == BORDERLINE
    assert classify_min_eigenvalue(-1e-3) == NOT_POSITIVE_DEFINITE


def test_kassabov_orthogonal_lines_equality():
    res = kassabov_check([line(0.0), line(np.pi / 2)], np.array([1.0, 1.0]) / np.sqrt(2))
    assert res.lhs == pytest.approx(1.0)
    assert res.rhs == pytest.approx(1.0)
    assert res.holds


def test_kassabov_vector_in_intersection():
    U = subspace_from_spanning([E[0], E[1]])
    V = subspace_from_spanning([E[0], E[2]])
    res = kassabov_check([U, V], E[0])
    assert res.lhs == pytest.approx(0.0, abs=1e-24) and res.holds


def test_kassabov_refuses_borderline():
    with pytest.raises(NotPositiveDefinite):
        kassabov_check([line(0.0), line(np.pi / 3), line(2 * np.pi / 3)], np.array([1.0, 0.0]))


def test_complex_subspaces():
    rng = np.random.default_rng(3)
    U = span_columns(rng.standard_normal((4, 2)) + 1j * rng.standard_normal((4, 2)))
    x = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    r = x - U.project(x)
    assert np.abs(U.basis.conj().T @ r).max() < 1e-12
    assert 0.0 <= angle_cos(U, span_columns(rng.standard_normal((4, 2)))) <= 1.0


subspace_pairs = st.tuples(st.integers(2, 7), st.integers(0, 2**31 - 1)).map(
    lambda t: (np.random.default_rng(t[1]), t[0])
).map(lambda t: (random_subspace(t[0], t[1], int(t[0].integers(1, t[1]))),
                 random_subspace(t[0], t[1], int(t[0].integers(1, t[1]))),
                 t[0].standard_normal(t[1])))


@settings(max_examples=60, deadline=None)
@given(subspace_pairs)
def test_angle_symmetric_and_in_range(data):
    U, V, _ = data
    c = angle_cos(U, V)
    assert 0.0 <= c <= 1.0
    assert c == pytest.approx(angle_cos(V, U), abs=1e-12)


@settings(max_examples=60, deadline=None)
@given(subspace_pairs)
def test_projection_is_orthogonal(data):
    U, _, x = data
    p = U.project(x)
    assert np.linalg.norm(p - U.project(p)) <= 1e-10
    assert np.abs(U.basis.T @ (x - p)).max() <= 1e-10


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_intersect_monotone(seed):
    rng = np.random.default_rng(seed)
    family, d = random_subspace_family(rng)
    W = random_subspace(rng, d, int(rng.integers(1, d + 1)))
    smaller, larger = intersect(family + [W]), intersect(family)
    assert larger.residual(smaller) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_kassabov_on_random_pd_families(seed):
    rng = np.random.default_rng(seed)
    family, d = random_subspace_family(rng)
    if cosine_matrix(family).lambda_min < 0.05:
        return
    assert kassabov_check(family, rng.standard_normal(d)).holds
