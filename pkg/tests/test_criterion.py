import math
from decimal import Decimal, getcontext

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from spectral_t.complex_core import build_complex
from spectral_t.criterion import (
    LinkFamilyInput,
    build_and_analyze_A,
    kazhdan_epsilon,
    lambda_table,
    run_criterion,
    table_from_values,
    uniform_table,
)
from spectral_t.errors import (
    DegenerateLink,
    DimensionTooLow,
    IncompleteTable,
    NonPositiveLambda,
    NotGalleryConnected,
)
from spectral_t.formats import dumps
from spectral_t.generators import complete_bipartite, cycle, link_family, octahedron, single_chamber
from spectral_t.hilbert_geometry import BORDERLINE, POSITIVE_DEFINITE


def epsilon_decimal(n, lam):
    # high-precision oracle for the Kazhdan constant
    getcontext().prec = 50
    return 1 / (2 * (1 + (Decimal(n + 1) / Decimal(lam)).sqrt()))


def test_octahedron_lambda_table():
    table = lambda_table(octahedron())
    assert set(table.entries) == {(0, 1), (0, 2), (1, 2)}
    assert all(abs(v) <= 1e-12 for v in table.values().values())


def test_family_tables():
    heawood = lambda_table(link_family("a2_tilde_q2")).values()
    assert all(v == pytest.approx(math.sqrt(2) / 3, abs=1e-12) for v in heawood.values())
    hexagons = lambda_table(link_family("coxeter_a2")).values()
    assert all(v == pytest.approx(0.5, abs=1e-12) for v in hexagons.values())


def test_custom_family_mixed_table():
    k33 = complete_bipartite(3, 3)
    fam = link_family("custom", {(0, 1): k33, (0, 2): k33, (1, 2): cycle(6)})
    values = lambda_table(fam).values()
    assert [values[p] for p in ((0, 1), (0, 2), (1, 2))] == pytest.approx([0.0, 0.0, 0.5], abs=1e-12)


def test_identity_matrix():
    A, lam, verdict = build_and_analyze_A(uniform_table(2, 0.0), 2)
    assert np.array_equal(A, np.eye(3))
    assert lam == 1.0 and verdict == POSITIVE_DEFINITE


@pytest.mark.parametrize("lam, verdict", [(math.sqrt(2) / 3, POSITIVE_DEFINITE), (0.5, BORDERLINE)])
def test_uniform_table_closed_form(lam, verdict):
    _, lam_x, got = build_and_analyze_A(uniform_table(2, lam), 2)
    # (1 + lam) I - lam J has eigenvalues 1 - 2 lam and 1 + lam
    assert lam_x == pytest.approx(1 - 2 * lam, abs=1e-12)
    assert got == verdict


def test_incomplete_table():
    with pytest.raises(IncompleteTable):
        build_and_analyze_A({(0, 1): 0.1}, 2)
    with pytest.raises(IncompleteTable):
        LinkFamilyInput(2, (((0, 1), cycle(6)),))


def test_epsilon_values():
    assert kazhdan_epsilon(2, 1.0) == pytest.approx(1 / (2 * (1 + math.sqrt(3))), abs=1e-15)
    lam = 1 - 2 * math.sqrt(2) / 3
    assert kazhdan_epsilon(2, lam) == pytest.approx(float(epsilon_decimal(2, Decimal(1) - 2 * Decimal(2).sqrt() / 3)),
                                                    abs=1e-12)
    assert kazhdan_epsilon(2, 1e-12) < 1e-6
    with pytest.raises(NonPositiveLambda):
        kazhdan_epsilon(2, 0.0)


def test_run_criterion_octahedron():
    report = run_criterion(octahedron())
    assert report.verdict == POSITIVE_DEFINITE
    assert report.epsilon == pytest.approx(0.1830127, abs=1e-6)
    assert report.thickness.is_thick is False
    assert report.exit_code == 0


def test_run_criterion_families():
    q2 = run_criterion(link_family("a2_tilde_q2"))
    assert q2.verdict == POSITIVE_DEFINITE
    assert q2.epsilon == pytest.approx(0.0606602, abs=1e-6)
    cox = run_criterion(link_family("coxeter_a2"))
    assert cox.verdict == BORDERLINE and cox.epsilon is None and cox.exit_code == 1
    assert "epsilon" not in cox.to_dict()


def test_run_criterion_reports_hypothesis_failures():
    report = run_criterion(single_chamber(2))
    assert isinstance(report.error, DegenerateLink)
    assert report.exit_code == 2
    with pytest.raises(DegenerateLink):
        lambda_table(single_chamber(2))


def test_low_dimension_refused():
    report = run_criterion(single_chamber(1))
    assert isinstance(report.error, DimensionTooLow)
    assert report.exit_code == 2


def test_disconnected_complex_refused():
    X = build_complex(
        2,
        [("a", 0), ("b", 1), ("c", 2), ("d", 0), ("e", 1), ("f", 2)],
        [("a", "b", "c"), ("d", "e", "f")],
    )
    report = run_criterion(X)
    assert isinstance(report.error, NotGalleryConnected)


def test_report_deterministic():
    a = dumps(run_criterion(link_family("a2_tilde_q2"), seed=3).to_dict())
    b = dumps(run_criterion(link_family("a2_tilde_q2"), seed=3).to_dict())
    assert a == b


def test_parallel_table_matches_serial():
    X = octahedron()
    par, ser = lambda_table(X, jobs=4), lambda_table(X, jobs=1)
    assert par.entries == ser.entries
    for a, b in zip(par.links, ser.links):
        assert a.link_id == b.link_id
        assert np.array_equal(a.spectrum.eigenvalues, b.spectrum.eigenvalues)


tables = st.integers(2, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.floats(0.0, 1.0), min_size=(n + 1) * n // 2,
                                             max_size=(n + 1) * n // 2))
)


@settings(max_examples=80, deadline=None)
@given(tables, st.integers(0, 9), st.floats(0.0, 0.5))
def test_lambda_x_bounded_and_monotone(data, k, bump):
    n, values = data
    _, lam, _ = build_and_analyze_A(table_from_values(n, values), n)
    assert lam <= 1 + 1e-12
    raised = list(values)
    raised[k % len(raised)] += bump
    _, lam_raised, _ = build_and_analyze_A(table_from_values(n, raised), n)
    assert lam_raised <= lam + 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6), st.floats(0.0, 1.0))
def test_uniform_lambda_x(n, lam):
    _, lam_x, _ = build_and_analyze_A(uniform_table(n, lam), n)
    assert lam_x == pytest.approx(1 - n * lam, abs=1e-12)
