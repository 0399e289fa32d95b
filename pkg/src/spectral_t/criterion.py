"""The link-spectrum matrix A(X), its smallest eigenvalue and the Kazhdan constant.

Two input modes feed the same pipeline: a finite partite complex, whose
codimension-2 links are enumerated, or a family of link graphs labelled by
type pair, which stands for the orbit representatives of an infinite complex.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Mapping, Sequence, Union

import numpy as np

from . import formats
from .complex_core import (
    SimplicialComplex,
    ThicknessReport,
    codim2_links,
    gallery_connectivity,
    thickness_report,
)
from .errors import (
    DegenerateLink,
    DimensionTooLow,
    DisconnectedLink,
    FormatError,
    HypothesisError,
    IncompleteTable,
    NonPositiveLambda,
    NotBipartite,
    NotGalleryConnected,
)
from .hilbert_geometry import PD_TOL, POSITIVE_DEFINITE, classify_min_eigenvalue
from .spectra import MERGE_TOL, SpectrumResult, WeightedGraph, random_walk_spectrum

Pair = tuple[int, int]


def all_pairs(n: int) -> list[Pair]:
    return list(combinations(range(n + 1), 2))


@dataclass(frozen=True)
class LinkFamilyInput:
    """Link graphs tagged by the type pair {i, j} their base face is missing."""

    n: int
    entries: tuple[tuple[Pair, WeightedGraph], ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DimensionTooLow(f"link families need n >= 2, got {self.n}")
        canon = []
        for pair, graph in self.entries:
            i, j = sorted(pair)
            if i == j or not (0 <= i and j <= self.n):
                raise FormatError(f"bad type pair {list(pair)} for n = {self.n}")
            canon.append(((i, j), graph))
        object.__setattr__(self, "entries", tuple(canon))
        missing = sorted(set(all_pairs(self.n)) - {p for p, _ in canon})
        if missing:
            raise IncompleteTable(f"no link supplied for pairs {[list(p) for p in missing]}")

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "links": [{"pair": list(p), "graph": formats.graph_to_dict(g)} for p, g in self.entries],
        }

    @classmethod
    def from_dict(cls, payload: Any) -> LinkFamilyInput:
        if not isinstance(payload, dict) or not isinstance(payload.get("n"), int):
            raise FormatError("link family: missing integer field 'n'")
        links = payload.get("links")
        if not isinstance(links, list):
            raise FormatError("link family: missing list field 'links'")
        entries = []
        for item in links:
            pair = item.get("pair") if isinstance(item, dict) else None
            if not isinstance(pair, list) or len(pair) != 2 or not all(isinstance(t, int) for t in pair):
                raise FormatError("link family: each link needs 'pair': [i, j]")
            entries.append(((pair[0], pair[1]), formats.graph_from_dict(item.get("graph"))))
        return cls(payload["n"], tuple(entries))


CriterionInput = Union[SimplicialComplex, LinkFamilyInput]


@dataclass(frozen=True)
class LinkSpectrum:
    link_id: str
    pair: Pair
    spectrum: SpectrumResult


@dataclass(frozen=True)
class LambdaEntry:
    value: float
    witness: str


@dataclass(frozen=True)
class LambdaTable:
    n: int
    entries: dict[Pair, LambdaEntry]
    links: tuple[LinkSpectrum, ...] = ()

    def __getitem__(self, pair: Pair) -> LambdaEntry:
        return self.entries[tuple(sorted(pair))]

    def values(self) -> dict[Pair, float]:
        return {p: e.value for p, e in self.entries.items()}


@dataclass
class Hypotheses:
    partite: bool = True
    gallery_connected: bool | None = None
    links_connected: bool | None = None
    links_nondegenerate: bool | None = None
    thick: bool | None = None
    failure: HypothesisError | None = None

    def as_dict(self) -> dict[str, Any]:
        return {
            "partite": self.partite,
            "gallery_connected": self.gallery_connected,
            "links_connected": self.links_connected,
            "links_nondegenerate": self.links_nondegenerate,
            "thick": self.thick,
        }


def _candidate_links(source: CriterionInput) -> list[tuple[str, Pair, WeightedGraph]]:
    if isinstance(source, SimplicialComplex):
        return [(lg.link_id, lg.pair, lg.graph) for lg in codim2_links(source)]
    return [(f"links[{k}]", p, g) for k, (p, g) in enumerate(source.entries)]


def check_hypotheses(source: CriterionInput) -> Hypotheses:
    """Evaluate every hypothesis; ``failure`` holds the first violated one."""
    hyp = Hypotheses()
    failures: list[HypothesisError] = []
    if isinstance(source, SimplicialComplex):
        if source.n < 2:
            hyp.failure = DimensionTooLow(f"criterion needs n >= 2, got n = {source.n}")
            return hyp
        hyp.gallery_connected = gallery_connectivity(source, cap=0).connected
        hyp.thick = thickness_report(source).is_thick
        if not hyp.gallery_connected:
            failures.append(NotGalleryConnected("chamber graph is disconnected"))
    connected_all, nondegenerate_all = True, True
    for link_id, _, g in _candidate_links(source):
        if not g.is_connected:
            connected_all = False
            failures.append(DisconnectedLink(f"link {link_id} is disconnected"))
            continue
        sides = g.sides if g.sides is not None else g.find_bipartition()
        if sides is None:
            nondegenerate_all = False
            failures.append(NotBipartite(f"link {link_id} is not bipartite"))
            continue
        if min(len(sides[0]), len(sides[1])) < 2:
            nondegenerate_all = False
            failures.append(DegenerateLink(f"link {link_id} has a side with fewer than 2 vertices"))
    hyp.links_connected = connected_all
    hyp.links_nondegenerate = nondegenerate_all
    hyp.failure = failures[0] if failures else None
    return hyp


def lambda_table(source: CriterionInput, *, jobs: int = 1) -> LambdaTable:
    """Per type pair, the largest second walk eigenvalue among the matching links.

    Ties keep the first link in canonical order as the witness.

    Raises:
        DimensionTooLow, NotGalleryConnected, DisconnectedLink, DegenerateLink, NotBipartite.
    """
    hyp = check_hypotheses(source)
    if hyp.failure is not None:
        raise hyp.failure
    candidates = _candidate_links(source)
    graphs = [g for _, _, g in candidates]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            spectra = list(pool.map(random_walk_spectrum, graphs))
    else:
        spectra = [random_walk_spectrum(g) for g in graphs]

    links = tuple(LinkSpectrum(lid, pair, sp) for (lid, pair, _), sp in zip(candidates, spectra))
    best: dict[Pair, LambdaEntry] = {}
    for ls in links:
        current = best.get(ls.pair)
        if current is None or ls.spectrum.lambda_second > current.value:
            best[ls.pair] = LambdaEntry(ls.spectrum.lambda_second, ls.link_id)
    return LambdaTable(source.n, dict(sorted(best.items())), links)


def build_and_analyze_A(
    table: LambdaTable | Mapping[Pair, float], n: int
) -> tuple[np.ndarray, float, str]:
    """Assemble A(X) (unit diagonal, -lambda_ij off it); return (A, lambda_X, verdict)."""
    values = table.values() if isinstance(table, LambdaTable) else {tuple(sorted(p)): v for p, v in table.items()}
    missing = [p for p in all_pairs(n) if p not in values]
    if missing:
        raise IncompleteTable(f"lambda table lacks pairs {[list(p) for p in missing]}")
    A = np.eye(n + 1)
    for i, j in all_pairs(n):
        A[i, j] = A[j, i] = -float(values[(i, j)])
    lam = float(np.linalg.eigvalsh(A)[0])
    return A, lam, classify_min_eigenvalue(lam)


def kazhdan_epsilon(n: int, lambda_x: float) -> float:
    """epsilon = 1 / (2 (1 + sqrt((n + 1) / lambda_X)))."""
    if not lambda_x > 0:
        raise NonPositiveLambda(f"lambda_X must be positive, got {lambda_x!r}")
    return 1.0 / (2.0 * (1.0 + math.sqrt((n + 1) / lambda_x)))


@dataclass
class CriterionReport:
    mode: str
    n: int
    hypotheses: Hypotheses
    table: LambdaTable | None = None
    matrix: np.ndarray | None = None
    lambda_x: float | None = None
    verdict: str | None = None
    epsilon: float | None = None
    thickness: ThicknessReport | None = None
    error: HypothesisError | None = None
    provenance: dict[str, Any] = field(default_factory=dict)

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return self.error.exit_code
        return 0 if self.verdict == POSITIVE_DEFINITE else 1

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"schema": formats.REPORT_SCHEMA, "command": "check", "mode": self.mode, "n": self.n}
        out["hypotheses"] = self.hypotheses.as_dict()
        if self.thickness is not None:
            out["thickness"] = {
                "min_chambers_per_panel": self.thickness.min_chambers_per_panel,
                "max_chambers_per_panel": self.thickness.max_chambers_per_panel,
                "is_thick": self.thickness.is_thick,
            }
        if self.error is not None:
            out["error"] = {"code": self.error.code, "message": str(self.error)}
        if self.table is not None:
            out["lambda_table"] = [
                {"pair": list(p), "lambda": e.value, "witness": e.witness} for p, e in self.table.entries.items()
            ]
            out["links"] = [
                {
                    "id": ls.link_id,
                    "pair": list(ls.pair),
                    "lambda_second": ls.spectrum.lambda_second,
                    "spectrum": [[v, m] for v, m in ls.spectrum.merged(MERGE_TOL)],
                }
                for ls in self.table.links
            ]
        if self.matrix is not None:
            out["matrix"] = self.matrix
            out["lambda_x"] = self.lambda_x
            out["verdict"] = self.verdict
        if self.epsilon is not None:
            out["epsilon"] = self.epsilon
        out["provenance"] = self.provenance
        return out

    def render_text(self) -> str:
        lines = [f"mode: {self.mode}  n = {self.n}"]
        for key, value in self.hypotheses.as_dict().items():
            lines.append(f"  {key:22s} {value}")
        if self.thickness is not None:
            t = self.thickness
            lines.append(f"  chambers per panel     {t.min_chambers_per_panel}..{t.max_chambers_per_panel}")
        if self.error is not None:
            lines.append(f"error [{self.error.code}]: {self.error}")
            return "\n".join(lines) + "\n"
        assert self.table is not None and self.matrix is not None
        lines.append("lambda table:")
        for p, e in self.table.entries.items():
            lines.append(f"  {{{p[0]},{p[1]}}}  {e.value:.10f}  (witness {e.witness})")
        lines.append("A(X):")
        for row in self.matrix:
            lines.append("  " + "  ".join(f"{v:+.10f}" for v in row))
        lines.append(f"lambda_X = {self.lambda_x:.12g}")
        lines.append(f"verdict: {self.verdict}")
        if self.epsilon is not None:
            lines.append(f"epsilon = {self.epsilon:.12g}")
        return "\n".join(lines) + "\n"


def input_to_dict(source: CriterionInput) -> dict[str, Any]:
    if isinstance(source, SimplicialComplex):
        return formats.complex_to_dict(source)
    return source.to_dict()


def run_criterion(source: CriterionInput, *, seed: int = 0, jobs: int = 1) -> CriterionReport:
    """Hypothesis checks, lambda table, A(X) analysis and epsilon in one report.

    Hypothesis violations are reported (``error`` set, exit code 2) rather
    than raised; malformed input raises before this point.
    """
    mode = "complex" if isinstance(source, SimplicialComplex) else "link-family"
    provenance = {
        "input_sha256": formats.sha256_of(input_to_dict(source)),
        "seed": seed,
        "tolerances": {"pd": PD_TOL, "merge": MERGE_TOL},
    }
    hyp = check_hypotheses(source)
    report = CriterionReport(mode=mode, n=source.n, hypotheses=hyp, provenance=provenance)
    if isinstance(source, SimplicialComplex) and source.n >= 1:
        report.thickness = thickness_report(source)
    if hyp.failure is not None:
        report.error = hyp.failure
        return report
    report.table = lambda_table(source, jobs=jobs)
    report.matrix, report.lambda_x, report.verdict = build_and_analyze_A(report.table, source.n)
    if report.verdict == POSITIVE_DEFINITE:
        report.epsilon = kazhdan_epsilon(source.n, report.lambda_x)
    return report


def uniform_table(n: int, value: float) -> dict[Pair, float]:
    return {p: value for p in all_pairs(n)}


def table_from_values(n: int, values: Sequence[float]) -> dict[Pair, float]:
    pairs = all_pairs(n)
    if len(values) != len(pairs):
        raise IncompleteTable(f"expected {len(pairs)} values, got {len(values)}")
    return dict(zip(pairs, values))
