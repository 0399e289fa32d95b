"""Command-line front end.

Exit codes: 0 criterion holds / checks pass, 1 A(X) not positive definite or a
verification failed, 2 hypotheses violated, 3 input or usage error.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

import numpy as np

from . import formats
from . import generators as gen
from . import suites
from .criterion import LinkFamilyInput, build_and_analyze_A, lambda_table, run_criterion
from .equivariant import (
    build_equivariant_space,
    is_type_preserving,
    kazhdan_set,
    kazhdan_set_properties,
    load_action,
    phi_x_chain_check,
    random_unit_vectors,
    regular_representation,
    representation_from_generators,
    trivial_representation,
    type_permutation_kernel,
    vertex_permutation_representation,
    verify_angle_bounds,
    verify_intersect_lemma,
)
from .errors import NotTypePreserving, SpectralTError
from .spectra import random_walk_spectrum

SEED_ENV = "SPECTRAL_T_SEED"


class UsageError(SpectralTError):
    exit_code = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with status 2
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _emit(payload: dict[str, Any], fmt: str, text: str | None = None) -> None:
    if fmt == "json":
        sys.stdout.write(formats.dumps(payload))
    else:
        sys.stdout.write(text if text is not None else formats.dumps(payload))


def _provenance(args: argparse.Namespace, *inputs: Any) -> dict[str, Any]:
    out: dict[str, Any] = {"seed": args.seed, "jobs": args.jobs}
    if inputs:
        out["input_sha256"] = [formats.sha256_of(x) for x in inputs]
    return out


def cmd_check(args: argparse.Namespace) -> int:
    source = formats.complex_from_dict(formats.read_json(args.complex))
    report = run_criterion(source, seed=args.seed, jobs=args.jobs)
    _emit(report.to_dict(), args.format, report.render_text())
    return report.exit_code


def cmd_check_links(args: argparse.Namespace) -> int:
    source = LinkFamilyInput.from_dict(formats.read_json(args.links))
    report = run_criterion(source, seed=args.seed, jobs=args.jobs)
    _emit(report.to_dict(), args.format, report.render_text())
    return report.exit_code


def cmd_spectrum(args: argparse.Namespace) -> int:
    raw = formats.read_json(args.graph)
    g = formats.graph_from_dict(raw)
    spec = random_walk_spectrum(g)
    payload = {
        "schema": formats.REPORT_SCHEMA,
        "command": "spectrum",
        "vertices": len(g.vertices),
        "edges": len(g.edges),
        "connected": spec.connected,
        "bipartite": spec.bipartite,
        "degenerate": spec.degenerate,
        "eigenvalues": spec.eigenvalues,
        "lambda_second": spec.lambda_second,
        "provenance": _provenance(args, raw),
    }
    text = (f"{len(g.vertices)} vertices, {len(g.edges)} edges, connected={spec.connected}, "
            f"bipartite={spec.bipartite}\n")
    text += "".join(f"  {v:+.12f}  x{m}\n" for v, m in spec.merged())
    text += f"lambda_second = {spec.lambda_second:.12g}\n"
    _emit(payload, args.format, text)
    return 0


def _suite_payload(args: argparse.Namespace, results: Sequence[suites.SuiteResult]) -> dict[str, Any]:
    return {
        "schema": formats.REPORT_SCHEMA,
        "command": args.command,
        "suites": [r.to_dict() for r in results],
        "passed": all(r.passed for r in results),
        "provenance": _provenance(args),
    }


def _suite_text(results: Sequence[suites.SuiteResult]) -> str:
    return "".join(
        f"{'PASS' if r.passed else 'FAIL'}  {r.name:24s} {r.instances} instances, {r.failures} failures\n"
        for r in results
    )


def cmd_angles_selftest(args: argparse.Namespace) -> int:
    results = [suites.kassabov_suite(args.instances, seed=args.seed)]
    _emit(_suite_payload(args, results), args.format, _suite_text(results))
    return 0 if results[0].passed else 1


def cmd_selftest(args: argparse.Namespace) -> int:
    results = [
        suites.kassabov_suite(seed=args.seed),
        suites.contraction_suite(seed=args.seed),
        suites.bipartite_facts_suite(seed=args.seed),
        suites.octahedron_equivariant_suite(seed=args.seed),
    ]
    _emit(_suite_payload(args, results), args.format, _suite_text(results))
    return 0 if all(r.passed for r in results) else 1


def verify_action_report(X, generators, rep_kind: str, rep_file: str | None,
                         use_kernel: bool, samples: int, seed: int) -> dict[str, Any]:
    action = load_action(X, generators)
    payload: dict[str, Any] = {"schema": formats.REPORT_SCHEMA, "command": "verify-action",
                               "group_order": action.order}
    if not is_type_preserving(action):
        if not use_kernel:
            raise NotTypePreserving("action permutes types; rerun with --kernel to use the type-preserving subgroup")
        kern = type_permutation_kernel(action)
        action = kern.kernel
        payload["kernel_index"] = kern.index
        payload["kernel_order"] = action.order
    if rep_kind == "regular":
        rep = regular_representation(action)
    elif rep_kind == "vertex":
        rep = vertex_permutation_representation(action)
    elif rep_kind == "trivial":
        rep = trivial_representation(action)
    else:
        if rep_file is None:
            raise UsageError("--rep file needs --rep-file PATH")
        mats = formats.matrices_from_dict(formats.read_json(rep_file))
        if use_kernel and "kernel_index" in payload:
            raise UsageError("explicit representations are given on the original generators; --kernel is unsupported")
        rep = representation_from_generators(action, mats, seed=seed)

    space = build_equivariant_space(X, action, rep)
    table = lambda_table(X)
    _, lam_x, _ = build_and_analyze_A(table, X.n)
    lemma = verify_intersect_lemma(space)
    angles = verify_angle_bounds(space, table)
    symmetric, generating = kazhdan_set_properties(space)
    chains = [phi_x_chain_check(space, x, lambda_x=lam_x)
              for x in random_unit_vectors(rep.dim, samples, seed)]
    payload.update({
        "representation": {"kind": rep.kind, "dim": rep.dim},
        "space": {
            "dim": space.dim,
            "fundamental_domain": [list(s) for s in space.fundamental_domain],
            "stabilizer_orders": [len(s) for s in space.stabilizers],
        },
        "intersect_lemma": {
            "dim_intersection": lemma.dim_intersection,
            "dim_invariant": lemma.dim_invariant,
            "residuals": [lemma.residual_constants_in_intersection, lemma.residual_intersection_in_constants],
            "match": lemma.match,
        },
        "angle_bounds": {
            "cosine_matrix": angles.cosines.matrix,
            "lambda_min_pi": angles.cosines.lambda_min,
            "lambda_x": angles.lambda_x,
            "entrywise_ok": angles.entrywise_ok,
            "eigen_ok": angles.eigen_ok,
        },
        "kazhdan_set": {"size": len(kazhdan_set(space)), "symmetric": symmetric, "generating": generating},
        "chain": {
            "samples": samples,
            "seed": seed,
            "max_epsilon_prime": max((c.epsilon_prime for c in chains), default=0.0),
            "a_holds": sum(c.a_ok for c in chains),
            "b_holds": sum(c.b_ok for c in chains),
            "c_holds": sum(c.c_ok is True for c in chains),
            "c_evaluated": sum(c.c_ok is not None for c in chains),
        },
    })
    payload["passed"] = bool(lemma.match and angles.entrywise_ok and angles.eigen_ok and symmetric
                             and generating and all(c.holds for c in chains))
    return payload


def cmd_verify_action(args: argparse.Namespace) -> int:
    raw_complex, raw_action = formats.read_json(args.complex), formats.read_json(args.action)
    X = formats.complex_from_dict(raw_complex)
    generators = formats.action_from_dict(raw_action)
    payload = verify_action_report(X, generators, args.rep, args.rep_file, args.kernel, args.samples, args.seed)
    payload["provenance"] = _provenance(args, raw_complex, raw_action)
    text = (
        f"group order {payload['group_order']}, space dim {payload['space']['dim']}\n"
        f"type-subspace intersection equals invariant constants: {payload['intersect_lemma']['match']}\n"
        f"angle bounds: entrywise {payload['angle_bounds']['entrywise_ok']}, "
        f"eigenvalue {payload['angle_bounds']['eigen_ok']}\n"
        f"Kazhdan set symmetric {payload['kazhdan_set']['symmetric']}, "
        f"generating {payload['kazhdan_set']['generating']}\n"
        f"chain checks over {payload['chain']['samples']} samples: (a) {payload['chain']['a_holds']}, "
        f"(b) {payload['chain']['b_holds']}, (c) {payload['chain']['c_holds']}\n"
        f"{'PASS' if payload['passed'] else 'FAIL'}\n"
    )
    _emit(payload, args.format, text)
    return 0 if payload["passed"] else 1


GENERATE: dict[str, Callable[[argparse.Namespace], Any]] = {
    "octahedron": lambda a: formats.complex_to_dict(gen.octahedron()),
    "complete-multipartite": lambda a: formats.complex_to_dict(gen.complete_multipartite(a.sizes or [2, 2, 2])),
    "random-complex": lambda a: formats.complex_to_dict(
        gen.random_partite_complex(len(a.sizes or [4, 4, 4]) - 1, a.sizes or [4, 4, 4], a.density, a.seed)),
    "pg2": lambda a: formats.graph_to_dict(gen.pg2_incidence(a.q)),
    "heawood": lambda a: formats.graph_to_dict(gen.heawood()),
    "cycle": lambda a: formats.graph_to_dict(gen.cycle(a.length)),
    "complete-bipartite": lambda a: formats.graph_to_dict(gen.complete_bipartite(*(a.sizes or [3, 3])[:2])),
    "link-family": lambda a: gen.link_family(a.name).to_dict(),
    "part-swaps": lambda a: formats.action_to_dict(gen.part_swaps(a.sizes or [2, 2, 2])),
    "part-rotation": lambda a: formats.action_to_dict([gen.part_rotation(a.sizes or [2, 2, 2])]),
}


def cmd_generate(args: argparse.Namespace) -> int:
    payload = GENERATE[args.family](args)
    text = formats.dumps(payload)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    default_seed = int(os.environ.get(SEED_ENV, "0"))
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=default_seed)
    common.add_argument("--jobs", type=int, default=1, help="threads for link spectra")

    parser = _Parser(prog="spectral-t", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", parents=[common], help="full criterion on a complex")
    p.add_argument("complex")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("check-links", parents=[common], help="criterion on a link family")
    p.add_argument("links")
    p.set_defaults(func=cmd_check_links)

    p = sub.add_parser("spectrum", parents=[common], help="random-walk spectrum of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("angles-selftest", parents=[common], help="random Kassabov-inequality suite")
    p.add_argument("--instances", type=int, default=1000)
    p.set_defaults(func=cmd_angles_selftest)

    p = sub.add_parser("verify-action", parents=[common], help="equivariant checks for a group action")
    p.add_argument("complex")
    p.add_argument("action")
    p.add_argument("--rep", choices=("regular", "vertex", "trivial", "file"), default="regular")
    p.add_argument("--rep-file")
    p.add_argument("--kernel", action="store_true", help="pass to the type-preserving subgroup first")
    p.add_argument("--samples", type=int, default=50)
    p.set_defaults(func=cmd_verify_action)

    p = sub.add_parser("generate", parents=[common], help="write an example input file")
    p.add_argument("family", choices=sorted(GENERATE))
    p.add_argument("--sizes", type=_int_list)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--length", type=int, default=6)
    p.add_argument("--name", default="a2_tilde_q2")
    p.add_argument("--density", type=float, default=0.6)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("selftest", parents=[common], help="all property suites")
    p.set_defaults(func=cmd_selftest)
    return parser


def _peek(argv: Sequence[str]) -> tuple[str | None, str]:
    """Subcommand and output format, read before full parsing so usage errors can still honour --format."""
    command = next((a for a in argv if not a.startswith("-")), None)
    fmt = "text"
    for k, a in enumerate(argv):
        if a == "--format" and k + 1 < len(argv):
            fmt = argv[k + 1]
        elif a.startswith("--format="):
            fmt = a.split("=", 1)[1]
    return command, fmt


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    command, fmt = _peek(argv)
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except SpectralTError as exc:
        if fmt == "json":
            payload = {"schema": formats.REPORT_SCHEMA, "command": command,
                       "error": {"code": exc.code, "message": str(exc)}}
            sys.stdout.write(formats.dumps(payload))
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
