"""Command line interface.

Three subcommands share one problem-file format:

* ``gram``    print the Gram matrix, the measure relations, the exact
              pseudo-inverse, and (with a goal matrix) the margin bound.
* ``solve``   decide a sign pattern and/or construct an explicit
              partition realizing ``P + delta K``.
* ``verify``  audit a partition file against a problem file.

Exit codes are stable: 0 success, 1 infeasible or a failed audit,
2 invalid input, 3 internal error.
"""

from __future__ import annotations

import argparse
import sys
import traceback
from fractions import Fraction

from .hyperfree import (
    UNBOUNDED,
    UNCONSTRAINED,
    DEFAULT_TOL,
    DeltaTooLargeError,
    GoalMatrix,
    ImproperMatrixError,
    TargetPoint,
    delta_bound,
    spectral_delta_bound,
)
from .linalg import RatMatrix, fmt, kernel_basis, pseudo_inverse, rat
from .measures import common_refinement, gram_matrix
from .partition import MAXIMIZE, InfeasibleError, PartitionError, build_from_weights, solve_alpha
from .problem_io import (
    Problem,
    ProblemFormatError,
    load_partition,
    load_problem,
    matrix_to_strings,
    serialize_partition,
    serialize_problem,
    vector_to_strings,
    write_json,
)
from .relations import solve_relations
from .verify import FairnessReport, check_fairness, sharing_matrix

EXIT_OK = 0
EXIT_INFEASIBLE = 1
EXIT_INVALID = 2
EXIT_INTERNAL = 3


def _print_matrix(title: str, m: RatMatrix) -> None:
    print(f"{title}:")
    for line in str(m).splitlines():
        print(f"  {line}")


def _fairness_dict(report: FairnessReport) -> dict:
    def margin(x):
        if x is None:
            return None
        if x is UNCONSTRAINED:
            return "unconstrained"
        return fmt(x)

    return {
        "proportional": report.proportional,
        "exact_division": report.exact_division,
        "equitable": report.equitable,
        "envy_free": report.envy_free,
        "super_envy_free": report.super_envy_free,
        "hyper_envy_free": report.hyper_envy_free,
        "hyper_delta": margin(report.hyper_delta),
        "relation_satisfied": report.relation_satisfied,
        "rawlsian_distance": fmt(report.rawlsian),
    }


def _analysis(problem: Problem, tol: Fraction) -> tuple[dict, dict]:
    """Shared first stage: profile, Gram data, and bound block."""
    profile = common_refinement(problem.densities)
    g = gram_matrix(profile)
    relations = kernel_basis(g)
    g_plus = pseudo_inverse(g)
    p = problem.p if problem.p is not None else TargetPoint.uniform(problem.n)

    report: dict = {
        "inputs": serialize_problem(problem),
        "atoms": [[fmt(iv.lo), fmt(iv.hi)] for iv in profile.atoms],
        "gram": matrix_to_strings(g),
        "kernel_basis": [vector_to_strings(v) for v in relations],
        "pseudo_inverse": matrix_to_strings(g_plus),
        "pinv_times_k": None,
        "delta_bound": None,
        "spectral_bound": None,
    }
    if problem.k is not None:
        gk = g_plus @ problem.k.mat
        report["pinv_times_k"] = matrix_to_strings(gk)
        bound = delta_bound(g_plus, problem.k, p)
        report["delta_bound"] = "unbounded" if bound is UNBOUNDED else fmt(bound)
        if not relations and not problem.k.is_zero():
            lo, hi = spectral_delta_bound(g, problem.k, p, tol)
            report["spectral_bound"] = [fmt(lo), fmt(hi)]
    state = {"profile": profile, "g": g, "relations": relations, "g_plus": g_plus, "p": p}
    return report, state


def cmd_gram(args: argparse.Namespace) -> int:
    problem = load_problem(args.input)
    tol = rat(args.tol)
    report, state = _analysis(problem, tol)

    _print_matrix("Gram matrix", state["g"])
    if state["relations"]:
        print("Measure relations (kernel basis):")
        for v in state["relations"]:
            print("  (" + ", ".join(fmt(x) for x in v) + ")")
    else:
        print("Measure relations: none (independent measures)")
    _print_matrix("Pseudo-inverse", state["g_plus"])
    if problem.k is not None:
        _print_matrix("Pseudo-inverse times goal matrix", state["g_plus"] @ problem.k.mat)
        print(f"Margin bound: {report['delta_bound']}")
        if report["spectral_bound"] is not None:
            lo, hi = report["spectral_bound"]
            print(f"Spectral margin bound: [{lo}, {hi}]")
    if args.output:
        write_json(args.output, report)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    problem = load_problem(args.input)
    tol = rat(args.tol)
    report, state = _analysis(problem, tol)
    profile, relations, p = state["profile"], state["relations"], state["p"]

    k = problem.k
    if problem.r is not None:
        solution = solve_relations(problem.r, relations)
        if not solution.feasible:
            report["feasibility"] = {"status": "infeasible", "margin": None, "k": None}
            print("Sign pattern: infeasible (no proper goal matrix matches)")
            if args.output:
                write_json(args.output, report)
            return EXIT_INFEASIBLE
        margin = solution.margin
        report["feasibility"] = {
            "status": "feasible",
            "margin": "unconstrained" if margin is UNCONSTRAINED else fmt(margin),
            "k": matrix_to_strings(solution.k.mat),
        }
        print(f"Sign pattern: feasible (slack {report['feasibility']['margin']})")
        _print_matrix("Witness goal matrix", solution.k.mat)
        k = solution.k
    elif k is None:
        print("Problem file has neither a goal matrix nor a sign pattern; analysis only.")
        if args.output:
            write_json(args.output, report)
        return EXIT_OK

    if problem.k is not None and problem.r is None:
        gk = state["g_plus"] @ k.mat
        report["pinv_times_k"] = matrix_to_strings(gk)

    delta_req = problem.delta if problem.delta is not None else MAXIMIZE
    try:
        weights, achieved = solve_alpha(profile, k, p, delta_req)
    except InfeasibleError as exc:
        report["delta"] = None
        print(f"Construction: infeasible ({exc})")
        if args.output:
            write_json(args.output, report)
        return EXIT_INFEASIBLE

    part = build_from_weights(profile, weights)
    shares = sharing_matrix(profile, part)
    fairness = check_fairness(shares, k=k, p=p, r=problem.r)

    report["delta"] = "unconstrained" if achieved is UNCONSTRAINED else fmt(achieved)
    report["weight_system"] = [vector_to_strings(row) for row in weights.weights]
    report["partition"] = serialize_partition(part)["intervals"]
    report["sharing_matrix"] = matrix_to_strings(shares.mat)
    report["fairness"] = _fairness_dict(fairness)

    print(f"Margin delta: {report['delta']}")
    print("Partition:")
    for j, pieces in enumerate(part.pieces):
        spans = " ".join(f"[{fmt(iv.lo)}, {fmt(iv.hi)}]" for iv in pieces) or "(nothing)"
        print(f"  player {j}: {spans}")
    _print_matrix("Sharing matrix", shares.mat)
    print(f"Rawlsian distance: {fmt(fairness.rawlsian)}")
    if args.output:
        write_json(args.output, report)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    problem = load_problem(args.input)
    part = load_partition(args.partition)
    profile = common_refinement(problem.densities)
    p = problem.p if problem.p is not None else TargetPoint.uniform(problem.n)

    shares = sharing_matrix(profile, part)
    fairness = check_fairness(shares, k=problem.k, p=p, r=problem.r)

    _print_matrix("Sharing matrix", shares.mat)
    report = {
        "inputs": serialize_problem(problem),
        "partition": serialize_partition(part)["intervals"],
        "sharing_matrix": matrix_to_strings(shares.mat),
        "fairness": _fairness_dict(fairness),
    }
    for key, value in report["fairness"].items():
        print(f"  {key}: {value}")
    if args.output:
        write_json(args.output, report)

    failed = []
    if problem.k is not None and fairness.hyper_envy_free is not True:
        failed.append("hyper_envy_free")
    if problem.r is not None and fairness.relation_satisfied is not True:
        failed.append("relation_satisfied")
    if failed:
        print(f"FAILED: {', '.join(failed)}")
        return EXIT_INFEASIBLE
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperfair",
        description="Exact construction and audit of sign-constrained fair divisions of [0, 1].",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "gram": ("Gram matrix, measure relations, pseudo-inverse, margin bounds", cmd_gram, False),
        "solve": ("decide a sign pattern and build an explicit partition", cmd_solve, False),
        "verify": ("audit a partition file against a problem file", cmd_verify, True),
    }
    for name, (help_text, func, needs_partition) in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, help="problem file (JSON)")
        p.add_argument("--output", help="write the full report here (JSON)")
        p.add_argument("--tol", default=str(DEFAULT_TOL),
                       help="enclosure width for eigenvalue bounds (exact rational)")
        if needs_partition:
            p.add_argument("--partition", required=True, help="partition file (JSON)")
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ProblemFormatError, PartitionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ValueError, ImproperMatrixError, DeltaTooLargeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except Exception:
        traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
