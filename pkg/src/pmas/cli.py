"""Command-line interface over edge-list files, with stable JSON output.

Exit codes: 0 for a positive result, 1 for a negative mathematical verdict
(not population monotonic, verification failed, infeasible, scanner hits,
harness disagreements), 2 for usage or input errors. Output JSON is
canonical: sorted keys, sorted member lists, fractions in lowest terms.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certificates import (
    DoubleStarWitness,
    ForbiddenSubgraph,
    LemmaViolation,
    PmDecision,
    StructuralFailure,
)
from .characterization import (
    decide_population_monotonic,
    scan_forbidden_subgraphs,
    scan_weight_lemmas,
)
from .errors import NotPopulationMonotonicError, PmasError
from .graph import WeightedGraph, parse_graph
from .matching import characteristic_value
from .oracle import equivalence_harness, pmas_feasibility
from .rational import format_rational
from .schemes import (
    construct_scheme,
    scheme_from_json,
    scheme_to_json,
    verify_scheme,
)

OK = 0
VIOLATION = 1
ERROR = 2


def entrypoint() -> None:  # pragma: no cover - thin console-script wrapper
    sys.exit(main())


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help; pass either through
        return exc.code if isinstance(exc.code, int) else ERROR
    try:
        code, payload = args.handler(args)
    except PmasError as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return ERROR
    except OSError as exc:
        print(json.dumps({"error": str(exc)}, sort_keys=True), file=sys.stderr)
        return ERROR
    if payload is not None:
        print(_canonical_json(payload))
    return code


def _canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pmas",
        description="Decide, certify and construct population monotonic "
        "allocation schemes for matching games.",
    )
    parser.add_argument(
        "--threads",
        type=int,
        default=1,
        metavar="N",
        help="upper bound on internal parallelism (the current implementation "
        "is single-threaded, which satisfies any bound)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide population monotonicity")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("gamma", help="worth of one coalition")
    p.add_argument("file")
    p.add_argument("--coalition", required=True, metavar="a,b,c")
    p.set_defaults(handler=_cmd_gamma)

    p = sub.add_parser("pmas", help="materialize a full allocation scheme")
    p.add_argument("file")
    p.add_argument("--out", metavar="SCHEME.json")
    p.set_defaults(handler=_cmd_pmas)

    p = sub.add_parser("allocate", help="one scheme row (lazy, any size)")
    p.add_argument("file")
    p.add_argument("--coalition", required=True, metavar="a,b,c")
    p.set_defaults(handler=_cmd_allocate)

    p = sub.add_parser("verify", help="check a scheme file against the game")
    p.add_argument("file")
    p.add_argument("--scheme", required=True, metavar="SCHEME.json")
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("scan", help="violated lemmas and forbidden subgraphs")
    p.add_argument("file")
    p.add_argument("--first", action="store_true", help="one hit per pattern")
    p.set_defaults(handler=_cmd_scan)

    p = sub.add_parser("oracle", help="exact PMAS feasibility (small graphs)")
    p.add_argument("file")
    p.set_defaults(handler=_cmd_oracle)

    p = sub.add_parser("harness", help="cross-validate decision against oracle")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(handler=_cmd_harness)

    return parser


def _load_graph(path: str) -> WeightedGraph:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_graph(handle.read())


def _parse_coalition(g: WeightedGraph, text: str):
    labels = [token for token in text.split(",") if token]
    return g.coalition(labels)


# ---------------------------------------------------------------------------
# JSON views
# ---------------------------------------------------------------------------

def _witness_json(g: WeightedGraph, witness: DoubleStarWitness) -> dict:
    return {
        "component": g.sorted_labels(witness.component),
        "centers": sorted(g.label_of(c) for c in witness.centers),
        "leaf_attachment": {
            g.label_of(leaf): sorted(g.label_of(c) for c in centers)
            for leaf, centers in witness.leaf_attachment.items()
        },
        "sigma_u": format_rational(witness.sigma_u),
        "sigma_v": format_rational(witness.sigma_v),
        "margin": format_rational(witness.margin),
    }


def _certificate_json(g: WeightedGraph, certificate) -> dict:
    if isinstance(certificate, LemmaViolation):
        return {
            "type": "lemma_violation",
            "kind": certificate.lemma.value,
            "vertices": [g.label_of(v) for v in certificate.vertices],
            "lhs": format_rational(certificate.lhs),
            "rhs": format_rational(certificate.rhs),
        }
    if isinstance(certificate, ForbiddenSubgraph):
        return {
            "type": "forbidden_subgraph",
            "kind": certificate.kind.value,
            "vertices": g.sorted_labels(certificate.vertices),
        }
    assert isinstance(certificate, StructuralFailure)
    return {
        "type": "structural",
        "kind": "structural",
        "component": g.sorted_labels(certificate.component),
        "reason": certificate.reason,
        "detail": certificate.detail,
    }


def _decision_json(g: WeightedGraph, decision: PmDecision) -> dict:
    if decision.population_monotonic:
        return {
            "population_monotonic": True,
            "witnesses": [_witness_json(g, w) for w in decision.witnesses],
        }
    return {
        "population_monotonic": False,
        "certificate": _certificate_json(g, decision.certificate),
    }


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_check(args) -> tuple[int, dict]:
    g = _load_graph(args.file)
    decision = decide_population_monotonic(g)
    return (OK if decision.population_monotonic else VIOLATION), _decision_json(g, decision)


def _cmd_gamma(args) -> tuple[int, dict]:
    g = _load_graph(args.file)
    s = _parse_coalition(g, args.coalition)
    return OK, {"gamma": format_rational(characteristic_value(g, s))}


def _cmd_pmas(args) -> tuple[int, dict]:
    g = _load_graph(args.file)
    try:
        scheme = construct_scheme(g, mode="materialized")
    except NotPopulationMonotonicError as exc:
        return VIOLATION, _decision_json(g, exc.decision)
    payload = scheme_to_json(scheme)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(_canonical_json(payload) + "\n")
    return OK, payload


def _cmd_allocate(args) -> tuple[int, dict]:
    g = _load_graph(args.file)
    s = _parse_coalition(g, args.coalition)
    try:
        scheme = construct_scheme(g, mode="lazy")
    except NotPopulationMonotonicError as exc:
        return VIOLATION, _decision_json(g, exc.decision)
    row = scheme.allocation(s)
    return OK, {
        "coalition": g.sorted_labels(s),
        "payoff": {g.label_of(i): format_rational(x) for i, x in row.payoff.items()},
    }


def _cmd_verify(args) -> tuple[int, dict]:
    g = _load_graph(args.file)
    with open(args.scheme, "r", encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as exc:
            raise PmasError(f"scheme file is not valid JSON: {exc}") from None
    scheme = scheme_from_json(g, doc)
    report = verify_scheme(g, scheme)
    if report.ok:
        return OK, {"ok": True}
    failure = report.failure
    payload = {
        "ok": False,
        "failure": {
            "kind": failure.kind,
            "coalition": g.sorted_labels(failure.coalition),
            "lhs": format_rational(failure.lhs),
            "rhs": format_rational(failure.rhs),
        },
    }
    if failure.superset is not None:
        payload["failure"]["superset"] = g.sorted_labels(failure.superset)
    if failure.player is not None:
        payload["failure"]["player"] = g.label_of(failure.player)
    return VIOLATION, payload


def _cmd_scan(args) -> tuple[int, dict]:
    g = _load_graph(args.file)
    violations = scan_weight_lemmas(g)
    patterns = scan_forbidden_subgraphs(g, first_only=args.first)
    if args.first and violations:
        seen: set = set()
        firsts = []
        for violation in violations:
            if violation.lemma not in seen:
                seen.add(violation.lemma)
                firsts.append(violation)
        violations = firsts
    payload = {
        "lemma_violations": [_certificate_json(g, v) for v in violations],
        "forbidden_subgraphs": [_certificate_json(g, p) for p in patterns],
    }
    code = VIOLATION if (violations or patterns) else OK
    return code, payload


def _cmd_oracle(args) -> tuple[int, dict]:
    g = _load_graph(args.file)
    feasible, scheme = pmas_feasibility(g)
    if not feasible:
        return VIOLATION, {"feasible": False}
    return OK, {"feasible": True, "scheme": scheme_to_json(scheme)}


def _cmd_harness(args) -> tuple[int, dict]:
    report = equivalence_harness(args.max_n, args.trials, args.seed)
    bad = report["exhaustive"]["disagreements"] + report["random"]["disagreements"]
    return (VIOLATION if bad else OK), report
