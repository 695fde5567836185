"""Command-line harness: scenario reports, seeded fuzzing, construction.

Exit codes follow a CI-friendly contract: 0 when every check passes,
1 when some verified inequality or expectation fails, 2 on input
errors.  The equality tolerance can be overridden per invocation with
``--tol`` or globally with the ``GSSF_TOL`` environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import jsonschema

from .ambient import canonical_model, validate_f_structure
from .config import DEFAULT
from .errors import GssfError
from .generators import GeneratorConfig, random_instance
from .inequalities import delta_bound, ricci_bound
from .jsonutil import dumps
from .scenario import assemble, build_report, load_scenario, run_checks, validate_scenario
from .submanifold import scalar_identity_check

_CONSTRAINT_CHOICES = ("none", "minimal", "c_compatible", "minimal_and_c_compatible")


def _resolve_tol(args) -> float:
    if getattr(args, "tol", None) is not None:
        return float(args.tol)
    env = os.environ.get("GSSF_TOL")
    if env is not None:
        return float(env)
    return DEFAULT.equality


def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _input_error(name: str, message: str) -> int:
    line = json.dumps({"error": name, "detail": " ".join(str(message).split())})
    print(line, file=sys.stderr)
    return 2


def _cmd_report(args) -> int:
    tol_eq = _resolve_tol(args)
    data = load_scenario(args.scenario)
    point, checks, echo = assemble(data)
    records, summary = run_checks(point, checks, tol_eq)
    _emit(dumps(build_report(echo, records, summary, tol_eq)), args.out)
    return 0 if summary["fail_count"] == 0 else 1


def _cmd_fuzz(args) -> int:
    if args.count < 1:
        return _input_error("BadConfig", "--count must be at least 1")
    try:
        lo, hi = (int(part) for part in args.n_range.split(".."))
    except ValueError:
        return _input_error("BadConfig", "--n-range must look like 'a..b'")
    if not 1 <= lo <= hi:
        return _input_error("BadConfig", "--n-range must satisfy 1 <= a <= b")
    tol_eq = _resolve_tol(args)

    worst_slack = None
    worst_slack_info = None
    worst_ident = 0.0
    worst_ident_seed = None
    violations = []
    checks_run = 0

    def track_slack(value: float, seed: int, check: str):
        nonlocal worst_slack, worst_slack_info
        if worst_slack is None or value < worst_slack:
            worst_slack = value
            worst_slack_info = {"seed": seed, "check": check}
        if value < -tol_eq:
            violations.append({"seed": seed, "check": check, "slack": value})

    for trial in range(args.count):
        n = lo + trial % (hi - lo + 1)
        m = n + trial % 2
        seed = args.seed + trial
        config = GeneratorConfig(seed=seed, n=n, m=m, constraint=args.constraint)
        point = random_instance(config)

        identity = scalar_identity_check(point)
        rel = identity.abs_diff / max(1.0, abs(identity.lhs), abs(identity.rhs))
        checks_run += 1
        if rel > worst_ident:
            worst_ident = rel
            worst_ident_seed = seed
        if rel > tol_eq:
            violations.append({"seed": seed, "check": "scalar_identity", "slack": -rel})

        for i in range(n):
            report = ricci_bound(point, point.tangent.matrix[i], "general")
            checks_run += 1
            track_slack(report.slack, seed, f"ricci_bound[general,u={i + 1}]")
        for i in range(n):
            for j in range(i + 1, n):
                report = delta_bound(point, point.tangent.matrix[i],
                                     point.tangent.matrix[j])
                checks_run += 1
                track_slack(report.slack, seed, f"delta_bound[{i + 1},{j + 1}]")

    report = {
        "tool": "gssf",
        "command": "fuzz",
        "seed": args.seed,
        "count": args.count,
        "n_range": [lo, hi],
        "constraint": args.constraint,
        "tolerance": tol_eq,
        "summary": {
            "trials": args.count,
            "checks_run": checks_run,
            "violation_count": len(violations),
            "worst_slack": worst_slack,
            "worst_slack_at": worst_slack_info,
            "worst_identity_rel_diff": worst_ident,
            "worst_identity_seed": worst_ident_seed,
        },
        "violations": violations,
    }
    _emit(dumps(report), args.out)
    return 0 if not violations else 1


def _parse_form(text: str) -> tuple[float, float, float]:
    parts = [p for p in text.split(",") if p.strip()]
    if len(parts) != 3:
        raise GssfError("--form must be 'a,b,c'")
    a, b, c = (float(p) for p in parts)
    return a, b, c


def _parse_pairs(text: str) -> list[tuple[float, float]]:
    if not text.strip():
        return []
    pairs = []
    for chunk in text.split(";"):
        parts = [p for p in chunk.split(",") if p.strip()]
        if len(parts) != 2:
            raise GssfError("--pairs must look like 'a1,b1;a2,b2'")
        pairs.append((float(parts[0]), float(parts[1])))
    return pairs


def _cmd_construct(args) -> int:
    a, b, c = _parse_form(args.form)
    pairs = _parse_pairs(args.pairs)
    n, m = args.n, args.m
    if n < 2:
        return _input_error("BadShape", "the equality plane needs n >= 2")
    if m < n:
        return _input_error("BadShape", "the anti-invariant frame needs m >= n")
    rank = 2 * m - n
    if rank < 1 + len(pairs):
        return _input_error(
            "BadShape",
            f"need normal rank >= {1 + len(pairs)}, model provides {rank}",
        )

    coeffs = [[1, 1, 1, a], [1, 1, 2, b], [1, 2, 2, c - a]]
    coeffs += [[1, i, i, c] for i in range(3, n + 3)]
    for p, (ar, br) in enumerate(pairs, start=2):
        coeffs += [[p, 1, 1, ar], [p, 1, 2, br], [p, 2, 2, -ar]]

    scenario = {
        "ambient": {"m": m},
        "structure": {"preset": "s_space_form", "c": 2.0},
        "frame": {"mode": "anti_invariant", "n": n},
        "sigma": {"coeffs": coeffs},
        "checks": [
            {"name": "delta_bound", "plane": [1, 2], "expect": {"equality": True}},
            {"name": "scalar_identity"},
        ],
    }
    validate_scenario(scenario)
    assemble(scenario)  # fail fast on anything the schema cannot see
    _emit(dumps(scenario), args.out)
    return 0


def _cmd_validate(args) -> int:
    data = load_scenario(args.scenario)
    model = canonical_model(data["ambient"]["m"])
    violations = validate_f_structure(model)
    report = {
        "tool": "gssf",
        "command": "validate",
        "m": model.m,
        "violations": [
            {"check": v.check, "magnitude": v.magnitude} for v in violations
        ],
    }
    _emit(dumps(report), args.out)
    return 0 if not violations else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gssf",
        description="Verify curvature bounds for submanifold points "
                    "described by JSON scenarios.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="run the checks of a scenario file")
    rep.add_argument("scenario")
    rep.add_argument("--out", default=None, help="report path (default: stdout)")
    rep.add_argument("--tol", type=float, default=None)
    rep.set_defaults(func=_cmd_report)

    fuzz = sub.add_parser("fuzz", help="random instances against the bound oracles")
    fuzz.add_argument("--seed", type=int, default=0)
    fuzz.add_argument("--count", type=int, required=True)
    fuzz.add_argument("--n-range", default="1..5")
    fuzz.add_argument("--constraint", choices=_CONSTRAINT_CHOICES, default="none")
    fuzz.add_argument("--out", default=None)
    fuzz.add_argument("--tol", type=float, default=None)
    fuzz.set_defaults(func=_cmd_fuzz)

    con = sub.add_parser("construct", help="emit an equality-case scenario")
    con.add_argument("--form", required=True, help="'a,b,c'")
    con.add_argument("--pairs", default="", help="'a1,b1;a2,b2' for further normals")
    con.add_argument("--n", type=int, required=True)
    con.add_argument("--m", type=int, required=True)
    con.add_argument("--out", default=None)
    con.set_defaults(func=_cmd_construct)

    val = sub.add_parser("validate", help="check the ambient structure axioms")
    val.add_argument("scenario")
    val.add_argument("--out", default=None)
    val.set_defaults(func=_cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GssfError as exc:
        return _input_error(type(exc).__name__, str(exc))
    except jsonschema.ValidationError as exc:
        return _input_error("SchemaViolation", exc.message)
    except json.JSONDecodeError as exc:
        return _input_error("InvalidJson", str(exc))
    except OSError as exc:
        return _input_error("IoError", str(exc))


if __name__ == "__main__":
    sys.exit(main())
