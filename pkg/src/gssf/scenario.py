"""Scenario files in, structured verification reports out.

A scenario is a JSON document describing one submanifold point (ambient
size, structure functions, tangent frame, form coefficients) plus a
list of checks to run on it.  Unknown fields are rejected by schema
validation.  Indices in scenario files are 1-based, matching the frame
conventions of the underlying geometry; the Python API is 0-based.
"""

from __future__ import annotations

import dataclasses
import json

import jsonschema
import numpy as np

from .ambient import StructureFunctions, canonical_model, preset_structure_functions
from .config import DEFAULT
from .errors import BadConfig
from .generators import anti_invariant_frame, random_sff, slant_frame
from .inequalities import delta_bound, global_delta_bounds, ricci_bound, ricci_equality_diagnosis
from .submanifold import (
    PointFlags,
    SecondFundamentalForm,
    SubmanifoldPoint,
    attach_point,
    classify_sff,
    invariant_report,
    scalar_identity_check,
)

_NUMBER = {"type": "number"}
_EXPECT = {
    "type": "object",
    "additionalProperties": {"type": ["number", "boolean", "string"]},
}
_CHECK = {
    "type": "object",
    "properties": {
        "name": {
            "enum": [
                "scalar_identity", "invariant_report", "ricci_bound",
                "ricci_equality", "delta_bound", "global_delta",
                "classify", "validate_ambient",
            ]
        },
        "variant": {"enum": ["general", "s_form", "c_form"]},
        "u": {"anyOf": [{"type": "integer", "minimum": 1}, {"const": "all"}]},
        "plane": {
            "anyOf": [
                {"type": "array", "items": {"type": "integer", "minimum": 1},
                 "minItems": 2, "maxItems": 2},
                {"const": "all"},
            ]
        },
        "slant_mode": {"type": "boolean"},
        "expect": _EXPECT,
    },
    "required": ["name"],
    "additionalProperties": False,
}

SCENARIO_SCHEMA = {
    "type": "object",
    "properties": {
        "ambient": {
            "type": "object",
            "properties": {"m": {"type": "integer", "minimum": 1}},
            "required": ["m"],
            "additionalProperties": False,
        },
        "structure": {
            "type": "object",
            "properties": {
                "preset": {"enum": ["s_space_form", "c_space_form", "real_space_form"]},
                "c": _NUMBER,
                "values": {"type": "array", "items": _NUMBER,
                           "minItems": 7, "maxItems": 7},
            },
            "additionalProperties": False,
        },
        "frame": {
            "type": "object",
            "properties": {
                "mode": {"enum": ["slant", "invariant", "anti_invariant", "explicit"]},
                "n": {"type": "integer", "minimum": 1},
                "theta": _NUMBER,
                "vectors": {"type": "array",
                            "items": {"type": "array", "items": _NUMBER}},
            },
            "required": ["mode"],
            "additionalProperties": False,
        },
        "sigma": {
            "type": "object",
            "properties": {
                "coeffs": {
                    "type": "array",
                    "items": {"type": "array",
                              "prefixItems": [
                                  {"type": "integer", "minimum": 1},
                                  {"type": "integer", "minimum": 1},
                                  {"type": "integer", "minimum": 1},
                                  _NUMBER,
                              ],
                              "minItems": 4, "maxItems": 4},
                },
                "c_compatible": {"type": "boolean"},
                "constraint": {
                    "enum": ["none", "minimal", "c_compatible",
                             "minimal_and_c_compatible"]
                },
                "seed": {"type": "integer"},
                "scale": {"type": "number", "exclusiveMinimum": 0},
            },
            "additionalProperties": False,
        },
        "checks": {"type": "array", "items": _CHECK},
    },
    "required": ["ambient", "structure", "frame", "sigma", "checks"],
    "additionalProperties": False,
}


def load_scenario(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        data = json.load(handle)
    validate_scenario(data)
    return data


def validate_scenario(data: dict):
    jsonschema.validate(data, SCENARIO_SCHEMA)
    structure = data["structure"]
    if ("preset" in structure) == ("values" in structure):
        raise BadConfig("structure needs exactly one of 'preset' or 'values'")
    if "preset" in structure and "c" not in structure:
        raise BadConfig("a structure preset needs its curvature constant 'c'")
    frame = data["frame"]
    if frame["mode"] == "explicit":
        if "vectors" not in frame:
            raise BadConfig("explicit frames need 'vectors'")
    else:
        if "n" not in frame:
            raise BadConfig(f"frame mode {frame['mode']!r} needs 'n'")
    if frame["mode"] == "slant" and "theta" not in frame:
        raise BadConfig("slant frames need 'theta'")
    sigma = data["sigma"]
    if ("coeffs" in sigma) == ("constraint" in sigma):
        raise BadConfig("sigma needs exactly one of 'coeffs' or 'constraint'")
    if "constraint" in sigma and "seed" not in sigma:
        raise BadConfig("generated sigma needs a 'seed'")


def assemble(data: dict) -> tuple[SubmanifoldPoint, list[dict], dict]:
    """Build the point a scenario describes; returns (point, checks, echo)."""
    ambient = canonical_model(data["ambient"]["m"])

    structure = data["structure"]
    if "preset" in structure:
        functions = preset_structure_functions(structure["preset"], structure["c"])
    else:
        functions = StructureFunctions(*structure["values"])

    frame_cfg = data["frame"]
    mode = frame_cfg["mode"]
    if mode == "explicit":
        raw = [np.asarray(v, dtype=float) for v in frame_cfg["vectors"]]
        n = len(raw) - 2
    else:
        n = frame_cfg["n"]
        if mode == "invariant":
            raw = slant_frame(ambient, n, 0.0)
        elif mode == "anti_invariant":
            raw = anti_invariant_frame(ambient, n)
        else:
            raw = slant_frame(ambient, n, frame_cfg["theta"])

    rank = ambient.dim - (n + 2)
    if rank < 0:
        raise BadConfig("the frame does not fit inside the ambient model")

    sigma_cfg = data["sigma"]
    c_compatible = bool(sigma_cfg.get("c_compatible", False))
    if "coeffs" in sigma_cfg:
        coeffs = np.zeros((rank, n + 2, n + 2))
        for r, i, j, value in sigma_cfg["coeffs"]:
            if not (1 <= r <= rank and 1 <= i <= n + 2 and 1 <= j <= n + 2):
                raise BadConfig(
                    f"sigma index ({r}, {i}, {j}) out of range for "
                    f"{rank} normals and {n + 2} tangent directions"
                )
            coeffs[r - 1, i - 1, j - 1] = value
            coeffs[r - 1, j - 1, i - 1] = value
        sff = SecondFundamentalForm(coeffs)
    else:
        rng = np.random.default_rng(sigma_cfg["seed"])
        constraint = sigma_cfg["constraint"]
        sff = random_sff(rng, rank, n + 2, sigma_cfg.get("scale", 1.0), constraint, n)
        c_compatible = c_compatible or "c_compatible" in constraint

    point = attach_point(ambient, functions, raw, sff,
                         PointFlags(c_compatible=c_compatible))
    echo = {
        "m": ambient.m,
        "n": point.n,
        "structure_functions": functions.as_dict(),
        "frame": point.tangent.matrix,
        "flags": {"c_compatible": point.flags.c_compatible},
    }
    return point, list(data["checks"]), echo


def _record(name: str, lhs=None, rhs=None, slack=None, equality=None,
            passed=True, diagnostics=None) -> dict:
    return {
        "name": name,
        "lhs": lhs,
        "rhs": rhs,
        "slack": slack,
        "equality": equality,
        "passed": passed,
        "diagnostics": diagnostics or {},
    }


def _apply_expect(record: dict, expect: dict | None, tol_eq: float):
    if not expect:
        return
    failures = []
    for key, wanted in expect.items():
        value = record.get(key, record["diagnostics"].get(key))
        if isinstance(wanted, (int, float)) and not isinstance(wanted, bool):
            ok = (
                isinstance(value, (int, float))
                and abs(float(value) - float(wanted)) <= max(tol_eq, tol_eq * abs(wanted))
            )
        else:
            ok = value == wanted
        if not ok:
            failures.append(key)
    if failures:
        record["passed"] = False
        record["diagnostics"]["expect_failures"] = failures


def _slant_diag(slant) -> dict:
    return {"slant_kind": slant.kind, "slant_angle": slant.angle}


def run_checks(point: SubmanifoldPoint, checks: list[dict],
               tol_eq: float) -> tuple[list[dict], dict]:
    tol = dataclasses.replace(DEFAULT, equality=tol_eq)
    n = point.n
    records: list[dict] = []

    def bound_record(name: str, report, extra: dict | None = None) -> dict:
        diag = dict(extra or {})
        if report.defect_terms is not None:
            diag["defect_terms"] = [[k, v] for k, v in report.defect_terms]
        return _record(name, lhs=report.lhs, rhs=report.rhs, slack=report.slack,
                       equality=report.equality,
                       passed=report.slack >= -tol_eq, diagnostics=diag)

    for check in checks:
        name = check["name"]
        expect = check.get("expect")
        produced: list[dict] = []

        if name == "scalar_identity":
            result = scalar_identity_check(point)
            scale = max(1.0, abs(result.lhs), abs(result.rhs))
            rec = _record(name, lhs=result.lhs, rhs=result.rhs,
                          slack=result.rhs - result.lhs,
                          equality=result.abs_diff <= tol_eq,
                          passed=result.abs_diff <= tol_eq * scale,
                          diagnostics={"tau": point.tau, "abs_diff": result.abs_diff})
            produced.append(rec)
        elif name == "invariant_report":
            rep = invariant_report(point, tol)
            diag = {
                "tau": rep.tau,
                "h_norm_sq": rep.h_norm_sq,
                "sigma_norm_sq": rep.sigma_norm_sq,
                "t_norm_sq": rep.t_norm_sq,
                "n_norm_sq": rep.n_norm_sq,
                "h_normal": rep.h_normal,
            }
            diag.update(_slant_diag(rep.slant))
            produced.append(_record(name, diagnostics=diag))
        elif name == "ricci_bound":
            variant = check.get("variant", "general")
            selector = check.get("u", "all")
            indices = range(1, n + 1) if selector == "all" else [selector]
            for u_index in indices:
                if not 1 <= u_index <= n:
                    raise BadConfig(f"u index {u_index} outside 1..{n}")
                direction = point.tangent.matrix[u_index - 1]
                report = ricci_bound(point, direction, variant, tol)
                produced.append(bound_record(
                    f"{name}[{variant},u={u_index}]", report,
                    {"variant": variant, "u": u_index},
                ))
        elif name == "ricci_equality":
            selector = check.get("u", "all")
            indices = range(1, n + 1) if selector == "all" else [selector]
            for u_index in indices:
                direction = point.tangent.matrix[u_index - 1]
                diag = ricci_equality_diagnosis(point, direction, tol)
                produced.append(_record(
                    f"{name}[u={u_index}]", passed=diag.consistent,
                    equality=diag.equality,
                    diagnostics={"u": u_index, "in_null_space": diag.in_null_space,
                                 "consistent": diag.consistent},
                ))
        elif name == "delta_bound":
            selector = check.get("plane", "all")
            slant_mode = bool(check.get("slant_mode", False))
            if selector == "all":
                planes = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
            else:
                planes = [tuple(selector)]
            for i, j in planes:
                if not (1 <= i <= n and 1 <= j <= n and i != j):
                    raise BadConfig(f"plane ({i}, {j}) outside the L-frame 1..{n}")
                x = point.tangent.matrix[i - 1]
                y = point.tangent.matrix[j - 1]
                report = delta_bound(point, x, y, slant_mode, tol)
                produced.append(bound_record(
                    f"{name}[{i},{j}]", report, {"plane": [i, j], "slant_mode": slant_mode},
                ))
        elif name == "global_delta":
            report = global_delta_bounds(point, tol=tol)
            diag = {"inf_k": report.inf_k}
            diag.update(report.equality_diagnosis)
            produced.append(bound_record(f"{name}[{report.branch}]", report.bound, diag))
            if report.four_dim_slant is not None:
                produced.append(bound_record(
                    f"{name}[four_dim_slant]", report.four_dim_slant, {},
                ))
        elif name == "classify":
            produced.append(_record(
                name, diagnostics=dict(classify_sff(point, tol).as_dict()),
            ))
        elif name == "validate_ambient":
            from .ambient import validate_f_structure

            violations = validate_f_structure(point.ambient, tol)
            produced.append(_record(
                name, passed=not violations,
                diagnostics={"violations": [
                    {"check": v.check, "magnitude": v.magnitude} for v in violations
                ]},
            ))
        else:  # unreachable under the schema
            raise BadConfig(f"unknown check {name!r}")

        for rec in produced:
            _apply_expect(rec, expect, tol_eq)
        records.extend(produced)

    slacks = [r["slack"] for r in records if r["slack"] is not None]
    summary = {
        "pass_count": sum(1 for r in records if r["passed"]),
        "fail_count": sum(1 for r in records if not r["passed"]),
        "worst_slack": min(slacks) if slacks else None,
    }
    return records, summary


def build_report(echo: dict, records: list[dict], summary: dict,
                 tol_eq: float) -> dict:
    return {
        "tool": "gssf",
        "command": "report",
        "tolerance": tol_eq,
        "resolved": echo,
        "checks": records,
        "summary": summary,
    }
