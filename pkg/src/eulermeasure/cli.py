"""Command-line front end.

Subcommands: measure, choose, powerset, gizmo, mapspace, fib, verify.
Every exact value is printed as a "p/q" string, never a float; --json
emits one JSON object (schema 1) per invocation.  Reported values carry
the label of the route that produced them, and cross-route agreement
shows up under "checks".

Set expressions follow the grammar in setparse; operator binding from
tightest to loosest is ``!``, ``&``, ``\\``, ``u``/``|``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .choose_construction import DEFAULT_CHOOSE_CAP, choose_cells
from .errors import EulerMeasureError, InputError, RegularizationError, UnsupportedDomainError
from .exact_series import (
    DEFAULT_MAX_ORDER,
    DEFAULT_TERMS,
    EulerSeries,
    RationalFunction,
    continue_series,
)
from .fibonacci_subsets import DEFAULT_TERMS as FIB_TERMS, fibonacci_measure
from .interval_sets import OpenInterval, PolyhedralSet1D
from .limits import ENUM_CAP_ENV_VAR
from .map_spaces import (
    DEFAULT_PAIR_TERMS,
    affine_pair_space,
    hedral_map_measure,
    map_pair_measure,
    schanuel_measure,
)
from .partition_combinatorics import gen_binomial
from .power_gizmos import GizmoSpec, gizmo_measure, powerset_series
from .setparse import parse_set_expression
from .verify import run_verify

SCHEMA_VERSION = 1


@dataclass
class Command:
    """A validated CLI request: the verb plus its verb-specific options."""

    verb: str
    options: dict


@dataclass
class Report:
    """One invocation's structured result; renders to JSON or plain text."""

    command: str
    inputs: dict
    results: dict
    checks: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    exit_status: int = 0

    def to_json(self) -> str:
        return json.dumps(
            {
                "schema": SCHEMA_VERSION,
                "command": self.command,
                "inputs": self.inputs,
                "results": self.results,
                "checks": self.checks,
                "warnings": self.warnings,
            },
            indent=2,
        )

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for key, value in self.inputs.items():
            lines.append(f"{key}: {value}")
        for key, value in self.results.items():
            lines.extend(_render_result(key, value))
        for check in self.checks:
            suffix = f" ({check['detail']})" if check.get("detail") else ""
            lines.append(f"check {check['name']}: {check['status']}{suffix}")
        for warning in self.warnings:
            lines.append(f"warning: {warning}")
        return "\n".join(lines)


def _render_result(key: str, value) -> list[str]:
    if isinstance(value, dict):
        if "value" in value and "route" in value:
            return [f"{key} [{value['route']}]: {value['value']}"]
        if "coefficients" in value:
            shown = ", ".join(value["coefficients"][:10])
            if len(value["coefficients"]) > 10:
                shown += ", ..."
            lines = [f"{key} ({value['grading']}): {shown}"]
            closed = value.get("closed_form")
            if closed:
                lines.append(f"  closed form: {closed['text']}")
            rec = value.get("recurrence")
            if rec:
                taps = ", ".join(rec["taps"]) if rec["taps"] else "(none)"
                lines.append(
                    f"  recurrence: order {rec['order']}, taps {taps}; "
                    f"fitted on {rec['fit_terms']} terms, verified on {rec['verified_terms']} more"
                )
            return lines
        flat = ", ".join(f"{k}={v}" for k, v in value.items())
        return [f"{key}: {flat}"]
    if isinstance(value, list):
        return [f"{key}: " + ", ".join(str(x) for x in value)]
    return [f"{key}: {value}"]


def _labeled(value, route: str) -> dict:
    return {"value": str(value), "route": route}


def _rf_dict(rf: RationalFunction) -> dict:
    return {
        "numerator": [str(c) for c in rf.numerator.coefficients],
        "denominator": [str(c) for c in rf.denominator.coefficients],
        "text": rf.text(),
    }


def _series_dict(series: EulerSeries) -> dict:
    out = {
        "grading": series.prefix.grading,
        "coefficients": [str(c) for c in series.prefix.coefficients],
    }
    if series.closed_form is not None:
        out["closed_form"] = _rf_dict(series.closed_form)
    if series.recurrence is not None:
        out["recurrence"] = {
            "order": series.recurrence.order,
            "taps": [str(t) for t in series.recurrence.taps],
            "fit_terms": series.fit_terms,
            "verified_terms": len(series.prefix) - series.fit_terms,
        }
    return out


def _check_entry(name: str, passed: bool, detail: str = "") -> dict:
    entry = {"name": name, "status": "ok" if passed else "fail"}
    if detail:
        entry["detail"] = detail
    return entry


def _parse_input_set(options: dict) -> PolyhedralSet1D:
    text = options.get("set")
    if not text:
        raise InputError("missing set expression")
    return parse_set_expression(text)


def _require_unit_domain(a: PolyhedralSet1D, what: str):
    pieces = a.pieces
    ok = (
        len(pieces) == 1
        and isinstance(pieces[0], OpenInterval)
        and pieces[0].left.is_finite
        and pieces[0].right.is_finite
    )
    if not ok:
        raise UnsupportedDomainError(
            f"{what} needs a single bounded open interval as its domain, got {a}"
        )


# -- verb handlers -----------------------------------------------------


def _cmd_measure(options: dict) -> Report:
    a = _parse_input_set(options)
    cls = a.classify()
    results = {
        "canonical": str(a),
        "euler_measure": _labeled(a.euler_measure(), "piece-count"),
        "classification": {
            "finite": cls.finite,
            "cardinality": cls.cardinality,
            "compact": cls.compact,
            "components": len(cls.components),
            "has_isolated_points": cls.has_isolated_points,
        },
    }
    return Report("measure", {"set": options["set"]}, results)


def _cmd_choose(options: dict) -> Report:
    a = _parse_input_set(options)
    k = int(options["k"])
    sketch = choose_cells(a, k, options.get("cap") or DEFAULT_CHOOSE_CAP)
    chi = a.euler_measure()
    binom = gen_binomial(chi, k)
    results = {
        "canonical": str(a),
        "euler_measure": _labeled(chi, "piece-count"),
        "measure": _labeled(sketch.measure, "cell-enumeration"),
        "binomial": _labeled(binom, "generalized-binomial"),
    }
    if options.get("cells"):
        results["cells"] = {
            "dimension_counts": {str(d): n for d, n in sorted(sketch.dimension_counts().items())},
            "total": len(sketch.dimensions),
        }
    checks = [_check_entry("binomial-identity", sketch.measure == binom)]
    status = 0 if sketch.measure == binom else 1
    return Report(
        "choose", {"set": options["set"], "k": str(k)}, results, checks, exit_status=status
    )


def _cmd_powerset(options: dict) -> Report:
    a = _parse_input_set(options)
    terms = options.get("terms")
    ps = powerset_series(a, terms if terms is not None else DEFAULT_TERMS)
    checks = []
    warnings = []
    series_dict = _series_dict(ps.series)
    refit_order = min(DEFAULT_MAX_ORDER, (len(ps.series.prefix) - 2) // 2)
    if refit_order >= 1:
        try:
            refit = continue_series(ps.series.prefix, refit_order)
            agree = refit.closed_form == ps.series.closed_form
            checks.append(_check_entry("continuation-agreement", agree))
            series_dict = _series_dict(
                EulerSeries(ps.series.prefix, ps.series.closed_form, refit.recurrence)
            )
        except RegularizationError as exc:
            warnings.append(f"independent refit skipped: {exc}")
    else:
        warnings.append("independent refit skipped: too few terms")
    results = {
        "canonical": str(a),
        "euler_measure": _labeled(ps.chi, "piece-count"),
        "series": series_dict,
        "value": _labeled(ps.value, "binomial-closed-form"),
    }
    status = 0 if all(c["status"] == "ok" for c in checks) else 1
    return Report("powerset", {"set": options["set"]}, results, checks, warnings, status)


def _cmd_gizmo(options: dict) -> Report:
    a = _parse_input_set(options)
    ks = options.get("ks")
    if not ks:
        raise InputError("gizmo needs --ks with at least one selection size")
    spec = GizmoSpec(tuple(ks))
    terms = options.get("terms")
    terms = terms if terms is not None else DEFAULT_TERMS
    max_order = options.get("max_order")
    max_order = max_order if max_order is not None else DEFAULT_MAX_ORDER
    res = gizmo_measure(a, spec, terms=terms, max_order=max_order)
    results = {
        "canonical": str(a),
        "ks": list(spec.ks),
        "euler_measure": _labeled(res.chi, "piece-count"),
        "support_counts": [str(n) for n in res.counts.counts],
        "series": _series_dict(res.series),
        "value": _labeled(res.value, "exponential-fit"),
        "routes": {
            "exponential_fit": str(res.route_exponential),
            "series_regularization": str(res.route_series),
            "iterated_binomial": str(res.expected_iterated),
        },
    }
    if res.fit is not None:
        results["fit"] = {
            "bases": list(res.fit.bases),
            "weights": [str(w) for w in res.fit.weights],
        }
    checks = [_check_entry("route-agreement", True)]
    return Report(
        "gizmo",
        {"set": options["set"], "ks": ",".join(str(k) for k in spec.ks)},
        results,
        checks,
    )


def _cmd_mapspace(options: dict) -> Report:
    a = _parse_input_set(options)
    modes = [name for name in ("finite", "b", "chib") if options.get(name) is not None]
    if len(modes) != 1:
        raise InputError("choose exactly one of --finite N, --b SET, --chib N")
    terms = options.get("terms")
    terms = terms if terms is not None else DEFAULT_PAIR_TERMS
    inputs = {"set": options["set"], "mode": modes[0]}

    if options.get("pairs"):
        if modes != ["finite"]:
            raise InputError("--pairs is only defined for --finite codomains")
        _require_unit_domain(a, "the distinct-pair map space")
        res = map_pair_measure(int(options["finite"]), terms, options.get("max_order"))
        results = {
            "canonical": str(a),
            "codomain_size": int(options["finite"]),
            "pair_counts": [str(n) for n in res.counts],
            "series": _series_dict(res.series),
            "value": _labeled(res.value, "series-regularization of brute-force counts"),
        }
        return Report("mapspace", inputs | {"pairs": "true"}, results)

    if modes == ["finite"]:
        res = hedral_map_measure(a, int(options["finite"]), terms)
        results = {
            "canonical": str(a),
            "codomain_size": res.bsize,
            "euler_measure": _labeled(res.chi_domain, "piece-count"),
            "breakpoint_counts": [str(n) for n in res.counts.counts],
            "series": _series_dict(res.series),
            "value": _labeled(res.value, "breakpoint-series"),
        }
        return Report("mapspace", inputs | {"finite": str(res.bsize)}, results)

    _require_unit_domain(a, "the piecewise-affine map space")
    if modes == ["b"]:
        codomain = parse_set_expression(options["b"])
        sketch = affine_pair_space(codomain)
        res = schanuel_measure(codomain, terms)
        extra = {
            "codomain": str(codomain),
            "affine_space_measure": _labeled(sketch.measure, "cell-enumeration"),
        }
        inputs = inputs | {"b": options["b"]}
    else:
        res = schanuel_measure(int(options["chib"]), terms)
        extra = {}
        inputs = inputs | {"chib": str(options["chib"])}
    results = {
        "canonical": str(a),
        **extra,
        "codomain_measure": _labeled(res.chi_codomain, "component-count"),
        "subset_breakpoint_counts": [str(n) for n in res.subset_counts],
        "breakpoint_counts": [str(n) for n in res.counts.counts],
        "series": _series_dict(res.series),
        "value": _labeled(res.value, "breakpoint-series"),
    }
    return Report("mapspace", inputs, results)


def _cmd_fib(options: dict) -> Report:
    p = _parse_input_set(options)
    terms = options.get("terms")
    terms = terms if terms is not None else FIB_TERMS
    res = fibonacci_measure(p, terms, options.get("max_order"))
    results = {
        "canonical": str(p),
        "euler_measure": _labeled(res.chi, "piece-count"),
        "series": _series_dict(res.series),
        "value": _labeled(res.value, "series-regularization"),
        "expected_fibonacci": _labeled(res.expected, "extended-recurrence"),
    }
    checks = [_check_entry("fibonacci-agreement", res.value == res.expected)]
    return Report("fib", {"set": options["set"]}, results, checks)


def _cmd_verify(options: dict) -> Report:
    scope = options.get("scope") or "all"
    outcomes = run_verify(scope)
    failures = [r for r in outcomes if not r.passed]
    checks = [
        _check_entry(f"{r.scope}.{r.name}", r.passed, r.detail) for r in outcomes
    ]
    results = {
        "checks_run": len(outcomes),
        "failures": len(failures),
    }
    return Report(
        "verify", {"scope": scope}, results, checks, exit_status=0 if not failures else 1
    )


_HANDLERS = {
    "measure": _cmd_measure,
    "choose": _cmd_choose,
    "powerset": _cmd_powerset,
    "gizmo": _cmd_gizmo,
    "mapspace": _cmd_mapspace,
    "fib": _cmd_fib,
    "verify": _cmd_verify,
}


def run(command: Command) -> Report:
    """Dispatch a validated command to its module and build the report."""
    handler = _HANDLERS.get(command.verb)
    if handler is None:
        raise InputError(f"unknown command {command.verb!r}")
    return handler(command.options)


def verify_suite(scope: str = "all") -> Report:
    """Run the invariant checks for one module (or all) and report."""
    return _cmd_verify({"scope": scope})


def _ks_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eulermeasure",
        description=(
            "Exact Euler measures of 1-D polyhedral sets and regularized "
            "measures of their power-set, selection and map-space constructions. "
            f"Set {ENUM_CAP_ENV_VAR} to override the brute-force enumeration cap."
        ),
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    series_opts = argparse.ArgumentParser(add_help=False)
    series_opts.add_argument(
        "--terms",
        type=int,
        help="series prefix length (defaults: 24 for powerset/gizmo, 7 for mapspace, 16 for fib)",
    )
    series_opts.add_argument(
        "--max-order", type=int, dest="max_order", help="max fitted recurrence order (default 8)"
    )

    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("measure", parents=[common], help="Euler measure and classification")
    p.add_argument("set", help="set expression, e.g. '(0,1) u (2,3)'")

    p = sub.add_parser("choose", parents=[common], help="measure of the k-element selections")
    p.add_argument("set")
    p.add_argument("-k", type=int, required=True, help="selection size")
    p.add_argument("--cells", action="store_true", help="include the cell listing")
    p.add_argument("--cap", type=int, help=f"enumeration cap on k (default {DEFAULT_CHOOSE_CAP})")

    p = sub.add_parser("powerset", parents=[common, series_opts], help="Euler series of 2^A")
    p.add_argument("set")

    p = sub.add_parser(
        "gizmo", parents=[common, series_opts], help="iterated subset selection over 2^A"
    )
    p.add_argument("set")
    p.add_argument("--ks", type=_ks_list, required=True, help="selection sizes, e.g. 2,2")

    p = sub.add_parser(
        "mapspace", parents=[common, series_opts], help="map spaces out of a 1-D domain"
    )
    p.add_argument("set", help="domain expression")
    p.add_argument("--finite", type=int, help="finite codomain with N points")
    p.add_argument("--b", help="compact polyhedral codomain expression")
    p.add_argument("--chib", type=int, help="symbolic codomain Euler measure")
    p.add_argument("--pairs", action="store_true", help="distinct unordered map pairs")

    p = sub.add_parser("fib", parents=[common, series_opts], help="parity-constrained subsets")
    p.add_argument("set")

    p = sub.add_parser("verify", parents=[common], help="run the invariant suites")
    p.add_argument("--scope", default="all", help="module name or 'all'")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    namespace = parser.parse_args(argv)
    options = {k: v for k, v in vars(namespace).items() if k not in ("verb", "json")}
    try:
        report = run(Command(namespace.verb, options))
    except EulerMeasureError as exc:
        if namespace.json:
            print(
                json.dumps(
                    {
                        "schema": SCHEMA_VERSION,
                        "error": {"class": exc.cli_class, "message": str(exc)},
                    },
                    indent=2,
                )
            )
        else:
            print(f"error [{exc.cli_class}]: {exc}", file=sys.stderr)
        return exc.exit_code
    print(report.to_json() if namespace.json else report.to_text())
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
