"""Batch command-line front end.

Subcommands: bracket, axioms, module, verma, lemmas, classify.  Every
path is a thin composition of library calls; no computation lives only
here.  A JSON config file can predefine option values and explicit
flags win over the file.  Reports are emitted as canonical JSON
(byte-identical across reruns of the same configuration) and as text.

Exit codes: 0 when every requested check passes, 1 when a check fails
or (under --strict) a lemma report records a discrepancy, 2 for usage
errors and malformed inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import algebra, identities, modules, verma
from .algebra import AlgebraElement, BasisKey, parse_variant
from .rationals import format_rational, parse_rational
from .reporting import dumps_report, render_table, write_report


class UsageError(Exception):
    pass


def _parse_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(p) for p in text.split(":"))
    except ValueError as exc:
        raise UsageError(f"malformed range {text!r}, expected lo:hi") from exc
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _parse_operand(text: str, variant) -> AlgebraElement:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"operand is not valid JSON: {exc}") from exc
    if isinstance(data, dict) and "terms" in data:
        return AlgebraElement.from_json(data)
    if isinstance(data, dict) and "alpha" in data:
        try:
            key = BasisKey(int(data["alpha"]), int(data.get("level", 0)))
        except (TypeError, ValueError) as exc:
            raise UsageError(f"malformed operand field: {exc}") from exc
        coeff = parse_rational(data.get("coeff", "1"))
        return AlgebraElement(variant, {key: coeff})
    raise UsageError("operand JSON needs either an 'alpha' field or full element form with 'terms'")


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read config file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("config file must hold a JSON object")
    return data


def _fill(args: argparse.Namespace, config: dict, names: list[str]) -> None:
    # flags win over config values; config wins over built-in defaults
    defaults = {
        "variant": "B",
        "degree": 5,
        "level": 3,
        "vir_degree": 10,
        "family": "Aab",
        "a": "0",
        "b": "0",
        "to_b": None,
        "range": "-8:8",
        "pair_degree": 4,
        "level_cap": 2,
        "n": 1,
        "depth": 3,
        "c": "0",
    }
    for name in names:
        if getattr(args, name, None) is None:
            if name in config:
                setattr(args, name, config[name])
            elif name in defaults:
                setattr(args, name, defaults[name])


def _emit(args: argparse.Namespace, payload: dict, table_rows: list[dict] | None = None, columns: list[str] | None = None) -> None:
    if getattr(args, "out", None):
        write_report(payload, args.out)
    if getattr(args, "format", "table") == "json":
        sys.stdout.write(dumps_report(payload))
    elif table_rows is not None and columns is not None:
        print(render_table(table_rows, columns))


def _finish(args: argparse.Namespace, payload: dict, human: str | None = None) -> None:
    # one JSON document on stdout under --format json, one summary otherwise
    if getattr(args, "out", None):
        write_report(payload, args.out)
    if getattr(args, "format", "table") == "json":
        sys.stdout.write(dumps_report(payload))
    elif human is not None:
        print(human)


def _cmd_bracket(args: argparse.Namespace, config: dict) -> int:
    _fill(args, config, ["variant"])
    variant = parse_variant(args.variant)
    x = _parse_operand(args.x, variant)
    y = _parse_operand(args.y, variant)
    result = algebra.bracket(x, y)
    payload = {"command": "bracket", "variant": str(variant), "result": result.to_json()}
    _finish(args, payload, repr(result))
    return 0


def _cmd_axioms(args: argparse.Namespace, config: dict) -> int:
    _fill(args, config, ["variant", "degree", "level", "vir_degree"])
    variant = parse_variant(args.variant)
    violations = algebra.verify_algebra_axioms(variant, int(args.degree), int(args.level))
    consistency = algebra.vir_consistency(int(args.vir_degree))
    passed = not violations and consistency["homomorphism"] and consistency["quotient_matches"]
    payload = {
        "command": "axioms",
        "config": {"variant": str(variant), "degree": int(args.degree), "level": int(args.level)},
        "violations": violations,
        "vir_consistency": consistency,
        "passed": passed,
    }
    rows = [
        {"check": "algebra-axioms", "result": "ok" if not violations else f"{len(violations)} violations"},
        {"check": "vir-consistency", "result": f"c0={consistency['c0']}" if consistency["homomorphism"] else "failed"},
    ]
    _emit(args, payload, rows, ["check", "result"])
    return 0 if passed else 1


def _parameter_grid(text: str) -> list:
    values = [parse_rational(part) for part in str(text).split(",") if part.strip()]
    if not values:
        raise UsageError(f"empty parameter grid {text!r}")
    return values


def _spec_grid(args: argparse.Namespace) -> list[modules.IntermediateSpec]:
    grid_a = _parameter_grid(args.a)
    if args.family == "Aab":
        grid_b = _parameter_grid(args.b)
        return [modules.IntermediateSpec("Aab", a, b) for a in grid_a for b in grid_b]
    return [modules.IntermediateSpec(args.family, a) for a in grid_a]


def _cmd_module(args: argparse.Namespace, config: dict) -> int:
    _fill(args, config, ["family", "a", "b", "to_b", "range", "pair_degree", "level_cap"])
    lo, hi = _parse_range(str(args.range))
    action = args.action
    grid = _spec_grid(args)
    if action == "irreducible":
        verdicts = []
        lines = []
        for spec in grid:
            verdict = modules.irreducible_verdict(spec, lo, hi)
            verdicts.append({"a": str(spec.a), "b": str(spec.b), **verdict})
            prefix = f"a={spec.a} b={spec.b}: " if len(grid) > 1 else ""
            lines.append(
                f"{prefix}bruteforce={str(verdict['bruteforce']).lower()}"
                f" criterion={str(verdict['criterion']).lower()}"
            )
        passed = all(v["agree"] for v in verdicts)
        payload = {"command": "module.irreducible", "grid": verdicts, "passed": passed}
        _finish(args, payload, "\n".join(lines))
        return 0 if passed else 1
    if action == "extension":
        results = []
        lines = []
        for spec in grid:
            report = modules.extension_space(modules.build_window(spec, lo, hi), int(args.level_cap))
            results.append(
                {
                    "a": str(spec.a),
                    "b": str(spec.b),
                    "dimension": report.dimension,
                    "inconclusive": report.inconclusive,
                    "decided": report.quadratic_decided,
                    "equations": report.equations,
                    "unknowns": report.unknowns,
                }
            )
            prefix = f"a={spec.a} b={spec.b}: " if len(grid) > 1 else ""
            lines.append(f"{prefix}extension space dimension: {report.dimension}" + (" (inconclusive)" if report.inconclusive else ""))
        payload = {"command": "module.extension", "grid": results}
        _finish(args, payload, "\n".join(lines))
        return 0
    if len(grid) > 1:
        raise UsageError(f"action {action!r} takes single --a/--b values, not grids")
    spec = grid[0]
    window = modules.build_window(spec, lo, hi)
    if action == "check":
        violations = modules.check_module_axioms(window, int(args.pair_degree))
        extended = modules.extend_trivially(window, int(args.level_cap))
        extra = [BasisKey(1, i) for i in range(1, int(args.level_cap) + 1)]
        violations += modules.check_module_axioms(extended, int(args.pair_degree), extra_keys=extra)
        payload = {"command": "module.check", "violations": violations, "passed": not violations}
        _emit(args, payload, [{"check": "module-axioms", "result": "ok" if not violations else "failed"}], ["check", "result"])
        return 0 if not violations else 1
    if action == "intertwiner":
        if args.to_b is None:
            raise UsageError("intertwiner needs --to-b for the target family member")
        other = modules.build_window(
            modules.IntermediateSpec("Aab", parse_rational(str(args.a)), parse_rational(str(args.to_b))), lo, hi
        )
        found = modules.find_intertwiner(window, other)
        payload = {
            "command": "module.intertwiner",
            "found": found is not None,
            "blocks": None if found is None else {str(k): m.to_json() for k, m in sorted(found.items())},
        }
        _finish(args, payload, "intertwiner found" if found is not None else "no invertible intertwiner")
        return 0
    if action == "spanning":
        ok = modules.core_spanning_check(window)
        payload = {"command": "module.spanning", "passed": ok}
        _finish(args, payload, "core spans window" if ok else "core does not span window")
        return 0 if ok else 1
    if action == "classify":
        extended = modules.extend_trivially(window, int(args.level_cap))
        verdict = modules.classify_window(extended)
        payload = {"command": "module.classify", "verdict": verdict}
        _finish(args, payload, verdict["verdict"])
        return 0
    raise UsageError(f"unknown module action {action!r}")


def _cmd_verma(args: argparse.Namespace, config: dict) -> int:
    _fill(args, config, ["n", "depth", "c"])
    n = int(args.n)
    depth = int(args.depth)
    if args.action == "dims":
        report = verma.quasifinite_report(n, depth)
        payload = {"command": "verma.dims", "report": report, "passed": report["match"]}
        _finish(args, payload, ", ".join(str(d) for d in report["dimensions"][1:]))
        return 0 if report["match"] else 1
    if args.action == "singular":
        if args.lambda_file:
            try:
                with open(args.lambda_file, encoding="utf-8") as handle:
                    lam = verma.WeightFunctional.from_json(json.load(handle))
            except OSError as exc:
                raise UsageError(f"cannot read lambda file: {exc}") from exc
            except (json.JSONDecodeError, ValueError) as exc:
                raise UsageError(f"malformed lambda file: {exc}") from exc
        else:
            values = tuple(parse_rational(v) for v in (args.lam or "0," * n + "0").split(","))
            lam = verma.WeightFunctional(values, parse_rational(str(args.c)))
        if lam.n != n:
            raise UsageError(f"lambda table has {lam.n + 1} entries but n={n} needs {n + 1}")
        found = []
        for d in range(1, depth + 1):
            for vec in verma.singular_vectors(lam, n, d):
                pairs = [[verma.monomial_repr(w), format_rational(c)] for w, c in sorted(vec.items())]
                found.append({"depth": d, "vector": pairs})
        generators_ok = verma.validate_positive_generators(n, depth + 2)
        payload = {
            "command": "verma.singular",
            "lambda": lam.to_json(),
            "singular": found,
            "positive_generators_validated_to_degree": depth + 2 if generators_ok else None,
        }
        _finish(args, payload, f"singular vectors through depth {depth}: {len(found)}")
        return 0
    raise UsageError(f"unknown verma action {args.action!r}")


def _cmd_lemmas(args: argparse.Namespace, config: dict) -> int:
    workers = int(os.environ.get("BLOCKLIE_WORKERS", "1"))
    reports = identities.run_standard_suite(workers=workers)
    payload = {
        "command": "lemmas",
        "strict": bool(args.strict),
        "reports": [r.to_json() for r in reports],
    }
    rows = [{"claim": r.claim, "status": r.status, "passed": r.passed} for r in reports]
    _emit(args, payload, rows, ["claim", "status", "passed"])
    ok = all(r.passed for r in reports)
    if args.strict:
        ok = ok and all(r.status in (identities.STATUS_EXACT, identities.STATUS_NORMALIZED) for r in reports)
    return 0 if ok else 1


def _cmd_classify(args: argparse.Namespace, config: dict) -> int:
    try:
        with open(args.module_file, encoding="utf-8") as handle:
            data = json.load(handle)
    except OSError as exc:
        raise UsageError(f"cannot read module file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"module file is not valid JSON: {exc}") from exc
    window = modules.WindowedModule.from_json(data)
    verdict = modules.classify_window(window)
    payload = {"command": "classify", "verdict": verdict}
    _finish(args, payload, verdict["verdict"])
    return 0


# flags whose values may start with "-" (negative degrees, rationals, ranges)
_VALUE_FLAGS = {"--range", "--a", "--b", "--to-b", "--lam", "--c", "--x", "--y"}


def _normalize_argv(argv: list[str]) -> list[str]:
    out = []
    skip = False
    for pos, token in enumerate(argv):
        if skip:
            skip = False
            continue
        if token in _VALUE_FLAGS and pos + 1 < len(argv):
            out.append(f"{token}={argv[pos + 1]}")
            skip = True
        else:
            out.append(token)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with default option values")
    common.add_argument("--out", help="write the canonical JSON report to this path")
    common.add_argument("--format", choices=["json", "table"], default="table")

    parser = argparse.ArgumentParser(prog="blocklie", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="evaluate one bracket from JSON operands")
    p.add_argument("--variant")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)

    p = sub.add_parser("axioms", parents=[common], help="antisymmetry/Jacobi sweep and Virasoro consistency")
    p.add_argument("--variant")
    p.add_argument("--degree", type=int)
    p.add_argument("--level", type=int)
    p.add_argument("--vir-degree", dest="vir_degree", type=int)

    p = sub.add_parser("module", parents=[common], help="build and analyze intermediate-series windows")
    p.add_argument("--family", choices=["Aab", "Aa", "Ba"])
    p.add_argument("--a")
    p.add_argument("--b")
    p.add_argument("--to-b", dest="to_b")
    p.add_argument("--range")
    p.add_argument("--pair-degree", dest="pair_degree", type=int)
    p.add_argument("--level-cap", dest="level_cap", type=int)
    p.add_argument("action", choices=["check", "irreducible", "intertwiner", "extension", "spanning", "classify"])

    p = sub.add_parser("verma", parents=[common], help="truncated highest-weight module data")
    p.add_argument("--n", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--lambda-file", dest="lambda_file")
    p.add_argument("--lam", help="comma-separated rational values for the degree-zero levels")
    p.add_argument("--c")
    p.add_argument("action", choices=["dims", "singular"])

    p = sub.add_parser("lemmas", parents=[common], help="run the identity-verification suite")
    p.add_argument("--strict", action="store_true")

    p = sub.add_parser("classify", parents=[common], help="classify a windowed module from its JSON file")
    p.add_argument("--module-file", dest="module_file", required=True)

    return parser


HANDLERS = {
    "bracket": _cmd_bracket,
    "axioms": _cmd_axioms,
    "module": _cmd_module,
    "verma": _cmd_verma,
    "lemmas": _cmd_lemmas,
    "classify": _cmd_classify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(_normalize_argv(list(argv)))
    config = {}
    try:
        config = _load_config(args.config)
        return HANDLERS[args.command](args, config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
