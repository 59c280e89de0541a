"""Command-line front end.  Every subcommand prints one JSON report on stdout.

Exit status: 0 on success (or "independent" / "holds"), 1 when a predicate
subcommand answers "dependent" / "fails", 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .algebra import format_rational, parse_rational
from .harness import (
    MODES,
    RegimeError,
    TrialConfig,
    instance_from_json,
    instance_to_json,
    report_to_json,
    run_theorem_sweep,
)
from .identities import (
    IDENTITY_NAMES,
    get_identity,
    permanent_trace_check,
    restriction_check,
    verify_identity,
)
from .independence import (
    classify_two_forms,
    k_products,
    normalize,
    s1_independent,
    s1_polynomials,
    sk_independent,
    witness_annihilates,
)
from .tracing import CASES, case4_solution_check, golden_determinants

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def _read_instance(path: str) -> tuple:
    """Load an instance file; returns ``(system, extra)``.

    Besides the normal-form schema the file may give ``"forms"``: raw rows
    of linear-form coefficients, reduced to normal form first.
    """
    try:
        if path == "-":
            obj = json.load(sys.stdin)
        else:
            with open(path) as fh:
                obj = json.load(fh)
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise InputError(f"malformed JSON in {path}: {e}") from None
    try:
        if isinstance(obj, dict) and "forms" in obj:
            if obj.get("schema", 1) != 1:
                raise ValueError(f"unsupported schema {obj.get('schema')!r}")
            rows = obj["forms"]
            if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
                raise ValueError("forms must be a non-empty list of rows")
            if len({len(r) for r in rows}) != 1:
                raise ValueError("forms rows differ in length")
            parsed = [[parse_rational(x) if isinstance(x, str) else _bad(x) for x in r] for r in rows]
            system, basis, order = normalize(parsed)
            extra = {
                "normal_form": instance_to_json(system),
                "basis": [[format_rational(x) for x in row] for row in basis.rows],
                "order": list(order),
            }
            return system, extra
        return instance_from_json(obj), {}
    except ValueError as e:
        raise InputError(f"invalid instance: {e}") from None


def _bad(x):
    raise ValueError(f"entries must be rational strings, got {x!r}")


def _report(rep) -> dict:
    out = {"verdict": rep.verdict, "rank": rep.rank}
    if rep.witness is not None:
        out["witness"] = [format_rational(x) for x in rep.witness]
    return out


def _emit(obj: dict) -> None:
    json.dump({"schema": 1, "version": __version__, **obj}, sys.stdout, indent=1)
    sys.stdout.write("\n")


def cmd_check_s1(args) -> int:
    system, extra = _read_instance(args.input)
    rep = s1_independent(system)
    if rep.witness is not None and not witness_annihilates(s1_polynomials(system), rep.witness):
        raise AssertionError("witness failed to validate")
    _emit({"command": "check-s1", **extra, **_report(rep)})
    return EXIT_OK if rep.independent else EXIT_NO


def cmd_check_sk(args) -> int:
    system, extra = _read_instance(args.input)
    if not 1 <= args.k <= system.l:
        raise InputError(f"--k must lie in 1..{system.l}")
    rep = sk_independent(system, args.k)
    if rep.witness is not None:
        prods = k_products(s1_polynomials(system), args.k)
        if not witness_annihilates(prods, rep.witness):
            raise AssertionError("witness failed to validate")
    _emit({"command": "check-sk", "k": args.k, **extra, **_report(rep)})
    return EXIT_OK if rep.independent else EXIT_NO


def cmd_classify_m2(args) -> int:
    system, extra = _read_instance(args.input)
    if system.m not in (1, 2) or system.r < 2:
        raise InputError(f"classify-m2 needs m in {{1, 2}} and r >= 2, got r={system.r}, m={system.m}")
    cls = classify_two_forms(system)
    _emit(
        {
            "command": "classify-m2",
            **extra,
            "case": cls.case,
            "detail": list(cls.detail) if cls.detail else None,
            "verdict": "dependent" if cls.dependent else "independent",
        }
    )
    return EXIT_OK


def cmd_witness(args) -> int:
    system, extra = _read_instance(args.input)
    if args.k == 1:
        rep, polys = s1_independent(system), s1_polynomials(system)
    else:
        if not 1 <= args.k <= system.l:
            raise InputError(f"--k must lie in 1..{system.l}")
        rep = sk_independent(system, args.k)
        polys = k_products(s1_polynomials(system), args.k)
    out = {"command": "witness", "k": args.k, **extra, **_report(rep)}
    if rep.witness is not None:
        out["expands_to_zero"] = witness_annihilates(polys, rep.witness)
    _emit(out)
    return EXIT_OK if rep.witness is not None and out["expands_to_zero"] else EXIT_NO


_CHECKS = {"restriction": restriction_check, "permanent_trace": permanent_trace_check}


def cmd_verify_identity(args) -> int:
    if args.n is not None:
        name = f"square_n{args.n}"
    else:
        name = args.name
    if name in _CHECKS:
        res = _CHECKS[name]()
        details = json.loads(json.dumps(res.details, default=str))
    else:
        res = verify_identity(get_identity(name))
        details = res.details
    out = {
        "command": "verify-identity",
        "name": name,
        "result": "holds" if res.holds else "fails",
        "details": details,
    }
    if res.residual is not None:
        out["residual"] = str(res.residual)
    _emit(out)
    return EXIT_OK if res.holds else EXIT_NO


def cmd_trace_systems(args) -> int:
    cases = args.case or list(CASES)
    rows = golden_determinants(cases)
    ok = all(r["matches"] and not r["leaks"] for r in rows)
    out = {"command": "trace-systems", "systems": rows}
    if args.solutions:
        sol = case4_solution_check()
        out["solution_check"] = sol
        ok = ok and sol["holds"]
    _emit(out)
    return EXIT_OK if ok else EXIT_NO


def cmd_sweep(args) -> int:
    try:
        cfg = TrialConfig(args.r, args.m, args.k, args.trials, args.seed, args.bound, args.mode)
        report = run_theorem_sweep(cfg, allow_open=args.allow_open, workers=args.workers)
    except (RegimeError, ValueError) as e:
        raise InputError(str(e)) from None
    out = report_to_json(report, include_timestamp=not args.no_timestamp)
    _emit({"command": "sweep", **{k: v for k, v in out.items() if k not in ("schema", "version")}})
    return EXIT_NO if report.violations else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="quadind", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_input(sp):
        sp.add_argument("--in", dest="input", required=True, help="instance JSON file, or - for stdin")
        return sp

    with_input(sub.add_parser("check-s1", help="independence of the squares")).set_defaults(func=cmd_check_s1)

    sp = with_input(sub.add_parser("check-sk", help="independence of the k-fold products"))
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_check_sk)

    with_input(sub.add_parser("classify-m2", help="structural reason for dependence when m <= 2")).set_defaults(
        func=cmd_classify_m2
    )

    sp = with_input(sub.add_parser("witness", help="print and validate a dependency witness"))
    sp.add_argument("--k", type=int, default=1)
    sp.set_defaults(func=cmd_witness)

    sp = sub.add_parser("verify-identity", help="expand an identity and check it is exact")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int, choices=(1, 2, 3))
    g.add_argument("--name", choices=IDENTITY_NAMES + tuple(_CHECKS))
    sp.set_defaults(func=cmd_verify_identity)

    sp = sub.add_parser("trace-systems", help="traced linear systems and their determinants")
    sp.add_argument("--case", action="append", choices=list(CASES))
    sp.add_argument("--solutions", action="store_true", help="also check the closed-form solutions")
    sp.set_defaults(func=cmd_trace_systems)

    sp = sub.add_parser("sweep", help="seeded sweep of the S_1 / S_k equivalence")
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--bound", type=int, default=10)
    sp.add_argument("--mode", choices=MODES, default="generic")
    sp.add_argument("--allow-open", action="store_true", help="permit an observational sweep outside the proven regimes")
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--no-timestamp", action="store_true")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except InputError as e:
        print(f"quadind: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
