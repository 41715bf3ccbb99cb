"""Command-line front end.

Exit codes: 0 success, 1 usage or parse error, 2 fuel exhausted, 3 axiom
failure, 4 cut invariant violation.  With ``--format json`` every invocation
prints exactly one JSON object carrying a ``"kind"`` field.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .cuts import CutError, cut_from_rational, cut_sqrt, refine, render_decimal
from .dsl import DslError, parse
from .evaluator import ArityMismatch, FuelExhausted
from .models import (
    AxiomsRefused, ModelError, RuleModel, build_iso, builtin_model, check_axioms, load_model,
)
from .quotients import format_rat, parse_rat

EXIT_OK, EXIT_USAGE, EXIT_FUEL, EXIT_AXIOMS, EXIT_INVARIANT = 0, 1, 2, 3, 4

DEFAULT_FUEL = 10_000_000
DEFAULT_EPS = "1e-6"
DEFAULT_DEPTH = 10


@dataclass(frozen=True)
class CliConfig:
    fuel: int = DEFAULT_FUEL
    eps: str = DEFAULT_EPS
    format: str = "text"

    def __post_init__(self):
        if not isinstance(self.fuel, int) or self.fuel < 1:
            raise ValueError("fuel must be an integer >= 1")
        if parse_rat(self.eps).sign() <= 0:
            raise ValueError("eps must be positive")
        if self.format not in ("text", "json"):
            raise ValueError("format must be 'text' or 'json'")

    @classmethod
    def load(cls, path: str | None) -> CliConfig:
        if path is None:
            return cls()
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
        unknown = set(data) - {"fuel", "eps", "format"}
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        if "eps" in data:
            data["eps"] = str(data["eps"])
        return cls(**data)


class UsageError(Exception):
    def __init__(self, message, **extra):
        super().__init__(message)
        self.extra = extra


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Out:
    def __init__(self, fmt: str, stdout, stderr):
        self.json = fmt == "json"
        self.stdout = stdout
        self.stderr = stderr

    def emit(self, kind: str, text: str, **data):
        if self.json:
            print(json.dumps({"kind": kind, **data}, sort_keys=True), file=self.stdout)
        else:
            print(text, file=self.stdout)

    def error(self, code: int, message: str, **data):
        if self.json:
            print(json.dumps({"kind": "error", "exit": code, "message": message, **data},
                             sort_keys=True), file=self.stdout)
        else:
            print(f"error: {message}", file=self.stderr)
        return code


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_program(path: str):
    try:
        return parse(_read(path))
    except DslError as exc:
        d = exc.diagnostic
        raise UsageError(d.render(path), line=d.line, column=d.column,
                         diagnostic=d.kind) from None


def _load_model(spec: str, depth: int):
    if os.path.exists(spec):
        return load_model(_read(spec))
    model = builtin_model(spec)
    return model.fragment(depth) if isinstance(model, RuleModel) else model


def _natural_arg(text: str) -> int:
    if not text.isdigit():
        raise UsageError(f"argument {text!r} is not a natural number")
    return int(text)


def cmd_eval(args, cfg, out) -> int:
    program = _load_program(args.file)
    if args.name not in program:
        raise UsageError(f"{args.name!r} is not defined in {args.file}")
    values = [_natural_arg(a) for a in args.args]
    fuel = args.fuel if args.fuel is not None else cfg.fuel
    if fuel < 1:
        raise UsageError("--fuel must be >= 1")
    outcome = program.evaluate(args.name, values, fuel, jets=not args.no_jets)
    if isinstance(outcome, ArityMismatch):
        arity = program.arity(args.name)
        raise UsageError(f"{args.name} takes {arity} argument(s), got {len(values)}")
    if isinstance(outcome, FuelExhausted):
        out.emit("fuel_exhausted", f"fuel exhausted after {outcome.consumed} steps",
                 consumed=outcome.consumed, fuel=fuel)
        return EXIT_FUEL
    out.emit("value", str(outcome.value), value=outcome.value, consumed=outcome.consumed)
    return EXIT_OK


def cmd_check(args, cfg, out) -> int:
    program = _load_program(args.file)
    defs = [{"name": n, "arity": program.arity(n)} for n in program.names()]
    text = "\n".join(f"{d['name']}/{d['arity']}" for d in defs) or "(no definitions)"
    out.emit("check", text, definitions=defs)
    return EXIT_OK


def _render_report(report) -> str:
    def line(label, holds, cx):
        return f"{label}: ok" if holds else f"{label}: FAILS, counterexample {cx!r}"
    return "\n".join([
        line("D1 zero is not a successor", report.d1_holds, report.d1_counterexample),
        line("D2 successor is injective", report.d2_holds, report.d2_counterexample),
        line("D3 every element is reached from zero", report.d3_holds,
             report.d3_counterexample),
        f"examined {report.fragment_depth} element(s)",
    ])


def cmd_axioms(args, cfg, out) -> int:
    struct = _load_model(args.model, args.depth)
    report = check_axioms(struct, strict=args.strict)
    out.emit("axioms", _render_report(report), **report.to_dict())
    return EXIT_OK if report.ok else EXIT_AXIOMS


def cmd_iso(args, cfg, out) -> int:
    def resolve(spec):
        if os.path.exists(spec):
            return load_model(_read(spec))
        return builtin_model(spec)

    iso = build_iso(resolve(args.model_a), resolve(args.model_b), args.depth)
    text = "\n".join(f"{json.dumps(a)} -> {json.dumps(b)}" for a, b in iso.pairs)
    out.emit("iso", text, pairs=[list(p) for p in iso.pairs], depth=args.depth)
    return EXIT_OK


def cmd_cut(args, cfg, out) -> int:
    eps_text = args.eps if args.eps is not None else cfg.eps
    try:
        eps = parse_rat(eps_text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--eps {eps_text!r} is not a rational number") from None
    if eps.sign() <= 0:
        raise UsageError("--eps must be positive")
    if args.source == "sqrt":
        cut = cut_sqrt(_natural_arg(args.value))
    else:
        try:
            q = parse_rat(args.value)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"{args.value!r} is not a rational number") from None
        cut = cut_from_rational(q)
    digits, bound = render_decimal(cut, eps)
    lo, hi = refine(cut, eps)
    out.emit("cut", f"{digits} ± {bound}", value=digits, eps=bound,
             lo=format_rat(lo), hi=format_rat(hi))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    def common_flags(default):
        common = _Parser(add_help=False)
        common.add_argument("--format", choices=("text", "json"), default=default,
                            help="output format (default: text, or the config file's)")
        common.add_argument("--config", default=default,
                            help="JSON file with fuel/eps/format defaults")
        return common

    parser = _Parser(prog="peanokit", parents=[common_flags(None)],
                     description="Models of N, recursive functions, quotients and cuts.")
    # flags may sit before or after the subcommand; the subcommand must not reset them
    common = common_flags(argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("eval", parents=[common], help="evaluate a definition from an .rf file")
    p.add_argument("file")
    p.add_argument("name")
    p.add_argument("args", nargs="*")
    p.add_argument("--fuel", type=int, default=None)
    p.add_argument("--no-jets", action="store_true",
                   help="interpret recognised arithmetic step by step")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", parents=[common], help="parse and arity-check an .rf file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("axioms", parents=[common], help="check D1-D3 on a model")
    p.add_argument("--model", required=True, help="model file or builtin name")
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH,
                   help="fragment size for unbounded builtin models")
    p.add_argument("--strict", action="store_true",
                   help="check induction over all closed subsets (<= 12 elements)")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("iso", parents=[common], help="isomorphism prefix between two models")
    p.add_argument("--model-a", required=True)
    p.add_argument("--model-b", required=True)
    p.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("cut", parents=[common], help="approximate a Dedekind cut")
    p.add_argument("source", choices=("sqrt", "rat"))
    p.add_argument("value")
    p.add_argument("--eps", default=None)
    p.set_defaults(func=cmd_cut)
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    # errors raised while parsing flags still honour an explicit --format json
    wants_json = "--format=json" in argv or any(
        a == "--format" and b == "json" for a, b in zip(argv, argv[1:]))
    out = _Out("json" if wants_json else "text", stdout, stderr)
    try:
        args = build_parser().parse_args(argv)
        cfg = CliConfig.load(args.config)
        out = _Out(args.format or cfg.format, stdout, stderr)
        return args.func(args, cfg, out)
    except UsageError as exc:
        return out.error(EXIT_USAGE, str(exc), **exc.extra)
    except AxiomsRefused as exc:
        return out.error(EXIT_AXIOMS, str(exc), report=exc.report.to_dict())
    except (ModelError, ValueError, OSError) as exc:
        return out.error(EXIT_USAGE, str(exc))
    except CutError as exc:
        return out.error(EXIT_INVARIANT, str(exc))


if __name__ == "__main__":
    sys.exit(main())
