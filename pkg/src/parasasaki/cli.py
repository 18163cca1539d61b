"""Command-line front end.

Exit codes: 0 success, 1 invalid structure or failed classification,
2 parse or usage error, 3 closed form disagrees with direct computation.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

from .algebra import ALPHA, BETA, PolyParseError, UnknownIndeterminateError, parse_poly
from .errors import ConsistencyError, ManifoldParseError, StructureError
from .fixtures import SOURCES, builtin_spec
from .manifold_io import format_manifold, parse_manifold
from .report import Report, color_enabled, emit_report
from . import workbench as wbm

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_CONSISTENCY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class CommandResult:
    code: int
    output: str = ""
    error: str = ""


def _common(p: argparse.ArgumentParser, kind=False, potential=False):
    p.add_argument("source", nargs="+", metavar="SOURCE",
                   help="manifold file, '-' for stdin, 'builtin NAME' or 'builtin:NAME'")
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--no-jacobi-check", action="store_true",
                   help="warn instead of failing when the brackets violate Jacobi")
    p.add_argument("--set", action="append", default=[], metavar="NAME=EXPR",
                   help="substitute a manifold parameter")
    if kind:
        p.add_argument("--kind", choices=wbm.KINDS, default="lc")
        p.add_argument("--alpha", default=None, metavar="EXPR")
        p.add_argument("--beta", default=None, metavar="EXPR")
    if potential:
        p.add_argument("--potential", choices=("xi", "k"), default="xi")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parasasaki", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    _common(sub.add_parser("validate", help="check the structure axioms"))
    _common(sub.add_parser("classify", help="para-Sasaki-like test and Levi-Civita classification"))
    for name, text in (("connection", "nonzero connection components"),
                       ("curvature", "nonzero curvature components R_ijkl"),
                       ("ricci", "Ricci tensor"),
                       ("scalar", "scalar curvature"),
                       ("einstein", "Einstein-like constants a, b, c")):
        _common(sub.add_parser(name, help=text), kind=True)
    _common(sub.add_parser("soliton", help="Ricci-like soliton constants"), kind=True, potential=True)
    _common(sub.add_parser("crosscheck", help="every identity and printed table"))
    b = sub.add_parser("builtin", help="write a built-in manifold file")
    b.add_argument("name", choices=sorted(SOURCES))
    b.add_argument("--set", action="append", default=[], metavar="NAME=EXPR")
    b.add_argument("-o", "--output", default=None, metavar="FILE")
    return parser


def _bindings(items, params) -> dict:
    out = {}
    for item in items:
        name, sep, expr = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise UsageError(f"--set expects NAME=EXPR, got {item!r}")
        out[name] = parse_poly(expr, allowed=params)
    return out


def _load_spec(args, stdin):
    src = args.source
    if len(src) == 2 and src[0] == "builtin":
        spec = builtin_spec(src[1])
    elif len(src) == 1 and src[0].startswith("builtin:"):
        spec = builtin_spec(src[0].split(":", 1)[1])
    elif len(src) == 1:
        if src[0] == "-":
            text = (stdin if stdin is not None else sys.stdin).read()
        else:
            with open(src[0], encoding="utf-8") as fh:
                text = fh.read()
        spec = parse_manifold(text)
    else:
        raise UsageError("expected FILE, '-', 'builtin NAME' or 'builtin:NAME'")
    if args.set:
        spec = spec.substitute(_bindings(args.set, spec.params))
    return spec


def _connection_parameter(text, default, params):
    return default if text is None else parse_poly(text, allowed=params)


def _dispatch(args, stdin) -> tuple:
    if args.command == "builtin":
        spec = builtin_spec(args.name)
        if args.set:
            spec = spec.substitute(_bindings(args.set, spec.params))
        text = format_manifold(spec)
        if args.output:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
            return None, EXIT_OK, ""
        return None, EXIT_OK, text

    spec = _load_spec(args, stdin)
    manifold = spec.build(check_jacobi=not args.no_jacobi_check)
    alpha, beta = ALPHA, BETA
    if hasattr(args, "kind"):
        alpha = _connection_parameter(args.alpha, ALPHA, spec.params)
        beta = _connection_parameter(args.beta, BETA, spec.params)
    wb = wbm.Workbench(manifold, alpha, beta)

    if args.command == "crosscheck":
        report, code = wbm.crosscheck_report(wb)
        return report, code, ""

    if args.command == "validate":
        report = Report("validate")
        wbm.add_params(report, wb)
        ok = wbm.add_validation(report, wb)
        return report, EXIT_OK if ok else EXIT_INVALID, ""

    # every other command needs a valid structure
    if not wb.validation.ok:
        report = Report(args.command)
        wbm.add_params(report, wb)
        wbm.add_validation(report, wb)
        names = ", ".join(a.name for a in wb.validation.failures())
        return report, EXIT_INVALID, f"invalid structure: {names}"

    if args.command == "classify":
        return wbm.classify_report(wb), EXIT_OK, ""
    if args.command == "connection":
        return wbm.connection_report(wb, args.kind), EXIT_OK, ""
    if args.command == "curvature":
        return wbm.curvature_report(wb, args.kind), EXIT_OK, ""
    if args.command == "ricci":
        return wbm.ricci_report(wb, args.kind), EXIT_OK, ""
    if args.command == "scalar":
        return wbm.scalar_report(wb, args.kind), EXIT_OK, ""
    if args.command == "einstein":
        report, t = wbm.einstein_report(wb, args.kind)
        return report, EXIT_OK if t.status == "unique" else EXIT_INVALID, ""
    if args.command == "soliton":
        report, t = wbm.soliton_report(wb, args.kind, args.potential)
        return report, EXIT_OK if t.status == "unique" else EXIT_INVALID, ""
    raise UsageError(f"unknown command {args.command!r}")  # pragma: no cover


def run_command(argv, stdin=None, color: bool = False) -> CommandResult:
    """Run one command; never raises for user errors and never exits."""
    fmt = "text"
    try:
        args = build_parser().parse_args(list(argv))
        fmt = getattr(args, "format", "text")
        report, code, extra = _dispatch(args, stdin)
    except UsageError as exc:
        return CommandResult(EXIT_USAGE, "", f"usage error: {exc}\n")
    except SystemExit as exc:  # --help
        return CommandResult(exc.code or 0)
    except (ManifoldParseError, PolyParseError, UnknownIndeterminateError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        return CommandResult(EXIT_USAGE, "", f"parse error: {msg}\n")
    except OSError as exc:
        return CommandResult(EXIT_USAGE, "", f"cannot read input: {exc}\n")
    except StructureError as exc:
        return CommandResult(EXIT_INVALID, emit_report(wbm.structure_error_report(exc), fmt, color),
                             f"structure error: {exc}\n")
    except ConsistencyError as exc:
        return CommandResult(EXIT_CONSISTENCY, emit_report(wbm.consistency_report(exc), fmt, color),
                             f"consistency failure: {exc}\n")
    if report is None:
        return CommandResult(code, extra, "")
    return CommandResult(code, emit_report(report, fmt, color), extra + "\n" if extra else "")


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    res = run_command(argv, color=color_enabled(sys.stdout))
    if res.output:
        sys.stdout.write(res.output)
    if res.error:
        sys.stderr.write(res.error)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
