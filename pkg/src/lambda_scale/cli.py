"""Command line interface: ``lambda-scale <command> ...``.

Exit codes: 0 success / Proved, 2 Unknown (or a check batch with an
unproved instance), 1 usage or parse errors.
"""
from __future__ import annotations

import argparse
import shlex
import sys
from typing import Mapping, Optional, Sequence, TextIO

from . import emergent, relative
from .equiv import DEFAULT_BUDGET, equiv
from .rules import normalize
from .scale import parse_scale
from .syntax import TermSyntaxError, parse_term, print_term, to_dot
from .terms import Term


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lambda-scale", description="Scaled lambda calculus toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("parse", help="print the canonical form of a term")
    sp.add_argument("expr")
    sp.add_argument("--dot", metavar="FILE", help="write the syntactic tree as GraphViz")

    sp = sub.add_parser("reduce", help="normalize a term")
    sp.add_argument("expr")
    sp.add_argument("--budget", type=int, default=1000)
    sp.add_argument("--trace", metavar="FILE")

    sp = sub.add_parser("equiv", help="try to prove two terms equivalent")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--trace", metavar="FILE")

    sp = sub.add_parser("translate", help="translate a relative term to a base term")
    sp.add_argument("expr")
    sp.add_argument("--base", required=True)
    sp.add_argument("--scale", required=True)
    sp.add_argument("--simplified", action="store_true",
                    help="use the contracted form of the abstraction clause")

    sp = sub.add_parser("check", help="run a batch of law checks")
    sp.add_argument("suite", choices=("irq", "lambda", "relative"))
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int)
    sp.add_argument("--depth", type=int)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--base", default="a")
    sp.add_argument("--scale", default="e")
    sp.add_argument("--trace", metavar="FILE")

    sub.add_parser("repl", help="interactive loop")
    return p


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _scale(text: str):
    try:
        return parse_scale(text)
    except ValueError as exc:
        raise UsageError(f"bad scale {text!r}: {exc}") from None


def run(args: argparse.Namespace, env: Mapping[str, Term], out: TextIO) -> int:
    def term(src: str) -> Term:
        return parse_term(src, env)

    if args.command == "parse":
        t = term(args.expr)
        print(print_term(t), file=out)
        if args.dot:
            _write(args.dot, to_dot(t))
        return 0

    if args.command == "reduce":
        outcome = normalize(term(args.expr), args.budget)
        print(print_term(outcome.result), file=out)
        print(f"status: {outcome.status} steps={len(outcome.trace)}", file=out)
        if args.trace:
            _write(args.trace, outcome.trace.serialize())
        return 0

    if args.command == "equiv":
        verdict = equiv(term(args.left), term(args.right), args.budget)
        print(f"{verdict.verdict} explored={verdict.explored}", file=out)
        if args.trace and verdict.trace is not None:
            _write(args.trace, verdict.trace.serialize())
        return 0 if verdict.proved else 2

    if args.command == "translate":
        ctx = relative.RelContext(term(args.base), _scale(args.scale))
        rel = relative.lift(term(args.expr))
        if args.simplified:
            if not isinstance(rel, relative.RelAbs):
                raise UsageError("--simplified needs an abstraction (u \\ B)")
            result = relative.translate_simplified(ctx, rel.binder, rel.body)
        else:
            result = relative.translate(ctx, rel)
        print(print_term(result), file=out)
        return 0

    if args.command == "check":
        if args.suite == "irq":
            reports = emergent.irq_suite(args.seed, args.count or 200, args.depth or 4, args.budget)
        elif args.suite == "lambda":
            reports = emergent.lambda_suite(args.seed, args.count or 0, args.depth or 4)
        else:
            ctx = relative.RelContext(term(args.base), _scale(args.scale))
            reports = relative.relative_suite(ctx, args.seed, args.count or 50, args.depth or 2,
                                              args.budget)
        for r in reports:
            print(r.line(), file=out)
        if args.trace:
            _write(args.trace, "".join(f"# {r.axiom}: {r.instance}\n{r.trace_text()}\n"
                                       for r in reports))
        problem = emergent.summary(reports)
        if problem:
            print(problem, file=sys.stderr)
            return 2
        return 0

    raise UsageError(f"unknown command {args.command!r}")


def repl(inp: TextIO = sys.stdin, out: TextIO = sys.stdout) -> int:
    """Read commands line by line; ``let NAME = EXPR`` defines a macro."""
    parser = build_parser()
    env: dict[str, Term] = {}
    interactive = inp.isatty()
    while True:
        if interactive:
            out.write("λε> ")
            out.flush()
        line = inp.readline()
        if not line:
            return 0
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line in ("quit", "exit", ":q"):
            return 0
        try:
            if line.startswith("let "):
                name, _, src = line[4:].partition("=")
                name = name.strip()
                if not src or not name.isidentifier():
                    raise UsageError("usage: let NAME = EXPR")
                env[name] = parse_term(src, env)
                print(f"{name} = {print_term(env[name])}", file=out)
                continue
            lex = shlex.shlex(line, posix=True)
            lex.whitespace_split = True
            lex.escape = ""
            argv = list(lex)
            if argv and argv[0] == "repl":
                raise UsageError("already in the repl")
            code = run(parser.parse_args(argv), env, out)
            if code:
                print(f"(exit {code})", file=out)
        except (UsageError, TermSyntaxError, ValueError) as exc:
            print(f"error: {exc}", file=out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "repl":
            return repl()
        return run(args, {}, sys.stdout)
    except (UsageError, TermSyntaxError, relative.VariableClash) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def cli_main(argv: Optional[Sequence[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
