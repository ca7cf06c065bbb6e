"""Concrete syntax: parser, canonical printer and GraphViz export.

Grammar::

    term  := IDENT
           | '(' IDENT '\\' term ')'          abstraction
           | '(' term '{' scale '}' term ')'  scaled application
           | '(' term term ')'                application, same as {1}
           | 'dil' '{' scale '}' '(' term ',' term ')'

``dil{e}(B, A)`` is the dilation ``((y \\ A) {e} B)`` with ``y`` fresh.
``λ`` is accepted in place of ``\\``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Mapping, Optional

from .scale import BadScaleLiteral, Scale, parse_scale
from .terms import Abs, Scaled, Term, Var, fresh_var

RESERVED = frozenset({"dil", "let"})

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<lam>\\|λ)
  | (?P<punct>[(){},])
""", re.VERBOSE)


@dataclass(frozen=True)
class SourceSpan:
    start: int
    end: int


class TermSyntaxError(ValueError):
    def __init__(self, span: SourceSpan, message: str):
        super().__init__(f"{message} at {span.start}..{span.end}")
        self.span = span
        self.message = message


class UnbalancedParens(TermSyntaxError):
    pass


class ScaleSyntaxError(TermSyntaxError, BadScaleLiteral):
    pass


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    start: int
    end: int


def _tokenize(src: str) -> list[_Tok]:
    toks = []
    i = 0
    while i < len(src):
        if src[i] == "{":
            # scale literals are lexed whole, up to the closing brace
            j = src.find("}", i + 1)
            if j < 0:
                raise UnbalancedParens(SourceSpan(i, len(src)), "unterminated '{'")
            toks.append(_Tok("scale", src[i + 1:j], i, j + 1))
            i = j + 1
            continue
        m = _TOKEN_RE.match(src, i)
        if m is None:
            raise TermSyntaxError(SourceSpan(i, i + 1), f"unexpected character {src[i]!r}")
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), m.start(), m.end()))
        i = m.end()
    return toks


class _Parser:
    def __init__(self, src: str, env: Optional[Mapping[str, Term]]):
        self.src = src
        self.toks = _tokenize(src)
        self.i = 0
        self.env = env or {}

    def peek(self) -> Optional[_Tok]:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def _eof_span(self) -> SourceSpan:
        return SourceSpan(len(self.src), len(self.src))

    def next(self, what: str) -> _Tok:
        tok = self.peek()
        if tok is None:
            raise UnbalancedParens(self._eof_span(), f"unexpected end of input, expected {what}")
        self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        tok = self.next(repr(text))
        if tok.text != text:
            cls = UnbalancedParens if text == ")" else TermSyntaxError
            raise cls(SourceSpan(tok.start, tok.end), f"expected {text!r}, found {tok.text!r}")
        return tok

    def scale(self, tok: _Tok) -> Scale:
        try:
            return parse_scale(tok.text)
        except ValueError as exc:
            raise ScaleSyntaxError(SourceSpan(tok.start, tok.end), str(exc)) from None

    def ident(self, tok: _Tok) -> str:
        if tok.kind != "ident" or tok.text in RESERVED:
            raise TermSyntaxError(SourceSpan(tok.start, tok.end),
                                  f"expected a variable, found {tok.text!r}")
        return tok.text

    def term(self) -> Term:
        tok = self.next("a term")
        if tok.kind == "ident" and tok.text == "dil":
            return self.dilation(tok)
        if tok.kind == "ident":
            name = self.ident(tok)
            return self.env.get(name) or Var(name)
        if tok.text != "(":
            cls = UnbalancedParens if tok.text == ")" else TermSyntaxError
            raise cls(SourceSpan(tok.start, tok.end), f"unexpected {tok.text!r}")
        nxt, after = self.peek(), (self.toks[self.i + 1] if self.i + 1 < len(self.toks) else None)
        if nxt is not None and nxt.kind == "ident" and after is not None and after.kind == "lam":
            binder = self.ident(self.next("a binder"))
            self.next("'\\'")
            body = self.term()
            self.expect(")")
            return Abs(binder, body)
        left = self.term()
        nxt = self.peek()
        if nxt is not None and nxt.kind == "scale":
            self.i += 1
            sc = self.scale(nxt)
        else:
            sc = Scale.one()
        right = self.term()
        self.expect(")")
        return Scaled(left, sc, right)

    def dilation(self, head: _Tok) -> Term:
        tok = self.next("a scale")
        if tok.kind != "scale":
            raise TermSyntaxError(SourceSpan(tok.start, tok.end), "expected '{scale}' after 'dil'")
        sc = self.scale(tok)
        self.expect("(")
        base = self.term()
        self.expect(",")
        arg = self.term()
        self.expect(")")
        y = fresh_var(arg.fv | base.fv, "y")
        return Scaled(Abs(y, arg), sc, base)

    def parse(self) -> Term:
        t = self.term()
        tok = self.peek()
        if tok is not None:
            cls = UnbalancedParens if tok.text == ")" else TermSyntaxError
            raise cls(SourceSpan(tok.start, len(self.src)), f"trailing input {tok.text!r}")
        return t


def parse_term(src: str, env: Optional[Mapping[str, Term]] = None) -> Term:
    """Parse ``src``; identifiers bound in ``env`` expand to their terms."""
    return _Parser(src, env).parse()


def print_term(t: Term) -> str:
    out: list[str] = []

    def go(s: Term) -> None:
        if isinstance(s, Var):
            out.append(s.name)
        elif isinstance(s, Abs):
            out.append(f"({s.binder} \\ ")
            go(s.body)
            out.append(")")
        else:
            out.append("(")
            go(s.left)
            out.append(f" {{{s.scale}}} ")
            go(s.right)
            out.append(")")

    go(t)
    return "".join(out)


def _dot_label(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(t: Term, name: str = "term") -> str:
    """GraphViz digraph of the syntactic tree; node ids are pre-order indices."""
    lines = [f"digraph {name} {{"]
    counter = 0

    def node(label: str) -> str:
        nonlocal counter
        nid = f"n{counter}"
        counter += 1
        lines.append(f"  {nid} [label={_dot_label(label)}];")
        return nid

    def go(s: Term) -> str:
        if isinstance(s, Var):
            return node(s.name)
        if isinstance(s, Abs):
            me = node("λ")
            leaf = node(s.binder)
            body = go(s.body)
            lines.append(f"  {me} -> {leaf} [label=L];")
            lines.append(f"  {me} -> {body} [label=R];")
            return me
        me = node(str(s.scale))
        left = go(s.left)
        right = go(s.right)
        lines.append(f"  {me} -> {left} [label=L];")
        lines.append(f"  {me} -> {right} [label=R];")
        return me

    go(t)
    lines.append("}")
    return "\n".join(lines) + "\n"
