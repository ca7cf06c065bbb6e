"""Term syntax, variables, alpha-equivalence and capture-avoiding substitution.

Terms are immutable trees built from three constructors:

* ``Var(name)``
* ``Abs(binder, body)`` -- written ``(x \\ A)``
* ``Scaled(left, scale, right)`` -- written ``(A {e} B)``

Every node caches its free variables, its size, and (lazily) a canonical
alpha-invariant key, so these queries are cheap inside the rewrite loop.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Union

from .scale import Scale

Position = tuple[str, ...]
"""Path from the root: ``"L"``/``"R"`` for the sides of a scaled node, ``"B"`` for a body."""

ROOT: Position = ()


class PositionInvalid(LookupError):
    pass


@dataclass(frozen=True)
class Var:
    name: str
    fv: frozenset = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)
    _key: str | None = field(default=None, init=False, repr=False, compare=False)
    _normal: bool = field(default=False, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "fv", frozenset((self.name,)))
        object.__setattr__(self, "size", 1)


@dataclass(frozen=True)
class Abs:
    binder: str
    body: "Term"
    fv: frozenset = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)
    _key: str | None = field(default=None, init=False, repr=False, compare=False)
    _normal: bool = field(default=False, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "fv", self.body.fv - {self.binder})
        object.__setattr__(self, "size", self.body.size + 1)


@dataclass(frozen=True)
class Scaled:
    left: "Term"
    scale: Scale
    right: "Term"
    fv: frozenset = field(init=False, repr=False, compare=False)
    size: int = field(init=False, repr=False, compare=False)
    _key: str | None = field(default=None, init=False, repr=False, compare=False)
    _normal: bool = field(default=False, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "fv", self.left.fv | self.right.fv)
        object.__setattr__(self, "size", self.left.size + self.right.size + 1)


Term = Union[Var, Abs, Scaled]


def all_vars(t: Term) -> frozenset:
    """Every variable name occurring in ``t``, binders included."""
    out: set[str] = set()
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            out.add(s.name)
        elif isinstance(s, Abs):
            out.add(s.binder)
            stack.append(s.body)
        else:
            stack.append(s.left)
            stack.append(s.right)
    return frozenset(out)


def free_vars(t: Term) -> frozenset:
    return t.fv


def _key_into(t: Term, env: dict[str, int], depth: int, out: list[str]) -> None:
    if isinstance(t, Var):
        lvl = env.get(t.name)
        out.append(t.name if lvl is None else f"#{depth - lvl}")
    elif isinstance(t, Abs):
        saved = env.get(t.binder)
        env[t.binder] = depth + 1
        out.append("(\\ ")
        _key_into(t.body, env, depth + 1, out)
        out.append(")")
        if saved is None:
            del env[t.binder]
        else:
            env[t.binder] = saved
    else:
        out.append("(")
        _key_into(t.left, env, depth, out)
        out.append(" {")
        out.append(str(t.scale))
        out.append("} ")
        _key_into(t.right, env, depth, out)
        out.append(")")


def alpha_key(t: Term) -> str:
    """Canonical string of ``t`` with bound variables as de Bruijn indices.

    Two terms are alpha-equivalent exactly when their keys are equal.
    """
    if t._key is None:
        out: list[str] = []
        _key_into(t, {}, 0, out)
        object.__setattr__(t, "_key", "".join(out))
    return t._key


def alpha_eq(a: Term, b: Term) -> bool:
    if a is b:
        return True
    if a.size != b.size or a.fv != b.fv:
        return False
    return alpha_key(a) == alpha_key(b)


def fresh_var(avoid, hint: str) -> str:
    """First of ``hint``, ``hint_1``, ``hint_2``, ... not in ``avoid``."""
    if hint not in avoid:
        return hint
    i = 1
    while f"{hint}_{i}" in avoid:
        i += 1
    return f"{hint}_{i}"


def substitute(a: Term, v: str, b: Term) -> Term:
    """``a[v := b]``, renaming binders of ``a`` that would capture ``FV(b)``."""
    if v not in a.fv:
        return a
    if isinstance(a, Var):
        return b
    if isinstance(a, Scaled):
        return Scaled(substitute(a.left, v, b), a.scale, substitute(a.right, v, b))
    # v is free in a, so a.binder != v
    x, body = a.binder, a.body
    if x in b.fv:
        z = fresh_var(body.fv | b.fv | {v}, x)
        body = substitute(body, x, Var(z))
        x = z
    return Abs(x, substitute(body, v, b))


def rename_binder(t: Abs, new: str) -> Abs:
    if new == t.binder:
        return t
    if new in t.fv:
        raise ValueError(f"renaming binder to {new!r} would capture a free variable")
    return Abs(new, substitute(t.body, t.binder, Var(new)))


def subterm_at(t: Term, pos: Position) -> Term:
    for i, step in enumerate(pos):
        if step == "B" and isinstance(t, Abs):
            t = t.body
        elif step == "L" and isinstance(t, Scaled):
            t = t.left
        elif step == "R" and isinstance(t, Scaled):
            t = t.right
        else:
            raise PositionInvalid(f"no subterm at {format_position(pos[: i + 1])}")
    return t


def replace_at(t: Term, pos: Position, new: Term) -> Term:
    if not pos:
        return new
    head, rest = pos[0], pos[1:]
    if head == "B" and isinstance(t, Abs):
        return Abs(t.binder, replace_at(t.body, rest, new))
    if head == "L" and isinstance(t, Scaled):
        return Scaled(replace_at(t.left, rest, new), t.scale, t.right)
    if head == "R" and isinstance(t, Scaled):
        return Scaled(t.left, t.scale, replace_at(t.right, rest, new))
    raise PositionInvalid(f"no subterm at {format_position(pos)}")


def positions(t: Term, prefix: Position = ROOT) -> Iterator[tuple[Position, Term]]:
    """Pre-order (leftmost-outermost) walk of ``(position, subterm)`` pairs."""
    stack = [(prefix, t)]
    while stack:
        pos, s = stack.pop()
        yield pos, s
        if isinstance(s, Abs):
            stack.append((pos + ("B",), s.body))
        elif isinstance(s, Scaled):
            stack.append((pos + ("R",), s.right))
            stack.append((pos + ("L",), s.left))


def format_position(pos: Position) -> str:
    return ".".join(pos) if pos else "."


def parse_position(text: str) -> Position:
    text = text.strip()
    if text in (".", ""):
        return ROOT
    parts = tuple(text.split("."))
    if any(p not in ("L", "R", "B") for p in parts):
        raise ValueError(f"bad position {text!r}")
    return parts


def depth(t: Term) -> int:
    if isinstance(t, Var):
        return 1
    if isinstance(t, Abs):
        return 1 + depth(t.body)
    return 1 + max(depth(t.left), depth(t.right))
