"""Oriented rewrite rules and budgeted normalization.

The five rules, read left to right::

    beta*  (x \\ A) {e} B        ->  (y \\ A[x:=B]) {e} B     x in FV(A), y fresh
    R1     (x \\ A) {e} A'       ->  A                        x not in FV(A), A =alpha A'
    R2     (x \\ (B {m} x)) {e} A ->  B {e*m} A               x not in FV(B)
    ext1   (x \\ (B {1} x))      ->  B                        x not in FV(B)
    ext2   (x \\ B) {1} A        ->  B                        x not in FV(B)

``normalize`` fires the leftmost-outermost redex, trying rules in the order
ext2, R2, R1, ext1, beta* at each position.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .terms import (
    ROOT, Abs, Position, PositionInvalid, Scaled, Term, Var, alpha_eq,
    fresh_var, format_position, replace_at, substitute, subterm_at,
)


class RuleId(enum.Enum):
    BETA_STAR = "beta*"
    R1 = "R1"
    R2 = "R2"
    EXT1 = "ext1"
    EXT2 = "ext2"

    def __str__(self):
        return self.value


class Direction(enum.Enum):
    FORWARD = "forward"
    BACKWARD = "backward"

    def flip(self) -> Direction:
        return Direction.BACKWARD if self is Direction.FORWARD else Direction.FORWARD

    def __str__(self):
        return self.value


class Status(enum.Enum):
    NORMAL = "Normal"
    BUDGET_EXHAUSTED = "BudgetExhausted"

    def __str__(self):
        return self.value


class RuleNotApplicable(ValueError):
    pass


@dataclass(frozen=True)
class RewriteStep:
    rule: RuleId
    direction: Direction
    at: Position
    before: Term
    after: Term

    def reversed(self) -> RewriteStep:
        return RewriteStep(self.rule, self.direction.flip(), self.at, self.after, self.before)

    def __str__(self):
        from .syntax import print_term
        return (f"{self.rule} {self.direction} @ {format_position(self.at)} : "
                f"{print_term(self.before)} ==> {print_term(self.after)}")


@dataclass
class Trace:
    steps: list[RewriteStep] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def __iter__(self) -> Iterator[RewriteStep]:
        return iter(self.steps)

    def __add__(self, other: Trace) -> Trace:
        return Trace(self.steps + other.steps)

    def reversed(self) -> Trace:
        return Trace([s.reversed() for s in reversed(self.steps)])

    def serialize(self) -> str:
        return "".join(f"{s}\n" for s in self.steps)


@dataclass
class NormalizeOutcome:
    result: Term
    trace: Trace
    status: Status

    @property
    def is_normal(self) -> bool:
        return self.status is Status.NORMAL


# -- local contractions: return the contractum or None -------------------

def contract_beta_star(s: Term) -> Optional[Term]:
    if not (isinstance(s, Scaled) and isinstance(s.left, Abs)):
        return None
    x, body, arg = s.left.binder, s.left.body, s.right
    if x not in body.fv:
        return None
    new_body = substitute(body, x, arg)
    y = fresh_var(arg.fv | new_body.fv | {x}, x)
    return Scaled(Abs(y, new_body), s.scale, arg)


def contract_r1(s: Term) -> Optional[Term]:
    if not (isinstance(s, Scaled) and isinstance(s.left, Abs)):
        return None
    body = s.left.body
    if s.left.binder in body.fv or not alpha_eq(body, s.right):
        return None
    return body


def contract_r2(s: Term) -> Optional[Term]:
    if not (isinstance(s, Scaled) and isinstance(s.left, Abs)):
        return None
    x, body = s.left.binder, s.left.body
    if not (isinstance(body, Scaled) and isinstance(body.right, Var)
            and body.right.name == x and x not in body.left.fv):
        return None
    return Scaled(body.left, s.scale * body.scale, s.right)


def contract_ext1(s: Term) -> Optional[Term]:
    if not isinstance(s, Abs):
        return None
    x, body = s.binder, s.body
    if not (isinstance(body, Scaled) and body.scale.is_one and isinstance(body.right, Var)
            and body.right.name == x and x not in body.left.fv):
        return None
    return body.left


def contract_ext2(s: Term) -> Optional[Term]:
    if not (isinstance(s, Scaled) and s.scale.is_one and isinstance(s.left, Abs)):
        return None
    if s.left.binder in s.left.body.fv:
        return None
    return s.left.body


CONTRACT: dict[RuleId, Callable[[Term], Optional[Term]]] = {
    RuleId.BETA_STAR: contract_beta_star,
    RuleId.R1: contract_r1,
    RuleId.R2: contract_r2,
    RuleId.EXT1: contract_ext1,
    RuleId.EXT2: contract_ext2,
}

PRIORITY = (RuleId.EXT2, RuleId.R2, RuleId.R1, RuleId.EXT1, RuleId.BETA_STAR)


def apply_rule(rule: RuleId, t: Term, at: Position = ROOT) -> Term:
    sub = subterm_at(t, at)
    new = CONTRACT[rule](sub)
    if new is None:
        raise RuleNotApplicable(f"{rule} does not apply at {format_position(at)}")
    return replace_at(t, at, new)


def step_beta_star(t: Term, at: Position = ROOT) -> Term:
    return apply_rule(RuleId.BETA_STAR, t, at)


def step_r1(t: Term, at: Position = ROOT) -> Term:
    return apply_rule(RuleId.R1, t, at)


def step_r2(t: Term, at: Position = ROOT) -> Term:
    return apply_rule(RuleId.R2, t, at)


def step_ext1(t: Term, at: Position = ROOT) -> Term:
    return apply_rule(RuleId.EXT1, t, at)


def step_ext2(t: Term, at: Position = ROOT) -> Term:
    return apply_rule(RuleId.EXT2, t, at)


def _find_redex(t: Term, path: list[str]):
    if t._normal:
        return None
    for rule in PRIORITY:
        new = CONTRACT[rule](t)
        if new is not None:
            return tuple(path), rule, new
    found = None
    if isinstance(t, Abs):
        path.append("B")
        found = _find_redex(t.body, path)
        path.pop()
    elif isinstance(t, Scaled):
        path.append("L")
        found = _find_redex(t.left, path)
        path.pop()
        if found is None:
            path.append("R")
            found = _find_redex(t.right, path)
            path.pop()
    if found is None:
        # normality only depends on the subtree, so the flag is safe to share
        object.__setattr__(t, "_normal", True)
    return found


def find_redex(t: Term) -> Optional[tuple[Position, RuleId, Term]]:
    """Leftmost-outermost redex as ``(position, rule, contractum)``."""
    return _find_redex(t, [])


def is_normal(t: Term) -> bool:
    return find_redex(t) is None


def normalize(t: Term, budget: int = 1000) -> NormalizeOutcome:
    if budget < 0:
        raise ValueError("budget must be >= 0")
    steps: list[RewriteStep] = []
    cur = t
    while True:
        found = find_redex(cur)
        if found is None:
            return NormalizeOutcome(cur, Trace(steps), Status.NORMAL)
        if len(steps) >= budget:
            return NormalizeOutcome(cur, Trace(steps), Status.BUDGET_EXHAUSTED)
        pos, rule, new = found
        nxt = replace_at(cur, pos, new)
        steps.append(RewriteStep(rule, Direction.FORWARD, pos, cur, nxt))
        cur = nxt


def redexes(t: Term) -> Iterator[tuple[Position, RuleId, Term]]:
    """Every forward rule instance at every position, in leftmost-outermost order."""
    stack: list[tuple[Position, Term]] = [(ROOT, t)]
    while stack:
        pos, s = stack.pop()
        if s._normal:
            continue
        for rule in PRIORITY:
            new = CONTRACT[rule](s)
            if new is not None:
                yield pos, rule, new
        if isinstance(s, Abs):
            stack.append((pos + ("B",), s.body))
        elif isinstance(s, Scaled):
            stack.append((pos + ("R",), s.right))
            stack.append((pos + ("L",), s.left))


__all__ = [
    "CONTRACT", "Direction", "NormalizeOutcome", "PRIORITY", "PositionInvalid",
    "RewriteStep", "RuleId", "RuleNotApplicable", "Status", "Trace", "apply_rule",
    "find_redex", "is_normal", "normalize", "redexes", "step_beta_star", "step_ext1",
    "step_ext2", "step_r1", "step_r2",
]
