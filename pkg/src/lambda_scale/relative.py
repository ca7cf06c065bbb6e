"""Relative (scaled) calculus over a base term ``A`` and a scale ``eps``.

Relative terms have their own syntax tree.  ``translate`` maps them to
ordinary terms by conjugating every construct with dilations around ``A``:

* ``E[x]          = x``
* ``E[B {m} C]    = A o_{eps^-1} ((A o_eps E[B]) {m} (A o_eps E[C]))``
* ``E[u \\ B]      = A o_{eps^-1} (z \\ ((u \\ (A o_eps E[B])) {1} (A o_{eps^-1} z)))``
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Union

from .emergent import ONE, CheckReport, dilation, random_scale, report_from
from .equiv import DEFAULT_BUDGET, EquivVerdict, equiv
from .scale import Scale
from .terms import Abs, Scaled, Term, Var, all_vars, fresh_var, substitute


class VariableClash(ValueError):
    pass


@dataclass(frozen=True)
class RelVar:
    name: str


@dataclass(frozen=True)
class RelAbs:
    binder: str
    body: "RelTerm"


@dataclass(frozen=True)
class RelScaled:
    left: "RelTerm"
    scale: Scale
    right: "RelTerm"


RelTerm = Union[RelVar, RelAbs, RelScaled]


@dataclass(frozen=True)
class RelContext:
    base: Term
    scale: Scale
    _inv: Scale = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_inv", self.scale.inverse())

    def up(self, d: Term) -> Term:
        """``A o_eps d``"""
        return dilation(self.base, self.scale, d)

    def down(self, d: Term) -> Term:
        """``A o_{eps^-1} d``"""
        return dilation(self.base, self._inv, d)


def rel_free_vars(b: RelTerm) -> frozenset:
    if isinstance(b, RelVar):
        return frozenset((b.name,))
    if isinstance(b, RelAbs):
        return rel_free_vars(b.body) - {b.binder}
    return rel_free_vars(b.left) | rel_free_vars(b.right)


def rel_all_vars(b: RelTerm) -> frozenset:
    if isinstance(b, RelVar):
        return frozenset((b.name,))
    if isinstance(b, RelAbs):
        return rel_all_vars(b.body) | {b.binder}
    return rel_all_vars(b.left) | rel_all_vars(b.right)


def _check_clash(ctx: RelContext, *terms: RelTerm) -> None:
    for b in terms:
        bad = rel_all_vars(b) & ctx.base.fv
        if bad:
            raise VariableClash(
                f"relative variables {sorted(bad)} are free in the base term")


def _translate(ctx: RelContext, b: RelTerm) -> Term:
    if isinstance(b, RelVar):
        return Var(b.name)
    if isinstance(b, RelScaled):
        left = ctx.up(_translate(ctx, b.left))
        right = ctx.up(_translate(ctx, b.right))
        return ctx.down(Scaled(left, b.scale, right))
    inner = Abs(b.binder, ctx.up(_translate(ctx, b.body)))
    z = fresh_var(ctx.base.fv | all_vars(inner), "z")
    return ctx.down(Abs(z, Scaled(inner, ONE, ctx.down(Var(z)))))


def translate(ctx: RelContext, b: RelTerm) -> Term:
    _check_clash(ctx, b)
    return _translate(ctx, b)


def translate_simplified(ctx: RelContext, u: str, b: RelTerm) -> Term:
    """Translation of ``u \\ b`` with the inner redex already contracted:
    ``A o_{eps^-1} (z \\ (A o_eps (E[b][u := A o_{eps^-1} z])))``.
    """
    _check_clash(ctx, RelAbs(u, b))
    eb = _translate(ctx, b)
    z = fresh_var(ctx.base.fv | all_vars(eb) | {u}, "z")
    return ctx.down(Abs(z, ctx.up(substitute(eb, u, ctx.down(Var(z))))))


def _rel_rename(b: RelTerm, old: str, new: str) -> RelTerm:
    return _rel_subst(b, old, RelVar(new), frozenset((new,)), frozenset())


def _rel_subst(b: RelTerm, v: str, c: RelTerm, c_fv: frozenset, avoid: frozenset) -> RelTerm:
    if isinstance(b, RelVar):
        return c if b.name == v else b
    if isinstance(b, RelScaled):
        return RelScaled(_rel_subst(b.left, v, c, c_fv, avoid), b.scale,
                         _rel_subst(b.right, v, c, c_fv, avoid))
    if b.binder == v or v not in rel_free_vars(b.body):
        return b
    x, body = b.binder, b.body
    if x in c_fv:
        z = fresh_var(rel_free_vars(body) | c_fv | avoid | {v}, x)
        body = _rel_rename(body, x, z)
        x = z
    return RelAbs(x, _rel_subst(body, v, c, c_fv, avoid))


def rel_substitute(ctx: RelContext, b: RelTerm, v: str, c: RelTerm) -> RelTerm:
    """``b[v := c]`` on the relative tree; renamed binders also avoid ``FV(A)``."""
    _check_clash(ctx, b, c, RelVar(v))
    return _rel_subst(b, v, c, rel_free_vars(c), ctx.base.fv)


def rel_equiv(ctx: RelContext, b: RelTerm, c: RelTerm,
              budget: int = DEFAULT_BUDGET) -> EquivVerdict:
    return equiv(translate(ctx, b), translate(ctx, c), budget)


def erase(b: RelTerm) -> Term:
    """Read a relative term as an ordinary one, constructor by constructor."""
    if isinstance(b, RelVar):
        return Var(b.name)
    if isinstance(b, RelAbs):
        return Abs(b.binder, erase(b.body))
    return Scaled(erase(b.left), b.scale, erase(b.right))


def lift(t: Term) -> RelTerm:
    """Inverse of ``erase``: reuse the base syntax for relative terms."""
    if isinstance(t, Var):
        return RelVar(t.name)
    if isinstance(t, Abs):
        return RelAbs(t.binder, lift(t.body))
    return RelScaled(lift(t.left), t.scale, lift(t.right))


def _show(b: RelTerm) -> str:
    from .syntax import print_term
    return print_term(erase(b))


def check_prelsub(ctx: RelContext, b: RelTerm, v: str, c: RelTerm,
                  budget: int = DEFAULT_BUDGET, label: str = "prelsub") -> CheckReport:
    """Translation commutes with substitution: ``E[b[v:=c]] == E[b][v := E[c]]``."""
    lhs = translate(ctx, rel_substitute(ctx, b, v, c))
    rhs = substitute(translate(ctx, b), v, translate(ctx, c))
    inst = f"b={_show(b)}, v={v}, c={_show(c)}"
    return report_from(label, inst, [equiv(lhs, rhs, budget)])


def check_psimply(ctx: RelContext, u: str, b: RelTerm, budget: int = DEFAULT_BUDGET,
                  label: str = "psimply") -> CheckReport:
    lhs = translate(ctx, RelAbs(u, b))
    rhs = translate_simplified(ctx, u, b)
    return report_from(label, f"u={u}, b={_show(b)}", [equiv(lhs, rhs, budget)])


def rule_instances(ctx: RelContext, rng: random.Random, depth: int,
                   variables=("p", "q", "r")) -> dict[str, tuple[RelTerm, RelTerm]]:
    """One random relative instance of each of the five rules, as ``(lhs, rhs)``."""
    from .generators import random_rel_term

    names = tuple(v for v in variables if v not in ctx.base.fv)

    def gen(d=depth):
        return random_rel_term(rng, d, names)

    def scale():
        return random_scale(rng)

    x = rng.choice(names)

    # beta*: (x \ C) {m} B  ==  (y \ C[x:=B]) {m} B, with x free in C
    c = gen()
    if x not in rel_free_vars(c):
        c = RelScaled(c, scale(), RelVar(x))
    bb = gen(max(1, depth - 1))
    m = scale()
    contracted = rel_substitute(ctx, c, x, bb)
    y = fresh_var(rel_all_vars(contracted) | rel_free_vars(bb) | ctx.base.fv | {x}, x)
    beta = (RelScaled(RelAbs(x, c), m, bb), RelScaled(RelAbs(y, contracted), m, bb))

    def without_x(d=depth):
        t = gen(d)
        if x in rel_free_vars(t):
            t = RelAbs(x, t)
        return t

    # R1: (x \ B) {m} B == B, x not free in B
    b1 = without_x()
    r1 = (RelScaled(RelAbs(x, b1), scale(), b1), b1)
    # R2: (x \ (B {n} x)) {m} C == B {m*n} C
    b2, c2, n, m2 = without_x(), gen(), scale(), scale()
    r2 = (RelScaled(RelAbs(x, RelScaled(b2, n, RelVar(x))), m2, c2), RelScaled(b2, m2 * n, c2))
    # ext1: x \ (B {1} x) == B
    b3 = without_x()
    e1 = (RelAbs(x, RelScaled(b3, ONE, RelVar(x))), b3)
    # ext2: (x \ B) {1} C == B
    b4, c4 = without_x(), gen()
    e2 = (RelScaled(RelAbs(x, b4), ONE, c4), b4)
    return {"beta*": beta, "R1": r1, "R2": r2, "ext1": e1, "ext2": e2}


def check_scaled_calculus(ctx: RelContext, seed: int = 0, count: int = 50,
                          budget: int = DEFAULT_BUDGET, depth: int = 2) -> list[CheckReport]:
    rng = random.Random(seed)
    reports = []
    for k in range(count):
        for rule, (lhs, rhs) in rule_instances(ctx, rng, depth).items():
            reports.append(report_from(
                f"rel.{rule}[{k}]", f"{_show(lhs)} == {_show(rhs)}",
                [rel_equiv(ctx, lhs, rhs, budget)]))
    return reports


def relative_suite(ctx: RelContext, seed: int = 0, count: int = 50, depth: int = 2,
                   budget: int = DEFAULT_BUDGET) -> list[CheckReport]:
    """prelsub and psimply instances plus the five relative rule families."""
    from .generators import random_rel_term

    rng = random.Random(seed)
    names = tuple(v for v in ("p", "q", "r") if v not in ctx.base.fv)
    reports = []
    for k in range(count):
        b = random_rel_term(rng, depth, names)
        c = random_rel_term(rng, max(1, depth - 1), names)
        v = rng.choice(names)
        reports.append(check_prelsub(ctx, b, v, c, budget, label=f"prelsub[{k}]"))
        u = rng.choice(names)
        reports.append(check_psimply(ctx, u, random_rel_term(rng, depth, names), budget,
                                     label=f"psimply[{k}]"))
    reports.extend(check_scaled_calculus(ctx, seed, count, budget, depth))
    return reports
