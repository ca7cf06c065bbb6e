"""Classical untyped lambda calculus used as an independent oracle.

Works on de Bruijn terms (``int`` index, ``("lam", body)``, ``("app", f, a)``,
``("free", name)``) and performs normal-order beta/eta reduction.  Only the
conversions at the boundary know about the scaled term syntax.
"""
from __future__ import annotations

from .rules import NormalizeOutcome, Status, Trace
from .scale import Scale
from .terms import Abs, Scaled, Term, Var, fresh_var


_ONE = Scale.one()


class NotT1Term(ValueError):
    pass


def to_debruijn(t: Term, env: tuple[str, ...] = ()):
    if isinstance(t, Var):
        if t.name in env:
            return len(env) - 1 - max(i for i, n in enumerate(env) if n == t.name)
        return ("free", t.name)
    if isinstance(t, Abs):
        return ("lam", to_debruijn(t.body, env + (t.binder,)))
    if not t.scale.is_one:
        raise NotT1Term(f"scaled application with scale {t.scale}")
    return ("app", to_debruijn(t.left, env), to_debruijn(t.right, env))


def from_debruijn(n, hint: str = "v") -> Term:
    names: list[str] = []

    def frees(m, acc):
        if isinstance(m, tuple):
            if m[0] == "free":
                acc.add(m[1])
            else:
                for sub in m[1:]:
                    frees(sub, acc)
        return acc

    taken = frees(n, set())

    def go(m) -> Term:
        if isinstance(m, int):
            return Var(names[len(names) - 1 - m])
        if m[0] == "free":
            return Var(m[1])
        if m[0] == "lam":
            name = fresh_var(taken | set(names), hint)
            names.append(name)
            body = go(m[1])
            names.pop()
            return Abs(name, body)
        return Scaled(go(m[1]), _ONE, go(m[2]))

    return go(n)


def shift(m, d: int, cutoff: int = 0):
    if isinstance(m, int):
        return m + d if m >= cutoff else m
    if m[0] == "free":
        return m
    if m[0] == "lam":
        return ("lam", shift(m[1], d, cutoff + 1))
    return ("app", shift(m[1], d, cutoff), shift(m[2], d, cutoff))


def subst(m, j: int, s):
    if isinstance(m, int):
        return s if m == j else m
    if m[0] == "free":
        return m
    if m[0] == "lam":
        return ("lam", subst(m[1], j + 1, shift(s, 1)))
    return ("app", subst(m[1], j, s), subst(m[2], j, s))


def beta(body, arg):
    return shift(subst(body, 0, shift(arg, 1)), -1)


def occurs(m, j: int) -> bool:
    if isinstance(m, int):
        return m == j
    if m[0] == "free":
        return False
    if m[0] == "lam":
        return occurs(m[1], j + 1)
    return occurs(m[1], j) or occurs(m[2], j)


def step(m):
    """One leftmost-outermost beta or eta step, or ``None`` if ``m`` is normal."""
    if isinstance(m, int) or m[0] == "free":
        return None
    if m[0] == "lam":
        body = m[1]
        if isinstance(body, tuple) and body[0] == "app" and body[2] == 0 and not occurs(body[1], 0):
            return shift(body[1], -1)
        inner = step(body)
        return None if inner is None else ("lam", inner)
    f, a = m[1], m[2]
    if isinstance(f, tuple) and f[0] == "lam":
        return beta(f[1], a)
    inner = step(f)
    if inner is not None:
        return ("app", inner, a)
    inner = step(a)
    return None if inner is None else ("app", f, inner)


def lambda_oracle_normalize(t: Term, budget: int = 1000) -> NormalizeOutcome:
    """Normal-order beta-eta normalization of a neutral-scale term.

    The returned trace is empty: the oracle does not produce rule-level steps.
    """
    m = to_debruijn(t)
    for _ in range(budget):
        nxt = step(m)
        if nxt is None:
            return NormalizeOutcome(from_debruijn(m), Trace(), Status.NORMAL)
        m = nxt
    status = Status.NORMAL if step(m) is None else Status.BUDGET_EXHAUSTED
    return NormalizeOutcome(from_debruijn(m), Trace(), status)
