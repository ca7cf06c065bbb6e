"""Dilations, the idempotent right quasigroup laws, and the neutral-scale fragment."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .classical import NotT1Term, lambda_oracle_normalize
from .equiv import DEFAULT_BUDGET, EquivVerdict, Verdict, equiv
from .rules import Trace, normalize
from .scale import Scale
from .terms import Abs, Scaled, Term, Var, alpha_eq, fresh_var
from .syntax import print_term

ONE = Scale.one()


def dilation(b: Term, eps: Scale, a: Term) -> Term:
    """``b o_eps a``, the term ``(y \\ a) {eps} b`` with ``y`` fresh."""
    y = fresh_var(a.fv | b.fv, "y")
    return Scaled(Abs(y, a), eps, b)


def bullet(b: Term, eps: Scale, a: Term) -> Term:
    return dilation(b, eps.inverse(), a)


def app(a: Term, b: Term) -> Term:
    return Scaled(a, ONE, b)


def apply_all(f: Term, *args: Term) -> Term:
    for arg in args:
        f = app(f, arg)
    return f


@dataclass
class CheckReport:
    axiom: str
    instance: str
    verdict: Verdict
    traces: tuple[Trace, ...] = ()
    budget_used: int = 0

    @property
    def proved(self) -> bool:
        return self.verdict is Verdict.PROVED

    def line(self) -> str:
        return f"{self.axiom} {self.verdict} budget={self.budget_used}"

    def trace_text(self) -> str:
        return "\n".join(t.serialize() for t in self.traces)


def report_from(axiom: str, instance: str, verdicts: list[EquivVerdict]) -> CheckReport:
    ok = all(v.proved for v in verdicts)
    return CheckReport(
        axiom, instance,
        Verdict.PROVED if ok else Verdict.UNKNOWN,
        tuple(v.trace for v in verdicts if v.trace is not None),
        sum(v.explored for v in verdicts),
    )


def _describe(**parts) -> str:
    return ", ".join(
        f"{k}={print_term(v) if not isinstance(v, Scale) else v}" for k, v in parts.items()
    )


def check_irq_axioms(a: Term, b: Term, eps: Scale, mu: Scale,
                     budget: int = DEFAULT_BUDGET, label: str = "") -> list[CheckReport]:
    """Idempotence, inverse, unit and composition laws for ``o_eps``."""
    inst = _describe(A=a, B=b, eps=eps, mu=mu)
    inv = eps.inverse()
    return [
        report_from(f"idem{label}", inst, [equiv(dilation(a, eps, a), a, budget)]),
        report_from(f"inv{label}", inst, [
            equiv(dilation(a, eps, dilation(a, inv, b)), b, budget),
            equiv(dilation(a, inv, dilation(a, eps, b)), b, budget),
        ]),
        report_from(f"unit{label}", inst, [equiv(dilation(a, ONE, b), b, budget)]),
        report_from(f"compose{label}", inst, [
            equiv(dilation(a, eps, dilation(a, mu, b)), dilation(a, eps * mu, b), budget),
        ]),
    ]


def prop1_instance(a: Term, b: Term, eps: Scale, budget: int = DEFAULT_BUDGET,
                   label: str = "prop1") -> CheckReport:
    """``b {eps} a  ==  a o_eps (b a)``."""
    lhs = Scaled(b, eps, a)
    rhs = dilation(a, eps, app(b, a))
    return report_from(label, _describe(A=a, B=b, eps=eps), [equiv(lhs, rhs, budget)])


def prop2_instance(a: Term, b: Term, eps: Scale, budget: int = DEFAULT_BUDGET,
                   label: str = "prop2") -> CheckReport:
    """``b a  ==  (x \\ (b {eps^-1} x)) {eps} a  ==  (x \\ (b {eps^-1} a)) {eps} a``."""
    x = fresh_var(a.fv | b.fv, "x")
    inv = eps.inverse()
    middle = Scaled(Abs(x, Scaled(b, inv, Var(x))), eps, a)
    right = Scaled(Abs(x, Scaled(b, inv, a)), eps, a)
    return report_from(label, _describe(A=a, B=b, eps=eps), [
        equiv(app(b, a), middle, budget),
        equiv(middle, right, budget),
    ])


def is_t1_term(t: Term) -> bool:
    """True when every scaled node carries the neutral scale."""
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Abs):
            stack.append(s.body)
        elif isinstance(s, Scaled):
            if not s.scale.is_one:
                return False
            stack.append(s.left)
            stack.append(s.right)
    return True


def check_t1_agreement(t: Term, budget: int = 1000, label: str = "t1") -> CheckReport:
    """Engine normal form versus the classical beta-eta oracle."""
    if not is_t1_term(t):
        raise NotT1Term(print_term(t))
    mine = normalize(t, budget)
    ref = lambda_oracle_normalize(t, budget)
    ok = mine.is_normal and ref.is_normal and alpha_eq(mine.result, ref.result)
    return CheckReport(label, print_term(t), Verdict.PROVED if ok else Verdict.UNKNOWN,
                       (mine.trace,), len(mine.trace))


def random_scale(rng: random.Random, gens=("e", "m"), lo: int = -2, hi: int = 2) -> Scale:
    return Scale(tuple((g, rng.randint(lo, hi)) for g in gens))


def irq_suite(seed: int = 0, count: int = 200, depth: int = 4,
              budget: int = DEFAULT_BUDGET, variables=("x", "y", "z")) -> list[CheckReport]:
    from .generators import random_term

    rng = random.Random(seed)
    reports: list[CheckReport] = []
    for k in range(count):
        a = random_term(rng, depth, variables)
        b = random_term(rng, depth, variables)
        eps, mu = random_scale(rng), random_scale(rng)
        reports.extend(check_irq_axioms(a, b, eps, mu, budget, label=f"[{k}]"))
    return reports


def prop_suite(seed: int = 0, count: int = 100, depth: int = 4,
               budget: int = DEFAULT_BUDGET, variables=("x", "y", "z")) -> list[CheckReport]:
    from .generators import random_term

    rng = random.Random(seed)
    reports: list[CheckReport] = []
    for k in range(count):
        a = random_term(rng, depth, variables)
        b = random_term(rng, depth, variables)
        eps = random_scale(rng)
        reports.append(prop1_instance(a, b, eps, budget, label=f"prop1[{k}]"))
        reports.append(prop2_instance(a, b, eps, budget, label=f"prop2[{k}]"))
    return reports


def lambda_suite(seed: int = 0, count: int = 0, depth: int = 4,
                 budget: int = 1000) -> list[CheckReport]:
    """The combinator corpus, plus ``count`` random terminating closed neutral-scale terms."""
    from .generators import combinator_corpus, random_t1_term

    reports = [check_t1_agreement(t, budget, label=f"t1.{name}")
               for name, t in combinator_corpus()]
    rng = random.Random(seed)
    k = 0
    while k < count:
        t = random_t1_term(rng, depth)
        if not lambda_oracle_normalize(t, budget).is_normal:
            continue
        reports.append(check_t1_agreement(t, budget, label=f"t1.random[{k}]"))
        k += 1
    return reports


def summary(reports: list[CheckReport]) -> Optional[str]:
    bad = [r for r in reports if not r.proved]
    if not bad:
        return None
    return f"{len(bad)} of {len(reports)} checks not proved"
