"""Acceptance gate: eight criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` or directly as a script.
"""
import contextlib
import io
import random
import sys
import time
from functools import lru_cache

import pytest

from lambda_scale.cli import main as cli_main
from lambda_scale.emergent import (
    apply_all, check_t1_agreement, irq_suite, lambda_suite, prop_suite,
)
from lambda_scale.generators import PLUS, TIMES, church, random_term
from lambda_scale.classical import lambda_oracle_normalize
from lambda_scale.relative import RelContext, relative_suite
from lambda_scale.rules import Status, normalize
from lambda_scale.scale import parse_scale
from lambda_scale.syntax import parse_term, print_term
from lambda_scale.terms import Var, alpha_eq, free_vars, substitute
from lambda_scale.validate import TraceInvalid, check_trace

OMEGA2 = r"((x \ (x {1} x)) {1} (x \ (x {1} x)))"


def _quiet_cli(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli_main(argv)
    return code, out.getvalue()


@lru_cache(maxsize=None)
def irq_run():
    start = time.perf_counter()
    code, out = _quiet_cli(["check", "irq", "--count", "200", "--depth", "4", "--seed", "0"])
    elapsed = time.perf_counter() - start
    return code, out.splitlines(), elapsed


@lru_cache(maxsize=None)
def irq_reports():
    return irq_suite(seed=0, count=200, depth=4)


@lru_cache(maxsize=None)
def prop_reports():
    return prop_suite(seed=0, count=100, depth=4, budget=5000)


@lru_cache(maxsize=None)
def lambda_reports():
    return lambda_suite(seed=0, count=50)


@lru_cache(maxsize=None)
def relative_reports():
    ctx = RelContext(Var("a"), parse_scale("e"))
    return relative_suite(ctx, seed=0, count=100, depth=3)


def criterion_1():
    code, lines, elapsed = irq_run()
    families = {"idem", "inv", "unit", "compose"}
    proved = [ln for ln in lines if " Proved " in ln]
    seen = {ln.split("[")[0] for ln in proved}
    ok = code == 0 and len(lines) == 800 and len(proved) == 800 and seen == families \
        and elapsed < 60
    return ok, f"{len(proved)}/800 Proved, {len(lines) - len(proved)} Unknown, {elapsed:.1f}s"


def criterion_2():
    reports = prop_reports()
    p1 = [r for r in reports if r.axiom.startswith("prop1")]
    p2 = [r for r in reports if r.axiom.startswith("prop2")]
    ok1, ok2 = sum(r.proved for r in p1), sum(r.proved for r in p2)
    ok = len(p1) == len(p2) == 100 and ok1 == ok2 == 100
    return ok, f"prop1 {ok1}/{len(p1)}, prop2 {ok2}/{len(p2)}"


def criterion_3():
    reports = lambda_reports()
    corpus = [r for r in reports if not r.axiom.startswith("t1.random")]
    bad = [r.axiom for r in reports if not r.proved]
    arith = []
    for f, m, n, want in [(PLUS, 2, 3, 5), (TIMES, 2, 3, 6)]:
        t = apply_all(f, church(m), church(n))
        mine = normalize(t)
        ref = lambda_oracle_normalize(t)
        arith.append(mine.is_normal and alpha_eq(mine.result, church(want))
                     and alpha_eq(ref.result, church(want))
                     and check_t1_agreement(t).proved)
    ok = not bad and all(arith) and len(corpus) >= 20
    return ok, (f"corpus {len(corpus)} terms + {len(reports) - len(corpus)} random, "
                f"{len(bad)} disagreements, plus 2 3 = 5: {arith[0]}, times 2 3 = 6: {arith[1]}")


def criterion_4():
    reports = relative_reports()
    counts: dict[str, list[int]] = {}
    for r in reports:
        fam = r.axiom.split("[")[0]
        tally = counts.setdefault(fam, [0, 0])
        tally[0] += r.proved
        tally[1] += 1
    need = {"prelsub": 100, "psimply": 100, "rel.beta*": 50, "rel.R1": 50, "rel.R2": 50,
            "rel.ext1": 50, "rel.ext2": 50}
    ok = all(counts.get(f, [0, 0])[1] >= n and counts[f][0] == counts[f][1]
             for f, n in need.items())
    detail = ", ".join(f"{f} {counts.get(f, [0, 0])[0]}/{counts.get(f, [0, 0])[1]}"
                       for f in need)
    return ok, detail


def criterion_5():
    rng = random.Random(0)
    violations = 0
    for _ in range(1000):
        a = random_term(rng, rng.randint(1, 5))
        b = random_term(rng, rng.randint(1, 4))
        v = rng.choice("xyz")
        out = substitute(a, v, b)
        bound = (free_vars(a) - {v}) | free_vars(b)
        if v in free_vars(a):
            violations += free_vars(out) != bound
        else:
            violations += not (free_vars(out) <= bound and alpha_eq(out, a))
        violations += not alpha_eq(substitute(a, v, Var(v)), a)
        # alpha-variant of a: rename every binder to a fresh primed name
        variant = _rename_all_binders(a)
        violations += not alpha_eq(a, variant)
        violations += not alpha_eq(out, substitute(variant, v, b))
    return violations == 0, f"1000 triples, {violations} violations"


def _rename_all_binders(t):
    from lambda_scale.terms import Abs, Scaled, rename_binder

    def go(s, k):
        if isinstance(s, Var):
            return s, k
        if isinstance(s, Abs):
            body, k = go(s.body, k)
            return rename_binder(Abs(s.binder, body), f"w{k}"), k + 1
        left, k = go(s.left, k)
        right, k = go(s.right, k)
        return Scaled(left, s.scale, right), k

    return go(t, 0)[0]


def criterion_6():
    suites = [irq_reports(), prop_reports(), lambda_reports(), relative_reports()]
    total = replayed = 0
    for reports in suites:
        for r in reports:
            if not r.proved:
                continue
            for tr in r.traces:
                total += 1
                try:
                    check_trace(tr)
                    replayed += 1
                except TraceInvalid:
                    pass
    return total > 0 and replayed == total, f"{replayed}/{total} traces replayed"


def criterion_7():
    t = parse_term(OMEGA2)
    statuses = [normalize(t, b).status for b in (10, 100, 1000)]
    runs = [normalize(t, 1000).trace.serialize() for _ in range(3)]
    rng = random.Random(0)
    sample = [random_term(rng, 5) for _ in range(20)]
    det = all(len({normalize(s, 300).trace.serialize() for _ in range(3)}) == 1 for s in sample)
    ok = all(s is Status.BUDGET_EXHAUSTED for s in statuses) and len(set(runs)) == 1 and det
    return ok, f"statuses {[str(s) for s in statuses]}, identical traces: {len(set(runs)) == 1 and det}"


def criterion_8():
    rng = random.Random(0)
    mismatches = 0
    for _ in range(1000):
        t = random_term(rng, rng.randint(1, 7))
        mismatches += parse_term(print_term(t)) != t
    c1, _ = _quiet_cli(["equiv", r"((x \ (b {m} x)) {e} a)", "(b {e*m} a)"])
    c2, out2 = _quiet_cli(["reduce", OMEGA2, "--budget", "20"])
    c3, _ = _quiet_cli(["check", "irq", "--count", "200", "--seed", "0"])
    ok = mismatches == 0 and (c1, c2, c3) == (0, 0, 0) and "BudgetExhausted" in out2
    return ok, f"{mismatches} round-trip mismatches, CLI exit codes {(c1, c2, c3)}"


CRITERIA = [
    (1, "irq suite", criterion_1),
    (2, "proposition suite", criterion_2),
    (3, "lambda embedding", criterion_3),
    (4, "relative calculus", criterion_4),
    (5, "substitution and alpha laws", criterion_5),
    (6, "trace replay audit", criterion_6),
    (7, "divergence and determinism", criterion_7),
    (8, "frontend round trip and CLI", criterion_8),
]


def _line(n, name, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] criterion {n} ({name}): {detail}"


@pytest.mark.parametrize("n, name, fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(n, name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(n, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, name, fn in CRITERIA:
        ok, detail = fn()
        failed += not ok
        print(_line(n, name, ok, detail), flush=True)
    sys.exit(1 if failed else 0)
