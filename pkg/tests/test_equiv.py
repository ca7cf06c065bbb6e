import random

import pytest

from lambda_scale.equiv import Verdict, equiv, inverse_beta_star
from lambda_scale.generators import random_term
from lambda_scale.rules import (
    Direction, RewriteStep, RuleId, Trace, contract_beta_star, normalize, step_beta_star,
)
from lambda_scale.scale import parse_scale
from lambda_scale.syntax import parse_term as P
from lambda_scale.terms import Abs, Scaled, Var, alpha_eq, positions, substitute
from lambda_scale.validate import TraceInvalid, check_trace, trace_is_valid

OMEGA2 = r"((x \ (x {1} x)) {1} (x \ (x {1} x)))"


@pytest.mark.parametrize("a, b, budget", [
    ("(b {e} a)", r"((y \ (b {1} a)) {e} a)", 500),
    (r"(x \ x)", r"(y \ y)", 1),
    (r"((x \ (b {m} x)) {e} a)", "(b {e*m} a)", 10),
])
def test_proved_examples(a, b, budget):
    v = equiv(P(a), P(b), budget)
    assert v.verdict is Verdict.PROVED
    check_trace(v.trace, P(a), P(b))


def test_alpha_equal_needs_no_steps():
    v = equiv(P(r"(x \ x)"), P(r"(y \ y)"), 1)
    assert v and len(v.trace) == 0


def test_omega_against_variable_is_unknown():
    v = equiv(P(OMEGA2), P("z"), 200)
    assert v.verdict is Verdict.UNKNOWN
    assert v.trace is None
    assert not v


def test_distinct_normal_forms_unknown():
    assert not equiv(P("(a {e} b)"), P("(a {m} b)"), 300)


def test_symmetry():
    a, b = P("(b {e} a)"), P(r"((y \ (b {1} a)) {e} a)")
    v1, v2 = equiv(a, b, 500), equiv(b, a, 500)
    assert v1 and v2
    check_trace(v2.trace, b, a)


def test_inverse_beta_star_candidates_are_redexes():
    s = P(r"((y \ (b {e} a)) {m} a)")
    cands = list(inverse_beta_star(s))
    assert cands
    for c in cands:
        assert alpha_eq(step_beta_star(c), s)


def test_congruence_on_random_instances():
    rng = random.Random(2)
    eps = parse_scale("e")
    checked = 0
    for _ in range(400):
        if checked == 30:
            break
        t = random_term(rng, 5)
        n = normalize(t, 200)
        if not n.is_normal or alpha_eq(t, n.result):
            continue
        assert equiv(t, n.result, 2000)
        c = random_term(rng, 2)
        assert equiv(Scaled(t, eps, c), Scaled(n.result, eps, c), 10000)
        assert equiv(Scaled(c, eps, t), Scaled(c, eps, n.result), 10000)
        assert equiv(Abs("x", t), Abs("x", n.result), 10000)
        checked += 1
    assert checked >= 20


def test_beta_star_preserves_equivalence():
    rng = random.Random(4)
    eps = parse_scale("e*m^-1")
    checked = 0
    for _ in range(300):
        body, arg = random_term(rng, 3), random_term(rng, 2)
        if "x" not in body.fv:
            continue
        redex = Scaled(Abs("x", body), eps, arg)
        contractum = contract_beta_star(redex)
        v = equiv(redex, contractum)
        assert v, redex
        check_trace(v.trace, redex, contractum)
        checked += 1
    assert checked >= 100


def test_beta_star_normal_forms_can_diverge():
    # R2 and beta* overlap; the two sides are equivalent yet normalize apart
    redex = P(r"((x \ (y {e} x)) {e} x)")
    contractum = step_beta_star(redex)
    assert normalize(redex).result == P("(y {e^2} x)")
    assert normalize(contractum).result == P(r"((x_1 \ (y {e} x)) {e} x)")
    assert equiv(redex, contractum)


def test_budget_is_respected():
    v = equiv(P(OMEGA2), P("z"), 50)
    assert not v and v.explored <= 2 * 50 + 2


# -- validator ---------------------------------------------------------------

def _proof():
    a, b = P("(b {e} a)"), P(r"((y \ (b {1} a)) {e} a)")
    v = equiv(a, b, 500)
    return a, b, v.trace


def test_validator_accepts_engine_trace():
    a, b, tr = _proof()
    assert trace_is_valid(tr, a, b)
    assert trace_is_valid(tr.reversed(), b, a)


def test_validator_rejects_wrong_rule_label():
    a, b, tr = _proof()
    s = tr.steps[0]
    other = RuleId.R1 if s.rule is not RuleId.R1 else RuleId.R2
    bad = Trace([RewriteStep(other, s.direction, s.at, s.before, s.after)] + tr.steps[1:])
    with pytest.raises(TraceInvalid):
        check_trace(bad, a, b)


def test_validator_rejects_wrong_direction():
    t = P(r"((x \ b) {1} a)")
    good = RewriteStep(RuleId.EXT2, Direction.FORWARD, (), t, P("b"))
    assert trace_is_valid(Trace([good]), t, P("b"))
    bad = RewriteStep(RuleId.EXT2, Direction.BACKWARD, (), t, P("b"))
    assert not trace_is_valid(Trace([bad]))


def test_validator_rejects_change_outside_position():
    before = P(r"(c {e} ((x \ b) {1} a))")
    after = P(r"(d {e} b)")
    bad = RewriteStep(RuleId.EXT2, Direction.FORWARD, ("R",), before, after)
    assert not trace_is_valid(Trace([bad]))


def test_validator_rejects_broken_chain_and_endpoint():
    t1 = P(r"((x \ b) {1} a)")
    s1 = RewriteStep(RuleId.EXT2, Direction.FORWARD, (), t1, P("b"))
    t2 = P(r"((x \ c) {1} a)")
    s2 = RewriteStep(RuleId.EXT2, Direction.FORWARD, (), t2, P("c"))
    assert not trace_is_valid(Trace([s1, s2]))
    assert not trace_is_valid(Trace([s1]), t1, P("c"))
    assert not trace_is_valid(Trace([s1]), P("q"), P("b"))


def test_validator_rejects_capturing_substitution():
    # a capturing "beta*" step: (x \ (y \ x)) {e} y  -> (x_1 \ (y \ y)) {e} y
    before = P(r"((x \ (y \ x)) {e} y)")
    after = P(r"((x_1 \ (y \ y)) {e} y)")
    bad = RewriteStep(RuleId.BETA_STAR, Direction.FORWARD, (), before, after)
    assert not trace_is_valid(Trace([bad]))
    good_after = step_beta_star(before)
    assert trace_is_valid(Trace([RewriteStep(RuleId.BETA_STAR, Direction.FORWARD, (),
                                             before, good_after)]))


def test_validator_rejects_r1_with_bound_variable_in_body():
    bad = RewriteStep(RuleId.R1, Direction.FORWARD, (), P(r"((x \ x) {e} x)"), P("x"))
    assert not trace_is_valid(Trace([bad]))


def test_validator_rejects_bad_r2_scale():
    before = P(r"((x \ (b {m} x)) {e} a)")
    bad = RewriteStep(RuleId.R2, Direction.FORWARD, (), before, P("(b {e} a)"))
    assert not trace_is_valid(Trace([bad]))


def test_validator_rejects_invalid_position():
    t = P("(a {e} b)")
    bad = RewriteStep(RuleId.EXT2, Direction.FORWARD, ("B",), t, t)
    assert not trace_is_valid(Trace([bad]))
