import random

import pytest
from hypothesis import given, settings, strategies as st

from lambda_scale.generators import random_term
from lambda_scale.scale import parse_scale
from lambda_scale.syntax import parse_term as P, print_term
from lambda_scale.terms import (
    ROOT, Abs, PositionInvalid, Scaled, Var, all_vars, alpha_eq, depth, format_position,
    free_vars, fresh_var, parse_position, positions, rename_binder, replace_at, substitute,
    subterm_at,
)
from lambda_scale.validate import encode, instantiate

from conftest import NAMES, terms


def subst_oracle(a, v, b):
    """Locally nameless substitution: bind ``v`` then open with ``b``."""
    return instantiate(encode(Abs(v, a))[1], encode(b))


@pytest.mark.parametrize("src, expected", [
    ("x", {"x"}),
    (r"(x \ (x {e} y))", {"x", "y"}),
    (r"(x \ y)", {"x", "y"}),
])
def test_all_vars(src, expected):
    assert all_vars(P(src)) == expected


@pytest.mark.parametrize("src, expected", [
    (r"(x \ x)", set()),
    (r"(x \ (x {e} y))", {"y"}),
    (r"((x \ x) {e} x)", {"x"}),
])
def test_free_vars(src, expected):
    assert free_vars(P(src)) == expected


@pytest.mark.parametrize("a, b, expected", [
    (r"(x \ x)", r"(y \ y)", True),
    (r"(x \ y)", r"(y \ y)", False),
    (r"(x \ (x {e} z))", r"(w \ (w {e} z))", True),
    (r"(x \ (y \ x))", r"(y \ (x \ y))", True),
    (r"(x \ (y \ x))", r"(x \ (y \ y))", False),
    (r"(x {e} y)", r"(x {m} y)", False),
])
def test_alpha_eq(a, b, expected):
    assert alpha_eq(P(a), P(b)) is expected


@pytest.mark.parametrize("avoid, hint, expected", [
    ({"x"}, "x", "x_1"),
    (set(), "y", "y"),
    ({"y", "y_1"}, "y", "y_2"),
])
def test_fresh_var(avoid, hint, expected):
    assert fresh_var(avoid, hint) == expected


def test_substitute_examples():
    ab = P("(a {e} b)")
    assert substitute(Var("x"), "x", ab) == ab
    assert substitute(P(r"(x \ y)"), "y", Var("z")) == P(r"(x \ z)")
    captured = substitute(P(r"(x \ y)"), "y", Var("x"))
    assert captured == P(r"(x_1 \ x)")
    assert free_vars(captured) == {"x"}


def test_substitute_rebinding_binder_is_untouched():
    t = P(r"(y \ (y {e} x))")
    assert substitute(t, "y", Var("q")) is t


def test_substitute_distributes_over_scaled():
    t = P(r"(x {e} (y {m} x))")
    assert substitute(t, "x", Var("w")) == P(r"(w {e} (y {m} w))")


@settings(max_examples=300)
@given(terms, NAMES, terms)
def test_substitution_matches_oracle(a, v, b):
    assert encode(substitute(a, v, b)) == subst_oracle(a, v, b)


@settings(max_examples=300)
@given(terms, NAMES, terms)
def test_substitution_invariants(a, v, b):
    out = substitute(a, v, b)
    bound = (free_vars(a) - {v}) | free_vars(b)
    if v in free_vars(a):
        assert free_vars(out) == bound
    else:
        assert free_vars(out) <= bound
        assert alpha_eq(out, a)
    assert alpha_eq(substitute(a, v, Var(v)), a)


@settings(max_examples=200)
@given(terms, NAMES, terms, st.sampled_from(["p", "q", "x_7"]))
def test_alpha_stable_under_substitution(a, v, b, fresh):
    # rename the outermost binder we find, giving an alpha-variant
    variant = a
    for pos, sub in positions(a):
        if isinstance(sub, Abs) and fresh not in all_vars(sub):
            variant = replace_at(a, pos, rename_binder(sub, fresh))
            break
    assert alpha_eq(a, variant)
    assert alpha_eq(substitute(a, v, b), substitute(variant, v, b))


@given(terms, terms)
def test_alpha_eq_is_equivalence(a, b):
    assert alpha_eq(a, a)
    assert alpha_eq(a, b) == alpha_eq(b, a)
    if alpha_eq(a, b):
        assert free_vars(a) == free_vars(b)


def test_positions_and_replacement():
    t = P(r"((x \ (b {m} x)) {e} a)")
    assert [format_position(p) for p, _ in positions(t)] == [
        ".", "L", "L.B", "L.B.L", "L.B.R", "R"]
    assert subterm_at(t, parse_position("L.B.L")) == Var("b")
    assert subterm_at(t, ROOT) is t
    t2 = replace_at(t, ("R",), Var("c"))
    assert print_term(t2) == r"((x \ (b {m} x)) {e} c)"
    with pytest.raises(PositionInvalid):
        subterm_at(t, ("B",))
    with pytest.raises(PositionInvalid):
        subterm_at(t, ("R", "L"))
    assert depth(t) == 4


def test_position_text_round_trip():
    for pos in [(), ("L",), ("L", "B", "R")]:
        assert parse_position(format_position(pos)) == pos


def test_terms_are_hashable_values():
    a = Scaled(Abs("x", Var("x")), parse_scale("e"), Var("y"))
    b = Scaled(Abs("x", Var("x")), parse_scale("e"), Var("y"))
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1


def test_random_triples_oracle_agreement():
    rng = random.Random(11)
    for _ in range(300):
        a = random_term(rng, 4)
        b = random_term(rng, 3)
        v = rng.choice("xyz")
        assert encode(substitute(a, v, b)) == subst_oracle(a, v, b)
