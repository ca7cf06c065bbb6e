"""Seeded random terms and the combinator corpus."""
from __future__ import annotations

import random

from .emergent import ONE, app, apply_all, random_scale
from .relative import RelAbs, RelScaled, RelTerm, RelVar
from .syntax import parse_term
from .terms import Abs, Scaled, Term, Var


def random_term(rng: random.Random, depth: int, variables=("x", "y", "z"),
                gens=("e", "m"), lo: int = -2, hi: int = 2, closed: bool = False) -> Term:
    """Uniform choice of constructor at each node, variables forced at ``depth == 1``."""
    def go(d: int) -> Term:
        kind = 0 if d <= 1 else rng.randrange(3)
        if kind == 0:
            return Var(rng.choice(variables))
        if kind == 1:
            return Abs(rng.choice(variables), go(d - 1))
        return Scaled(go(d - 1), random_scale(rng, gens, lo, hi), go(d - 1))

    t = go(depth)
    if closed:
        for v in sorted(t.fv, reverse=True):
            t = Abs(v, t)
    return t


def random_t1_term(rng: random.Random, depth: int, variables=("x", "y", "z"),
                   closed: bool = True) -> Term:
    def go(d: int) -> Term:
        kind = 0 if d <= 1 else rng.randrange(3)
        if kind == 0:
            return Var(rng.choice(variables))
        if kind == 1:
            return Abs(rng.choice(variables), go(d - 1))
        return Scaled(go(d - 1), ONE, go(d - 1))

    t = go(depth)
    if closed:
        for v in sorted(t.fv, reverse=True):
            t = Abs(v, t)
    return t


def random_rel_term(rng: random.Random, depth: int, variables=("p", "q", "r"),
                    gens=("e", "m"), lo: int = -2, hi: int = 2) -> RelTerm:
    def go(d: int) -> RelTerm:
        kind = 0 if d <= 1 else rng.randrange(3)
        if kind == 0:
            return RelVar(rng.choice(variables))
        if kind == 1:
            return RelAbs(rng.choice(variables), go(d - 1))
        return RelScaled(go(d - 1), random_scale(rng, gens, lo, hi), go(d - 1))

    return go(depth)


I = parse_term(r"(x \ x)")
K = parse_term(r"(x \ (y \ x))")
S = parse_term(r"(x \ (y \ (z \ ((x z) (y z)))))")
B = parse_term(r"(x \ (y \ (z \ (x (y z)))))")
C = parse_term(r"(x \ (y \ (z \ ((x z) y))))")
PLUS = parse_term(r"(m \ (n \ (f \ (x \ ((m f) ((n f) x))))))")
TIMES = parse_term(r"(m \ (n \ (f \ (m (n f)))))")


def church(n: int) -> Term:
    body: Term = Var("x")
    for _ in range(n):
        body = app(Var("f"), body)
    return Abs("f", Abs("x", body))


def combinator_corpus() -> list[tuple[str, Term]]:
    a, b, c = Var("a"), Var("b"), Var("c")
    s_like = parse_term(r"(((x \ (y \ ((x z) (y z)))) a) b)")
    corpus = [
        ("I", I),
        ("K", K),
        ("I.a", app(I, a)),
        ("K.a.b", apply_all(K, a, b)),
        ("K.I.a.b", apply_all(K, I, a, b)),
        ("S.a.b.c", apply_all(S, a, b, c)),
        ("S.K.K.a", apply_all(S, K, K, a)),
        ("S.a.b", apply_all(S, a, b)),
        ("S-like.a.b", s_like),
        ("B.a.b.c", apply_all(B, a, b, c)),
        ("C.a.b.c", apply_all(C, a, b, c)),
        ("B.I.I", apply_all(B, I, I)),
    ]
    corpus += [(f"church{n}", church(n)) for n in range(6)]
    corpus += [
        ("plus.2.3", apply_all(PLUS, church(2), church(3))),
        ("times.2.3", apply_all(TIMES, church(2), church(3))),
        ("plus.0.4", apply_all(PLUS, church(0), church(4))),
        ("times.1.5", apply_all(TIMES, church(1), church(5))),
    ]
    return corpus
