"""Semi-decision procedure for the congruence generated by the rules.

``equiv`` first normalizes both terms.  If that does not settle the query it
runs a bidirectional search: each side grows a set of terms reachable by
single forward steps at any position, by inverse beta* steps (abstracting
occurrences of the argument of a vacuous abstraction), and by normalization
runs.  Terms are identified modulo alpha.  The search is best-first on term
size, which is what the equational proofs of the calculus need: most of them
abstract a subterm so that R2 or ext2 can collapse the result.

A ``Proved`` verdict always carries a trace, and the trace is replayed by
``validate.check_trace`` before it is returned.
"""
from __future__ import annotations

import enum
import heapq
import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .rules import (
    Direction, RewriteStep, RuleId, Trace, find_redex, normalize, redexes,
)
from .terms import (
    ROOT, Abs, Position, Scaled, Term, Var, all_vars, alpha_eq, alpha_key,
    fresh_var, replace_at, substitute, subterm_at,
)
from .validate import check_trace

DEFAULT_BUDGET = 5000
NORMALIZE_BUDGET = 1000
CHAIN_STEPS = 64
MAX_OCCURRENCES = 8


class Verdict(enum.Enum):
    PROVED = "Proved"
    UNKNOWN = "Unknown"

    def __str__(self):
        return self.value


@dataclass
class EquivVerdict:
    verdict: Verdict
    trace: Optional[Trace] = None
    explored: int = 0

    @property
    def proved(self) -> bool:
        return self.verdict is Verdict.PROVED

    def __bool__(self):
        return self.proved


def _occurrences(c: Term, target: Term, tkey: str) -> list[Position]:
    """Positions in ``c`` holding ``target`` where abstracting it is sound.

    An occurrence below a binder that captures a free variable of ``target``
    cannot be produced by substitution, so it is skipped.
    """
    out: list[Position] = []
    blocked = target.fv
    size = target.size

    def go(s: Term, pos: list[str]) -> None:
        if s.size == size and s.fv == target.fv and alpha_key(s) == tkey:
            out.append(tuple(pos))
            return
        if s.size <= size:
            return
        if isinstance(s, Abs):
            if s.binder in blocked:
                return
            pos.append("B")
            go(s.body, pos)
            pos.pop()
        elif isinstance(s, Scaled):
            pos.append("L")
            go(s.left, pos)
            pos.pop()
            pos.append("R")
            go(s.right, pos)
            pos.pop()

    go(c, [])
    return out


def inverse_beta_star(s: Term) -> Iterator[Term]:
    """Terms that beta*-reduce to ``s`` at the root.

    ``s`` must look like ``(y \\ C) {e} B`` with ``y`` not free in ``C``.
    Candidates abstract the rightmost occurrence of ``B`` first, then each
    other single occurrence, then all of them at once.
    """
    if not (isinstance(s, Scaled) and isinstance(s.left, Abs)):
        return
    c, b = s.left.body, s.right
    if s.left.binder in c.fv:
        return
    occ = _occurrences(c, b, alpha_key(b))
    if not occ:
        return
    occ = occ[::-1][:MAX_OCCURRENCES]
    x = fresh_var(all_vars(c) | b.fv, "x")
    choices = [[p] for p in occ]
    if len(occ) > 1:
        choices.append(occ)
    ckey = alpha_key(c)
    for chosen in choices:
        body = c
        for p in chosen:
            body = replace_at(body, p, Var(x))
        if alpha_key(substitute(body, x, b)) != ckey:
            continue
        yield Scaled(Abs(x, body), s.scale, b)


def productive_inverse(s: Term) -> Optional[Term]:
    """The inverse beta* candidate at ``s`` that turns it into an R2 redex.

    For ``(y \\ (X {m} B)) {e} B`` this is ``(x \\ (X {m} x)) {e} B``, which
    R2 contracts to ``X {e*m} B``.  Every chain of the form "abstract, then
    collapse" in the calculus goes through a candidate of this shape.
    """
    if not (isinstance(s, Scaled) and isinstance(s.left, Abs)):
        return None
    c, b = s.left.body, s.right
    if s.left.binder in c.fv or not isinstance(c, Scaled) or not alpha_eq(c.right, b):
        return None
    x = fresh_var(c.left.fv | b.fv, "x")
    return Scaled(Abs(x, Scaled(c.left, c.scale, Var(x))), s.scale, b)


def _vacuous_sites(t: Term) -> Iterator[tuple[Position, Term]]:
    """Positions of ``(y \\ C) {e} B`` subterms with ``y`` not free in ``C``."""
    stack: list[tuple[Position, Term]] = [(ROOT, t)]
    while stack:
        pos, s = stack.pop()
        if isinstance(s, Scaled):
            if isinstance(s.left, Abs) and s.left.binder not in s.left.body.fv:
                yield pos, s
            stack.append((pos + ("R",), s.right))
            stack.append((pos + ("L",), s.left))
        elif isinstance(s, Abs):
            stack.append((pos + ("B",), s.body))


@dataclass
class _Side:
    start: Term
    # alpha key -> (term, parent key, step from parent)
    seen: dict = field(default_factory=dict)
    heap: list = field(default_factory=list)
    # (parent key, position) of sites whose remaining inverse candidates wait
    deferred: deque = field(default_factory=deque)

    def path_to(self, key: str) -> list[RewriteStep]:
        steps = []
        while True:
            _, parent, step = self.seen[key]
            if parent is None:
                break
            steps.append(step)
            key = parent
        steps.reverse()
        return steps


class _Found(Exception):
    def __init__(self, key: str):
        self.key = key


class _Search:
    def __init__(self, a: Term, b: Term, budget: int):
        self.budget = budget
        self.sides = (_Side(a), _Side(b))
        self.counter = itertools.count()

    def add(self, i: int, term: Term, parent: Optional[str], step: Optional[RewriteStep],
            push: bool, priority: Optional[int] = None) -> Optional[str]:
        side, other = self.sides[i], self.sides[1 - i]
        key = alpha_key(term)
        if key in side.seen:
            return None
        if len(side.seen) >= self.budget:
            return None
        side.seen[key] = (term, parent, step)
        if key in other.seen:
            raise _Found(key)
        if push:
            prio = term.size if priority is None else priority
            heapq.heappush(side.heap, (prio, next(self.counter), key))
        return key

    def expand(self, i: int, key: str) -> None:
        side = self.sides[i]
        term = side.seen[key][0]
        # normalization run from this term
        cur, cur_key = term, key
        last_new = None
        for _ in range(CHAIN_STEPS):
            found = find_redex(cur)
            if found is None:
                break
            pos, rule, new = found
            nxt = replace_at(cur, pos, new)
            nkey = self.add(i, nxt, cur_key, RewriteStep(rule, Direction.FORWARD, pos, cur, nxt),
                            push=False)
            if nkey is None:
                break
            cur, cur_key, last_new = nxt, nkey, nkey
        if last_new is not None:
            heapq.heappush(side.heap, (cur.size, next(self.counter), last_new))
        # single forward steps anywhere
        for pos, rule, new in redexes(term):
            nxt = replace_at(term, pos, new)
            self.add(i, nxt, key, RewriteStep(rule, Direction.FORWARD, pos, term, nxt), push=True)
        # inverse beta*: the R2-enabling candidate now, the rest only if needed
        for pos, site in _vacuous_sites(term):
            cand = productive_inverse(site)
            if cand is not None:
                nxt = replace_at(term, pos, cand)
                body = cand.left.body
                after_r2 = term.size - site.size + body.left.size + site.right.size + 1
                self.add(i, nxt, key, RewriteStep(RuleId.BETA_STAR, Direction.BACKWARD, pos, term, nxt),
                         push=True, priority=after_r2)
            side.deferred.append((key, pos))

    def release_deferred(self, i: int) -> None:
        side = self.sides[i]
        while side.deferred and not side.heap:
            key, pos = side.deferred.popleft()
            term = side.seen[key][0]
            site = subterm_at(term, pos)
            for cand in inverse_beta_star(site):
                nxt = replace_at(term, pos, cand)
                self.add(i, nxt, key,
                         RewriteStep(RuleId.BETA_STAR, Direction.BACKWARD, pos, term, nxt), push=True)

    def run(self) -> Optional[str]:
        try:
            for i, side in enumerate(self.sides):
                self.add(i, side.start, None, None, push=True)
            turn = 0
            while True:
                for j in (0, 1):
                    self.release_deferred(j)
                live = [j for j in (0, 1) if self.sides[j].heap
                        and len(self.sides[j].seen) < self.budget]
                if not live:
                    return None
                i = turn if turn in live else live[0]
                turn = 1 - i
                _, _, key = heapq.heappop(self.sides[i].heap)
                self.expand(i, key)
        except _Found as hit:
            return hit.key

    def explored(self) -> int:
        return max(len(s.seen) for s in self.sides)

    def trace(self, key: str) -> Trace:
        a_side, b_side = self.sides
        forward = a_side.path_to(key)
        back = [s.reversed() for s in reversed(b_side.path_to(key))]
        return Trace(forward + back)


def _proved(trace: Trace, a: Term, b: Term, explored: int) -> EquivVerdict:
    check_trace(trace, a, b)
    return EquivVerdict(Verdict.PROVED, trace, explored)


def equiv(a: Term, b: Term, budget: int = DEFAULT_BUDGET,
          normalize_budget: int = NORMALIZE_BUDGET) -> EquivVerdict:
    """Try to prove ``a`` and ``b`` equivalent; ``Unknown`` if the budget runs out."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if alpha_eq(a, b):
        return _proved(Trace(), a, b, 0)
    na = normalize(a, normalize_budget)
    nb = normalize(b, normalize_budget)
    if na.is_normal and nb.is_normal and alpha_eq(na.result, nb.result):
        return _proved(na.trace + nb.trace.reversed(), a, b, len(na.trace) + len(nb.trace))
    search = _Search(a, b, budget)
    key = search.run()
    if key is None:
        return EquivVerdict(Verdict.UNKNOWN, None, search.explored())
    return _proved(search.trace(key), a, b, search.explored())
