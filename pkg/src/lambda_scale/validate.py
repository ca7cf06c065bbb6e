"""Independent replay checker for rewrite traces.

Terms are re-encoded in a locally nameless form (bound variables as
indices, free variables as names) and every rule instance is re-checked from
its definition.  Nothing here calls the engine's substitution, matching or
alpha-equivalence code, so a bug there cannot vouch for itself.
"""
from __future__ import annotations

from .rules import Direction, RuleId, Trace
from .scale import Scale
from .terms import Abs, Scaled, Term, Var

# ("b", i) bound index | ("f", name) free | ("lam", body) | ("sc", scale, l, r)


class TraceInvalid(AssertionError):
    pass


def encode(t: Term, env: tuple[str, ...] = ()) -> tuple:
    if isinstance(t, Var):
        for i in range(len(env) - 1, -1, -1):
            if env[i] == t.name:
                return ("b", len(env) - 1 - i)
        return ("f", t.name)
    if isinstance(t, Abs):
        return ("lam", encode(t.body, env + (t.binder,)))
    return ("sc", t.scale, encode(t.left, env), encode(t.right, env))


def free_names(n: tuple, depth: int = 0) -> set[str]:
    kind = n[0]
    if kind == "f":
        return {n[1]}
    if kind == "b":
        return set()
    if kind == "lam":
        return free_names(n[1], depth + 1)
    return free_names(n[2], depth) | free_names(n[3], depth)


def uses_index(n: tuple, i: int = 0) -> bool:
    kind = n[0]
    if kind == "b":
        return n[1] == i
    if kind == "f":
        return False
    if kind == "lam":
        return uses_index(n[1], i + 1)
    return uses_index(n[2], i) or uses_index(n[3], i)


def instantiate(body: tuple, arg: tuple, i: int = 0) -> tuple:
    """Replace index ``i`` in ``body`` by the locally closed ``arg``."""
    kind = body[0]
    if kind == "b":
        if body[1] == i:
            return arg
        return ("b", body[1] - 1) if body[1] > i else body
    if kind == "f":
        return body
    if kind == "lam":
        return ("lam", instantiate(body[1], arg, i + 1))
    return ("sc", body[1], instantiate(body[2], arg, i), instantiate(body[3], arg, i))


def drop_unused(body: tuple, i: int = 0) -> tuple:
    """Body of a vacuous binder seen from outside that binder."""
    kind = body[0]
    if kind == "b":
        return ("b", body[1] - 1) if body[1] > i else body
    if kind == "f":
        return body
    if kind == "lam":
        return ("lam", drop_unused(body[1], i + 1))
    return ("sc", body[1], drop_unused(body[2], i), drop_unused(body[3], i))


def _scale_of(n: tuple) -> Scale:
    return n[1]


def check_instance(rule: RuleId, lhs: tuple, rhs: tuple) -> bool:
    """True iff ``rhs`` is (up to alpha) a forward ``rule`` contractum of ``lhs``."""
    if rule is RuleId.EXT1:
        if lhs[0] != "lam":
            return False
        body = lhs[1]
        if not (body[0] == "sc" and _scale_of(body).is_one and body[3] == ("b", 0)
                and not uses_index(body[2])):
            return False
        return drop_unused(body[2]) == rhs
    if lhs[0] != "sc" or lhs[2][0] != "lam":
        return False
    eps, fn_body, arg = lhs[1], lhs[2][1], lhs[3]
    if rule is RuleId.EXT2:
        return eps.is_one and not uses_index(fn_body) and drop_unused(fn_body) == rhs
    if rule is RuleId.R1:
        return not uses_index(fn_body) and drop_unused(fn_body) == arg and rhs == arg
    if rule is RuleId.R2:
        if not (fn_body[0] == "sc" and fn_body[3] == ("b", 0) and not uses_index(fn_body[2])):
            return False
        return rhs == ("sc", eps * fn_body[1], drop_unused(fn_body[2]), arg)
    if rule is RuleId.BETA_STAR:
        if not uses_index(fn_body):
            return False
        if rhs[0] != "sc" or rhs[1] != eps or rhs[3] != arg or rhs[2][0] != "lam":
            return False
        new_body = rhs[2][1]
        # the fresh binder must be vacuous in the contractum
        if uses_index(new_body):
            return False
        return drop_unused(new_body) == instantiate(fn_body, arg)
    raise ValueError(f"unknown rule {rule}")


def _outside_equal(before: Term, after: Term, pos) -> bool:
    a, b = before, after
    for step in pos:
        if type(a) is not type(b):
            return False
        if step == "B":
            if not isinstance(a, Abs) or a.binder != b.binder:
                return False
            a, b = a.body, b.body
        elif step in ("L", "R"):
            if not isinstance(a, Scaled) or a.scale != b.scale:
                return False
            if step == "L":
                if a.right != b.right:
                    return False
                a, b = a.left, b.left
            else:
                if a.left != b.left:
                    return False
                a, b = a.right, b.right
        else:
            return False
    return True


def _sub(t: Term, pos) -> Term:
    for step in pos:
        t = t.body if step == "B" else (t.left if step == "L" else t.right)
    return t


def check_trace(trace: Trace, start: Term | None = None, end: Term | None = None) -> None:
    """Raise ``TraceInvalid`` unless every step replays and the chain connects."""
    prev = encode(start) if start is not None else None
    for k, step in enumerate(trace):
        b_enc = encode(step.before)
        if prev is not None and b_enc != prev:
            raise TraceInvalid(f"step {k}: does not continue from the previous term")
        try:
            ok_out = _outside_equal(step.before, step.after, step.at)
            lhs_t, rhs_t = _sub(step.before, step.at), _sub(step.after, step.at)
        except AttributeError:
            raise TraceInvalid(f"step {k}: invalid position") from None
        if not ok_out:
            raise TraceInvalid(f"step {k}: term changed outside position")
        lhs, rhs = encode(lhs_t), encode(rhs_t)
        if step.direction is Direction.BACKWARD:
            lhs, rhs = rhs, lhs
        if not check_instance(step.rule, lhs, rhs):
            raise TraceInvalid(f"step {k}: not a valid {step.rule} {step.direction} instance")
        prev = encode(step.after)
    if end is not None:
        last = prev if prev is not None else encode(start) if start is not None else None
        if last is not None and last != encode(end):
            raise TraceInvalid("trace does not end at the target term")


def trace_is_valid(trace: Trace, start: Term | None = None, end: Term | None = None) -> bool:
    try:
        check_trace(trace, start, end)
    except TraceInvalid:
        return False
    return True
