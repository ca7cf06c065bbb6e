"""Scaled lambda calculus: terms decorated by an abelian group of scales,
a budgeted rewrite engine, equivalence search with checkable traces, and
the dilation and relative-calculus constructions built on top of it."""
from .scale import BadScaleLiteral, Scale, parse_scale, scale_inv, scale_is_one, scale_mul
from .terms import (
    ROOT, Abs, Position, PositionInvalid, Scaled, Term, Var, all_vars, alpha_eq,
    free_vars, fresh_var, positions, replace_at, substitute, subterm_at,
)
from .rules import (
    Direction, NormalizeOutcome, RewriteStep, RuleId, RuleNotApplicable, Status, Trace,
    apply_rule, is_normal, normalize, step_beta_star, step_ext1, step_ext2, step_r1, step_r2,
)
from .validate import TraceInvalid, check_trace
from .equiv import EquivVerdict, Verdict, equiv
from .classical import NotT1Term, lambda_oracle_normalize
from .emergent import (
    ONE, CheckReport, app, bullet, check_irq_axioms, check_t1_agreement, dilation,
    prop1_instance, prop2_instance,
)
from .relative import (
    RelAbs, RelContext, RelScaled, RelVar, VariableClash, check_prelsub, check_psimply,
    check_scaled_calculus, rel_equiv, rel_free_vars, rel_substitute, translate,
    translate_simplified,
)
from .syntax import SourceSpan, TermSyntaxError, UnbalancedParens, parse_term, print_term, to_dot

__version__ = "0.1.0"
