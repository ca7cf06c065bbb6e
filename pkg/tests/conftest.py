from hypothesis import strategies as st

from lambda_scale.scale import Scale
from lambda_scale.terms import Abs, Scaled, Var

NAMES = st.sampled_from(["x", "y", "z", "x_1"])
GENS = st.sampled_from(["e", "m", "k"])

scales = st.lists(st.tuples(GENS, st.integers(-3, 3)), max_size=4).map(
    lambda pairs: Scale(tuple(pairs)))

terms = st.recursive(
    NAMES.map(Var),
    lambda sub: st.one_of(
        st.builds(Abs, NAMES, sub),
        st.builds(Scaled, sub, scales, sub),
    ),
    max_leaves=12,
)
