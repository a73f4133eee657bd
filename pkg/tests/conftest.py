import hypothesis.strategies as st

from dpdn.boolexpr import And, Lit, Literal, Or

import helpers


@st.composite
def nnf_expressions(draw, max_inputs: int = 5, max_literals: int = 8):
    """Random NNF expression trees over a small input pool."""
    names = helpers.INPUT_POOL[: draw(st.integers(1, max_inputs))]
    count = draw(st.integers(1, max_literals))

    def build(k: int):
        if k == 1:
            return Lit(Literal(draw(st.sampled_from(names)), draw(st.booleans())))
        split = draw(st.integers(1, k - 1))
        op = draw(st.sampled_from((And, Or)))
        return op(build(split), build(k - split))

    return build(count)
