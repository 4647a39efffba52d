from hypothesis import strategies as st

from cyclic_quiver.operators import ModuleParams
from cyclic_quiver.quiver import KostantPartition, raiz

ranks = st.integers(min_value=2, max_value=4)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def raiz_of_rank(draw, n, max_length=6):
    length = draw(st.integers(1, max_length))
    q = draw(st.integers(0, n - 1))
    return raiz(q - length + 1, q, n)


@st.composite
def partitions_of_rank(draw, n, max_parts=4, max_length=4):
    parts = draw(st.lists(raiz_of_rank(n, max_length), max_size=max_parts))
    return KostantPartition(parts)


@st.composite
def params_of_rank(draw, n):
    return ModuleParams(n, tuple(draw(rationals) for _ in range(n)))

