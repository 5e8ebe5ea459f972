"""Hypothesis strategies producing random finite semigroups."""
from hypothesis import strategies as st

from finsemi.core import GeneratorDomain, close_generators


def _compose(p, q):
    # apply p first, then q
    return tuple(q[i] for i in p)


@st.composite
def transformation_semigroups(draw, max_degree=4, max_gens=3):
    """Table of a random semigroup of transformations of {0..d-1}."""
    d = draw(st.integers(1, max_degree))
    point = st.integers(0, d - 1)
    gens = draw(st.lists(st.tuples(*[point] * d), min_size=1, max_size=max_gens))
    return close_generators(GeneratorDomain(gens, _compose)).table
