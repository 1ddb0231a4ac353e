import pytest
from hypothesis import settings, strategies as st

from catlab.core import simplex, terminal, point
from catlab.generate import exhaustive, functor_list

settings.register_profile("catlab", max_examples=60, deadline=None)
settings.load_profile("catlab")

SMALL = exhaustive(2, 3)
MEDIUM = exhaustive(2, 4)


@st.composite
def categories(draw, pool=SMALL):
    return draw(st.sampled_from(pool))


@st.composite
def functors(draw, pool=SMALL):
    """A functor between two pool categories (retries until the hom-set is nonempty)."""
    for _ in range(50):
        A = draw(st.sampled_from(pool))
        B = draw(st.sampled_from(pool))
        fs = functor_list(A, B)
        if fs:
            return draw(st.sampled_from(fs))
    return functor_list(pool[1], pool[1])[0]


@pytest.fixture
def d1():
    return simplex(1)


@pytest.fixture
def d0():
    # e -> simplex(1) at 0
    return point(simplex(1), "0")


@pytest.fixture
def d1_end():
    # e -> simplex(1) at 1
    return point(simplex(1), "1")


@pytest.fixture
def e():
    return terminal()
