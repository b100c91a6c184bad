import pytest
from hypothesis import strategies as st

from scgames.games import SolverContext, atomic, composite
from scgames.notation import parse_game
from scgames.poset import builtin

P4 = builtin("P4")
P3 = builtin("P3")
BOOL = builtin("Bool")


@pytest.fixture
def ctx():
    return SolverContext()


@pytest.fixture
def p4():
    return P4


def parse(text, poset=P4):
    return parse_game(text, poset)


def games_over(poset, max_branch=2, max_leaves=8):
    """Hypothesis strategy for random games over one poset."""
    leaf = st.sampled_from(poset.elements).map(lambda a: atomic(a, poset))
    return st.recursive(
        leaf,
        lambda inner: st.builds(
            lambda ls, rs: composite(ls, rs, poset),
            st.lists(inner, min_size=1, max_size=max_branch),
            st.lists(inner, min_size=1, max_size=max_branch)),
        max_leaves=max_leaves)
