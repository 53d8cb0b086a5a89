from hypothesis import given
from hypothesis import strategies as st

from mstruct.surjection import (interval_cuts, is_surjection, simplicial_boundary, surjection_boundary,
                                table_reduction)
from mstruct.zmod import add_into


def be_simplices(r, max_dim=3):
    """Nondegenerate Barratt–Eccles simplices of arity ``r``."""
    perm = st.permutations(list(range(1, r + 1))).map(tuple)
    return st.lists(perm, min_size=1, max_size=max_dim + 1).filter(
        lambda s: all(a != b for a, b in zip(s, s[1:]))).map(tuple)


def _bd_vec(vec, r):
    out = {}
    for u, v in vec.items():
        add_into(out, surjection_boundary(u, r), v)
    return {k: v for k, v in out.items() if v}


@given(st.integers(2, 3).flatmap(be_simplices))
def test_table_reduction_is_a_chain_map(s):
    r = len(s[0])
    lhs = {}
    for face, v in simplicial_boundary(s).items():
        add_into(lhs, table_reduction(face), v)
    lhs = {k: v for k, v in lhs.items() if v}
    assert lhs == _bd_vec(table_reduction(s), r)


@given(st.integers(2, 3).flatmap(be_simplices))
def test_table_reduction_lands_in_surjections(s):
    r = len(s[0])
    for u in table_reduction(s):
        assert is_surjection(u, r) and len(u) == r + len(s) - 1


@given(st.integers(2, 3).flatmap(lambda r: be_simplices(r, 4)))
def test_surjection_boundary_squares_to_zero(s):
    r = len(s[0])
    for u in table_reduction(s):
        assert _bd_vec(surjection_boundary(u, r), r) == {}


def test_interval_cuts_of_the_identity_surjection_are_alexander_whitney():
    terms = {(f[0], f[1]): sign for _, f, sign in interval_cuts((1, 2), 2)}
    assert terms == {((0,), (0, 1, 2)): 1, ((0, 1), (1, 2)): 1, ((0, 1, 2), (2,)): 1}
