import pytest
from hypothesis import given
from hypothesis import strategies as st

from mstruct.symbar import (BarResolution, Permutation, d_squared_defect, parse_cycles, permute_tensor_factors,
                            simplex_boundary, symmetric_group, to_simplices, from_simplices)


def perms(n):
    return st.permutations(list(range(1, n + 1))).map(Permutation)


ranks = st.integers(1, 5)


def test_product_applies_left_factor_first():
    p, q = Permutation((2, 3, 1, 4)), Permutation((4, 3, 2, 1))
    assert p * q == Permutation((3, 2, 4, 1))
    assert all((p * q)(i) == q(p(i)) for i in range(1, 5))
    assert p.compose(q) == q * p


@given(ranks.flatmap(lambda n: st.tuples(perms(n), perms(n), perms(n))))
def test_group_laws(triple):
    p, q, r = triple
    e = Permutation.identity(len(p))
    assert (p * q) * r == p * (q * r)
    assert p * e == p == e * p
    assert p * p.inverse() == e


@given(ranks.flatmap(perms))
def test_cycle_notation_round_trip(p):
    assert parse_cycles(p.cycle_string(), len(p)) == p


def test_parse_cycles_examples_and_errors():
    assert parse_cycles("(1,3,2)", 3) == Permutation((3, 1, 2))
    assert parse_cycles("()", 2) == Permutation.identity(2)
    for bad in ("(1,1)", "(1,4)", "1,2"):
        with pytest.raises(ValueError):
            parse_cycles(bad, 3)


def test_rank_two_boundary_formula():
    R = BarResolution(2)
    t = Permutation((2, 1))
    e = Permutation.identity(2)
    for i in range(1, 7):
        expected = {(e, (t,) * (i - 1)): 1}
        sign = -1 if i % 2 else 1
        key = (t, (t,) * (i - 1))
        expected[key] = expected.get(key, 0) + sign
        assert R.boundary_of((e, (t,) * i)) == expected


@pytest.mark.parametrize("n,k", [(n, k) for n in (2, 3, 4) for k in (2, 3, 4)])
def test_d_squared_vanishes(n, k):
    assert d_squared_defect(n, k) == 0


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    perms(n), perms(n), st.lists(perms(n).filter(lambda g: not g.is_identity), max_size=3))))
def test_boundary_is_equivariant_and_matches_simplices(data):
    h, g, word = data
    R = BarResolution(len(h))
    lab = (g, tuple(word))
    assert R.d(R.act(h, {lab: 1})) == R.act(h, R.boundary_of(lab))
    # the bar differential is the simplicial boundary of E S_n in disguise
    simp = {}
    for verts, v in to_simplices({lab: 1}).items():
        for f, s in simplex_boundary(verts).items():
            simp[f] = simp.get(f, 0) + s * v
    assert from_simplices({k: v for k, v in simp.items() if v}) == R.boundary_of(lab)


@given(st.integers(2, 4).flatmap(lambda n: st.tuples(
    perms(n), st.lists(perms(n).filter(lambda g: not g.is_identity), max_size=3))))
def test_contracting_homotopy(data):
    g, word = data
    R = BarResolution(len(g))
    x = {(g, tuple(word)): 1}
    lhs = R.d(R.contracting_homotopy(x))
    for k, v in R.contracting_homotopy(R.d(x)).items():
        lhs[k] = lhs.get(k, 0) + v
    rhs = {k: -v for k, v in x.items()}
    if not word:
        rhs[(R.identity, ())] = rhs.get((R.identity, ()), 0) + 1
    assert {k: v for k, v in lhs.items() if v} == {k: v for k, v in rhs.items() if v}
    assert R.contracting_homotopy(R.contracting_homotopy(x)) == {}


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(perms(n), perms(n), st.lists(st.integers(0, 3), min_size=n, max_size=n))))
def test_tensor_action_is_an_action(data):
    p, q, degs = data
    labs = tuple(f"x{i}" for i in range(len(p)))
    deg = {lab: d for lab, d in zip(labs, degs)}
    once = permute_tensor_factors(p * q, {labs: 1}, deg.get)
    twice = {}
    for k, v in permute_tensor_factors(p, {labs: 1}, deg.get).items():
        for k2, v2 in permute_tensor_factors(q, {k: v}, deg.get).items():
            twice[k2] = twice.get(k2, 0) + v2
    assert once == twice


def test_symmetric_group_sizes():
    assert [len(symmetric_group(n)) for n in range(1, 6)] == [1, 2, 6, 24, 120]
