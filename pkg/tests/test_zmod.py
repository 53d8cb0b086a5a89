from hypothesis import given
from hypothesis import strategies as st

from mstruct.snf import invariant_factors, matmul, smith_form
from mstruct.zmod import (FreeComplex, GradedMap, boundary_solution, coboundary_solution, homology,
                          integer_solve, koszul_permutation_sign, mapping_cone)

small_ints = st.integers(-6, 6)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(st.lists(small_ints, min_size=n, max_size=n), min_size=m, max_size=m)))


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


@given(matrices())
def test_smith_form_is_a_factorization(A):
    S, U, V, Ui, Vi = smith_form(A)
    assert matmul(matmul(U, A), V) == S
    assert matmul(U, Ui) == _identity(len(A))
    assert matmul(V, Vi) == _identity(len(A[0]))
    diag = [S[i][i] for i in range(min(len(A), len(A[0]))) if S[i][i]]
    assert all(d > 0 for d in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    assert all(S[i][j] == 0 for i in range(len(A)) for j in range(len(A[0])) if i != j)


@given(matrices())
def test_sparse_and_dense_elimination_agree(A):
    cols = {j: {i: A[i][j] for i in range(len(A)) if A[i][j]} for j in range(len(A[0]))}
    S = smith_form(A)[0]
    dense = [S[i][i] for i in range(min(len(A), len(A[0]))) if S[i][i]]
    assert invariant_factors(cols, list(range(len(A))), list(range(len(A[0])))) == dense


@given(matrices(), st.lists(small_ints, min_size=5, max_size=5))
def test_integer_solve_finds_solutions_of_solvable_systems(A, x):
    x = x[:len(A[0])]
    b = [sum(a * y for a, y in zip(row, x)) for row in A]
    sol = integer_solve(A, b)
    assert sol is not None
    assert [sum(a * y for a, y in zip(row, sol)) for row in A] == b


def test_integer_solve_detects_unsolvable_systems():
    assert integer_solve([[2]], [1]) is None
    assert integer_solve([[2]], [1], modulus=3) == [2]
    assert integer_solve([[2]], [1], modulus=4) is None


@given(st.lists(st.integers(0, 3), min_size=1, max_size=5), st.randoms())
def test_koszul_sign_is_multiplicative(degrees, rnd):
    n = len(degrees)
    p = list(range(n))
    q = list(range(n))
    rnd.shuffle(p)
    rnd.shuffle(q)
    # first reorder by p, then reorder the result by q
    moved = [degrees[i] for i in p]
    total = [p[i] for i in q]
    assert koszul_permutation_sign(degrees, total) == \
        koszul_permutation_sign(degrees, p) * koszul_permutation_sign(moved, q)


def _circle():
    return FreeComplex({0: ["v"], 1: ["e"]}, {"e": {}})


def _disk():
    return FreeComplex({0: ["a", "b"], 1: ["e"]}, {"e": {"b": 1, "a": -1}})


def test_homology_of_small_complexes():
    H = homology(_circle())
    assert (H[0].rank, H[1].rank) == (1, 1)
    H = homology(_disk())
    assert (H[0].rank, H[1].rank) == (1, 0)
    C = FreeComplex({1: ["x"], 2: ["y"]}, {"y": {"x": 6}})
    assert homology(C)[1].torsion == (6,)
    assert str(homology(C)[1]) == "Z/6"


def test_rejects_malformed_boundaries():
    import pytest
    with pytest.raises(ValueError):
        FreeComplex({0: ["a"], 2: ["y"]}, {"y": {"a": 1}})
    with pytest.raises(ValueError):
        FreeComplex({0: ["a", "a"]})


def test_mapping_cone_of_identity_is_acyclic_and_of_zero_splits():
    C = _disk()
    cone = mapping_cone(GradedMap.identity(C)).complex
    assert all(h.is_zero for h in homology(cone, range(0, 3)).values())
    Z = GradedMap.zero(C, C)
    H = homology(mapping_cone(Z).complex, range(0, 3))
    assert (H[0].rank, H[1].rank) == (1, 1)


def test_boundary_and_coboundary_solutions():
    C = FreeComplex({1: ["x"], 2: ["y"]}, {"y": {"x": 2}})
    assert boundary_solution(C, 1, {"x": 4}) == {"y": 2}
    assert boundary_solution(C, 1, {"x": 3}) is None
    # δ(x*) = 2·y*: y* is not a coboundary, not even mod 2
    assert coboundary_solution(C, 2, {"y": 1}) is None
    assert coboundary_solution(C, 2, {"y": 1}, modulus=2) is None
    assert coboundary_solution(C, 2, {"y": 2}) == {"x": 1}
