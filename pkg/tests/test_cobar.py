import pytest

from mstruct.cobar import (Coalgebra, TwistingCochain, canonical_twisting, cobar, cobar_functor, cobar_row,
                           composite_twisting, k_invariant, twisted_tensor, word_degree)
from mstruct.mcoalg import zigzag_lift
from mstruct.samples import bubble_zigzag
from mstruct.simpchain import canonical_mstructure, fixture, from_facets, moore, product_set, sphere_minimal
from mstruct.zmod import FreeComplex, GradedMap, homology


def _coalg(X, degree=7):
    return Coalgebra.from_mcoalgebra(canonical_mstructure(X, 2, degree))


def _ranks(C, top):
    H = homology(C, range(top + 1))
    return [H[n].rank if not H[n].torsion else str(H[n]) for n in range(top + 1)]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_cobar_of_a_sphere_is_a_tensor_algebra(n):
    Om = cobar(_coalg(sphere_minimal(n)), 6)
    assert _ranks(Om.complex, 6) == [1 if m % (n - 1) == 0 else 0 for m in range(7)]
    assert all(not Om.complex.boundary_of(w) for d in Om.complex.degrees for w in Om.complex.labels(d))


def test_cobar_of_a_point():
    Om = cobar(_coalg(from_facets([(0,)])), 4)
    assert Om.complex.basis == {0: ((),)}


def test_cobar_of_a_product_of_spheres():
    Om = cobar(_coalg(product_set(sphere_minimal(2), sphere_minimal(2), 4), 4), 4)
    assert _ranks(Om.complex, 3) == [1, 2, 3, 4]
    assert Om.leibniz_witness() is None


def test_cobar_of_a_moore_space_sees_torsion():
    Om = cobar(_coalg(moore(2, 2), 4), 3)
    H = homology(Om.complex, range(3))
    assert str(H[1]) == "Z/2"


def test_word_degrees():
    C = _coalg(sphere_minimal(3)).complex
    assert word_degree(C, ("s3", "s3")) == 4


def test_cobar_preconditions():
    with pytest.raises(ValueError, match="reduced"):
        cobar(_coalg(fixture("s2")), 3)
    with pytest.raises(ValueError, match="1-reduced"):
        cobar(_coalg(fixture("circle")), 3)
    C = FreeComplex({0: ["p"], 2: ["a"], 4: ["b"]})
    copr = {"p": {("p", "p"): 1}, "a": {("p", "a"): 1, ("a", "p"): 1},
            "b": {("p", "b"): 1, ("b", "p"): 1, ("a", "a"): 1, ("a", "b"): 0}}
    ok = Coalgebra(C, lambda x: copr[x], {"p": 1})
    assert ok.coassociativity_witness() is None
    bad = dict(copr)
    bad["b"] = {("p", "b"): 1, ("b", "p"): 2, ("a", "a"): 1}
    broken = Coalgebra(C, lambda x: bad[x], {"p": 1})
    assert broken.coassociativity_witness() == "b"
    with pytest.raises(ValueError, match="coassociative"):
        cobar(broken, 4)


def test_cellular_cp2_cobar():
    # the cup square of the 2-cell is the 4-cell
    C = FreeComplex({0: ["p"], 2: ["a"], 4: ["b"]})
    copr = {"p": {("p", "p"): 1}, "a": {("p", "a"): 1, ("a", "p"): 1},
            "b": {("p", "b"): 1, ("b", "p"): 1, ("a", "a"): 1}}
    Om = cobar(Coalgebra(C, lambda x: copr[x], {"p": 1}), 5)
    # loops on CP^2 split as S^1 × ΩS^5: Z in degrees 0, 1, 4, 5
    assert _ranks(Om.complex, 4) == [1, 1, 0, 0, 1]
    T = twisted_tensor(Om.coalgebra, canonical_twisting(Om), 5)
    assert _ranks(T, 4) == [1, 0, 0, 0, 0]


@pytest.mark.parametrize("name", ["s2-min", "s3-min"])
def test_canonical_twisted_product_is_acyclic(name):
    Om = cobar(_coalg(fixture(name)), 6)
    T = twisted_tensor(Om.coalgebra, canonical_twisting(Om), 6)
    assert _ranks(T, 5) == [1, 0, 0, 0, 0, 0]


def test_twisted_product_of_a_product_is_acyclic():
    Om = cobar(_coalg(product_set(sphere_minimal(3), sphere_minimal(2), 5), 5), 5)
    T = twisted_tensor(Om.coalgebra, canonical_twisting(Om), 5)
    assert _ranks(T, 4) == [1, 0, 0, 0, 0]


def test_zero_twisting_gives_the_tensor_product():
    co = _coalg(sphere_minimal(2))
    Om = cobar(co, 4)
    T = twisted_tensor(co, TwistingCochain(co, Om, lambda x: {}), 4)
    # H(S^2) ⊗ H(ΩS^2): ranks 1, 1, 2, 2
    assert _ranks(T, 3) == [1, 1, 2, 2]


def test_cobar_functor_laws():
    co = _coalg(sphere_minimal(2))
    Om = cobar(co, 5)
    C = co.complex
    one = cobar_functor(GradedMap.identity(C), Om, Om)
    assert all(one.image(w) == {w: 1} for d in Om.complex.degrees for w in Om.complex.labels(d))
    double = GradedMap(C, C, 0, lambda x: {x: 2 if C.degree_of(x) == 2 else 1})
    Od = cobar_functor(double, Om, Om)
    assert Od.image(("s2",)) == {("s2",): 2}
    assert Od.image(("s2", "s2")) == {("s2", "s2"): 4}
    OO = cobar_functor(double.compose(double), Om, Om)
    assert all(OO.image(w) == Od(Od.image(w)) for d in Om.complex.degrees for w in Om.complex.labels(d))
    # naturality of the twisting cochain on generators
    for x in C.labels(2):
        assert Od(Om.alpha(x)) == {k: v for y, c in double.image(x).items() for k, v in
                                   {w: c * u for w, u in Om.alpha(y).items()}.items()}
    assert Od.is_chain_map()


def test_cobar_functor_rejects_non_coalgebra_maps():
    co = _coalg(product_set(sphere_minimal(2), sphere_minimal(2), 4), 4)
    Om = cobar(co, 3)
    C = co.complex
    x = C.labels(4)[0]
    f = GradedMap(C, C, 0, lambda y: {y: 2} if y == x else {y: 1})
    with pytest.raises(ValueError, match="coalgebra map"):
        cobar_functor(f, Om, Om)


@pytest.mark.parametrize("ops", [["right"], ["right", "left"]])
def test_cobar_rows(ops):
    ex = bubble_zigzag(ops)
    row = cobar_row(zigzag_lift(ex.top, ex.a, ex.b), 4)
    assert row.report.passed, row.report.to_text()
    assert all(k in row.report.outcomes for k in ("step0.counit_square", "splice.counit_square"))


def test_composite_twisting_matches_canonical_on_identity():
    co = _coalg(sphere_minimal(2))
    Om = cobar(co, 4)
    tau = composite_twisting(Om, GradedMap.identity(co.complex), co)
    for d in co.complex.degrees:
        for x in co.complex.labels(d):
            assert tau(x) == Om.alpha(x)


# ---------------------------------------------------------------- k-invariants


def _point_into(X):
    P = from_facets([(0,)]).chains()
    C = X.chains()
    v = C.labels(0)[0]
    return GradedMap(P, C, 0, lambda x: {v: 1}), C


def test_k_invariant_of_the_basepoint_of_a_sphere():
    for n in (2, 3):
        f, C = _point_into(sphere_minimal(n))
        K = k_invariant(f, n)
        assert K.orders == (0,) and str(K.group) == "Z"
        assert K.cocycle == {f"s{n}": (1,)} and not K.is_zero


def test_k_invariant_pairs_to_one_with_the_fundamental_cycle():
    f, C = _point_into(fixture("s2"))
    K = k_invariant(f, 2)
    cycle = {"123": 1, "023": -1, "013": 1, "012": -1}
    assert not C.d(cycle)
    assert sum(v * K.cocycle.get(x, (0,))[0] for x, v in cycle.items()) == 1


def test_k_invariant_of_the_degree_two_map():
    C = sphere_minimal(2).chains()
    f = GradedMap(C, C, 0, lambda x: {x: 2 if C.degree_of(x) == 2 else 1})
    K = k_invariant(f, 2)
    assert K.orders == (2,) and K.cocycle == {"s2": (1,)} and not K.is_zero


def test_k_invariant_of_the_identity_is_trivial():
    C = sphere_minimal(2).chains()
    K = k_invariant(GradedMap.identity(C), 2)
    assert K.orders == () and K.is_zero


def test_k_invariant_preconditions():
    f, _ = _point_into(sphere_minimal(2))
    with pytest.raises(ValueError, match="H_2"):
        k_invariant(f, 3)
    g, _ = _point_into(fixture("circle"))
    with pytest.raises(ValueError, match="H_1"):
        k_invariant(g, 2)
