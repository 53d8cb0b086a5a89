import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mstruct.mcoalg import (MCoalgebra, StrictMorphism, check_contraction, check_mstructure, check_weak_coherence,
                            coherence_reports, compose_contractions, contraction_from_maps, example_b_table,
                            homotopy_commutativity, identity_contraction, product_mstructure, strict_compose,
                            table_mstructure, verify_coherence_identity)
from mstruct.samples import BASES, build_zigzag
from mstruct.simpchain import (canonical_mstructure, example_b, fixture, from_facets, load_example_b, simplex,
                               sphere_minimal, to_point, vertex_map)
from mstruct.symbar import Permutation
from mstruct.zmod import FreeComplex, GradedMap


@pytest.fixture(scope="module")
def structures():
    return {name: canonical_mstructure(fixture(name), 3, 4) for name in ("delta1", "delta2", "s2-min", "rp2")}


@pytest.mark.parametrize("name", ["delta1", "delta2", "s2-min", "rp2"])
def test_canonical_structure_axioms(structures, name):
    rep = check_mstructure(structures[name], 3, 3)
    assert rep.passed, rep.to_text()
    assert {"identity", "augmentation", "chain_map", "equivariance"} <= set(rep.outcomes)


@pytest.mark.parametrize("name", ["delta1", "s2-min"])
def test_canonical_structure_is_weakly_coherent(structures, name):
    bad = [r.title for r in coherence_reports(structures[name], 2, 4) if not r.passed]
    assert bad == []


def test_homotopy_commutativity_sign(structures):
    signs = {homotopy_commutativity(M).facts["sign"] for M in structures.values()}
    assert signs == {-1, None} or signs == {-1}


def test_coherence_identity_on_the_2_simplex(structures):
    rep = verify_coherence_identity(structures["delta2"], 3)
    assert rep.passed and rep.facts["nonzero_inputs"] > 0


def test_coherence_identity_needs_rank_three():
    with pytest.raises(ValueError):
        verify_coherence_identity(canonical_mstructure(simplex(1), 2, 2))


def test_a_corrupted_structure_is_caught():
    M = canonical_mstructure(simplex(1), 2, 2)
    t = Permutation((2, 1))

    def adjoint(r, c):
        val = dict(M.adjoint_basis(r, c))
        if r[1] == (t,) and M.complex.degree_of(c) == 1:
            val = {k: 2 * v for k, v in val.items()}
        return val
    bad = MCoalgebra(M.complex, adjoint, name="bad", rank_bound=2, degree_bound=2)
    rep = check_mstructure(bad, 2, 2)
    assert not rep.passed
    assert all(o.witness is not None for o in rep.failures().values())


# ---------------------------------------------------------------- example B


def test_example_b_listed_values():
    B = load_example_b()
    e = Permutation.identity(2)
    for (n, word, c), val in example_b_table().items():
        assert B.adjoint((e, word), c) == val
    assert example_b(2, 4).adjoint((e, (Permutation((2, 1)),) * 3), "x") == {("x", "x"): 1}


def test_example_b_swap_acts_by_minus_one():
    B = load_example_b()
    assert B.act_tensor(Permutation((2, 1)), {("x", "x"): 1}) == {("x", "x"): -1}


def test_example_b_json_round_trip():
    B = load_example_b()
    again = MCoalgebra.from_json(json.loads(B.dumps()))
    assert again.dumps() == B.dumps()


def test_table_structures_default_low_ranks():
    C = FreeComplex({0: ["p"]})
    M = table_mstructure(C, {(2, (), "p"): {("p", "p"): 1}}, rank_bound=2, degree_bound=2)
    assert check_mstructure(M, 2, 2).passed
    assert M.augmentation("p") == 1


def test_product_structure():
    D1 = canonical_mstructure(simplex(1), 2, 3)
    P = product_mstructure(D1, D1, 2)
    assert check_mstructure(P, 2, 2).passed


# ---------------------------------------------------------------- morphisms and contractions


def test_strict_morphisms_compose():
    X = from_facets([(0, 1, 2)])
    Y = from_facets([(0, 1)])
    P = from_facets([(0,)])
    MX, MY, MP = (canonical_mstructure(Z, 2, 2) for Z in (X, Y, P))
    f = StrictMorphism(MX, MY, vertex_map(X, Y, {0: 0, 1: 1, 2: 1}).chain_map(MX.complex, MY.complex))
    g = StrictMorphism(MY, MP, to_point(Y, P).chain_map(MY.complex, MP.complex))
    assert f.check(2, 2).passed and g.check(2, 2).passed
    assert strict_compose(g, f).check(2, 2).passed


def test_a_chain_map_that_is_not_strict():
    S = canonical_mstructure(sphere_minimal(2), 2, 2)
    C = S.complex
    double = GradedMap(C, C, 0, lambda x: {x: 2 if C.degree_of(x) == 2 else 1})
    # compatible with the coproduct, but Δ_{e_2}(σ) = σ⊗σ is quadratic
    rep = StrictMorphism(S, S, double).check(2, 2)
    assert not rep.passed
    witness = rep.failures()["square"].witness
    assert witness[0][1] == (Permutation((2, 1)),) * 2
    assert S.adjoint(witness[0], "s2") == {("s2", "s2"): 1}
    zero_top = GradedMap(C, C, 0, lambda x: {x: 1} if C.degree_of(x) == 0 else {})
    assert StrictMorphism(S, S, zero_top).check(2, 2).passed
    swap = GradedMap(C, C, 0, lambda x: {x: -1 if C.degree_of(x) == 0 else 1})
    assert not StrictMorphism(S, S, swap).check(2, 2).passed


@pytest.mark.parametrize("base", sorted(BASES))
def test_cone_contractions(base):
    ex = build_zigzag(BASES[base], [("right", tuple(sorted(BASES[base][0])))], "point")
    K = ex.top.steps[0].contraction
    rep = check_contraction(K)
    assert rep.passed, rep.to_text()


def test_identity_and_composite_contractions():
    ex = build_zigzag(BASES["edge"], [("right", (0, 1)), ("right", (0, 2))], "point")
    inner, outer = (s.contraction for s in ex.top.steps)
    C = outer.big
    assert check_contraction(identity_contraction(C)).passed
    K = compose_contractions(outer, inner)
    assert check_contraction(K).passed
    assert K.small is inner.small


def test_contraction_needs_a_retraction():
    C = FreeComplex({0: ["a", "b"], 1: ["e"]}, {"e": {"b": 1, "a": -1}})
    D = FreeComplex({0: ["p"]})
    inj = GradedMap(D, C, 0, lambda x: {"a": 1})
    proj = GradedMap(C, D, 0, lambda x: {"p": 1} if C.degree_of(x) == 0 else {})
    assert check_contraction(contraction_from_maps(C, D, inj, proj)).passed
    bad = GradedMap(C, D, 0, lambda x: {"p": 2} if C.degree_of(x) == 0 else {})
    assert not check_contraction(contraction_from_maps(C, D, inj, bad)).passed


@given(st.sampled_from(["delta1", "delta2", "rp2"]), st.integers(1, 2), st.integers(1, 2))
def test_weak_coherence_slots(name, n, m):
    M = canonical_mstructure(fixture(name), 3, 3)
    for i in range(1, m + 1):
        assert check_weak_coherence(M, n, m, i, 3).passed
