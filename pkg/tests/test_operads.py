import pytest

from mstruct.operads import (augmentation_morphism, check_operad_identities, check_symmetric_equivariance,
                             coalgebra_as_morphism, endomorphism_operad, symmetric_construct, trivial_operad)
from mstruct.simpchain import alexander_whitney, simplex
from mstruct.symbar import Permutation
from mstruct.zmod import GradedMap


def test_trivial_operad_satisfies_everything():
    rep = check_operad_identities(trivial_operad(), 4, 0)
    assert rep.passed and rep.orientations == ("printed", "koszul")


def test_endomorphism_operad_needs_koszul_signs():
    rep = check_operad_identities(endomorphism_operad(simplex(1).chains(), rank_bound=3), 3, 1)
    assert rep.passed
    assert rep.orientations == ("koszul",)


def test_symmetric_construct_small_window():
    S = symmetric_construct(3, 1)
    rep = check_operad_identities(S, 3, 1)
    assert rep.passed and "koszul" in rep.orientations
    assert check_symmetric_equivariance(S, 3, 1) == []


def test_symmetric_construct_composition_example():
    S = symmetric_construct(3, 2)
    t = Permutation((2, 1))
    e3 = Permutation.identity(3)
    got = S.compose_basis((Permutation.identity(2), (t,)), 1, (Permutation.identity(2), (t,)))
    assert got == {(e3, (Permutation((3, 1, 2)), Permutation((2, 1, 3)))): 1,
                   (e3, (Permutation((2, 1, 3)), Permutation((2, 3, 1)))): -1}


def test_augmentation_is_an_operad_map():
    S = symmetric_construct(3, 2)
    assert augmentation_morphism(S).check(3, 2) == []


def test_slot_out_of_range():
    with pytest.raises(ValueError):
        trivial_operad().compose_basis(("b", 2), 3, ("b", 2))


def test_alexander_whitney_is_a_coalgebra():
    X = simplex(2)
    C = X.chains()
    delta = GradedMap(C, _tensor2(C), 0, lambda x: alexander_whitney(X, x))
    res = coalgebra_as_morphism(delta, rank_bound=3)
    assert res.ok, (res.failure, res.witness)


def test_non_coassociative_coproduct_is_rejected():
    X = simplex(1)
    C = X.chains()

    def bad(x):
        out = dict(alexander_whitney(X, x))
        if C.degree_of(x) == 1:
            # an extra term: no longer compatible with the differential
            v0, v1 = C.labels(0)
            out[(v1, x)] = out.get((v1, x), 0) + 1
            out[(v0, x)] = out.get((v0, x), 0) - 1
        return {k: v for k, v in out.items() if v}
    res = coalgebra_as_morphism(GradedMap(C, _tensor2(C), 0, bad))
    assert not res.ok and res.failure == "chain map" and res.witness is not None


def _tensor2(C):
    from mstruct.zmod import tensor_power
    return tensor_power(C, 2)
