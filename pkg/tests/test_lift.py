import pytest

from mstruct.mcoalg import StrictMorphism, ZigZag, check_lift, zigzag_lift
from mstruct.samples import BASES, build_zigzag, bubble_zigzag, random_zigzag

SEEDS = range(50)


def _lift(ex):
    return zigzag_lift(ex.top, ex.a, ex.b)


@pytest.fixture(scope="module")
def suite():
    out = []
    for seed in SEEDS:
        ex = random_zigzag(seed)
        L = _lift(ex)
        out.append((seed, ex, L, check_lift(L)))
    return out


def test_random_examples_stay_small(suite):
    for _, ex, _, _ in suite:
        assert all(sum(len(v) for v in M.complex.basis.values()) <= 12 for M in ex.top.objects)


def test_everything_but_naturality_holds(suite):
    for seed, _, _, rep in suite:
        others = [k for k in rep.failures() if not k.startswith("phi_natural")]
        assert others == [], (seed, others)
        assert rep.facts["projection_matches_b"]


def test_rightward_zigzags_pass_completely(suite):
    checked = 0
    for seed, ex, _, rep in suite:
        if all(s.kind == "right" for s in ex.top.steps):
            checked += 1
            assert rep.passed, (seed, rep.failures())
    assert checked > 10


def test_pullback_columns_fail_naturality_exactly_when_p_phi_is_nonzero(suite):
    for seed, ex, L, rep in suite:
        for j, phiU, phiZ in L.phi_pairs:
            p = L.columns[j].p.g
            U = p.source
            nonzero = any(p(phiU.image(x)) for n in U.degrees for x in U.labels(n))
            zero_phiZ = all(not phiZ.image(z) for n in phiZ.source.degrees for z in phiZ.source.labels(n))
            name = f"phi_natural{j}"
            if zero_phiZ:
                assert rep[name].passed == (not nonzero), (seed, j)


def test_two_step_example_over_the_sphere():
    ex = build_zigzag(BASES["sphere"], [("right", (0, 1)), ("left", 4)], "base")
    rep = check_lift(_lift(ex))
    assert [k for k in rep.failures() if not k.startswith("phi_natural")] == []


def test_bubble_lifts():
    rep = check_lift(_lift(bubble_zigzag(["right"])))
    assert rep.passed, rep.to_text()


def test_mismatched_ends_are_rejected():
    ex = random_zigzag(0)
    other = random_zigzag(1)
    with pytest.raises(ValueError):
        zigzag_lift(ex.top, other.a, ex.b)


def test_map_steps_are_rejected():
    from mstruct.mcoalg import Step
    ex = build_zigzag(BASES["vertex"], [("right", (0,))], "point")
    M0, M1 = ex.top.objects
    K = ex.top.steps[0].contraction
    top = ZigZag([M0, M1], [Step("map", morphism=StrictMorphism(M0, M1, K.injection))])
    with pytest.raises(ValueError):
        zigzag_lift(top, ex.a, ex.b)
