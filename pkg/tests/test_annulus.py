import math

import numpy as np
import pytest

from src.annulus.lemmas import lemma4_ratio
from src.annulus.modulus import (
    cover_modulus_relation,
    grotzsch_check,
    modulus,
    modulus_by_normalization,
    modulus_circle_ring,
    modulus_round,
    normalize_ring_to_concentric,
    random_moebius_keeping_ring,
    ring_core_circle,
    ring_from_circles,
    ring_image,
)
from src.annulus.numeric import modulus_numeric
from src.annulus.sampling import core_curve, sample_boundaries
from src.annulus.separating import find_separating_circle, separating_clearance
from src.errors import CoreCurveNotEssentialError, DegenerateAnnulusError, NonEssentialAnnulusError
from src.geometry.circles import circle_apply, circle_from_center_radius
from src.models.annulus import (
    AnnulusTask,
    BoundarySampling,
    CircleRing,
    LaurentMap,
    Mapped,
    RationalMap,
    Round,
    mapped_injectivity_problems,
)


def _ring(inner_center, inner_radius, outer_center=0, outer_radius=1.0):
    return CircleRing(
        inner=circle_from_center_radius(inner_center, inner_radius),
        outer=circle_from_center_radius(outer_center, outer_radius),
    )


def test_round_modulus_normalization():
    """mod(A_r) = log(r)/π, so r = e^π has modulus 1."""
    assert modulus_round(math.exp(math.pi)) == pytest.approx(1.0)
    assert modulus(Round(r=2)) == pytest.approx(math.log(2) / math.pi)


def test_round_annulus_needs_r_above_one():
    """r ≤ 1 does not describe an annulus."""
    with pytest.raises(DegenerateAnnulusError):
        modulus_round(1.0)
    with pytest.raises(ValueError):
        Round(r=0.5)


def test_concentric_ring_modulus():
    """Radii 1 and e^{2π} give modulus 1."""
    ring = _ring(0, 1.0, 0, math.exp(2 * math.pi))
    assert modulus_circle_ring(ring) == pytest.approx(1.0)


def test_eccentric_ring_agrees_with_normalization():
    """Inversive distance and the concentric normal form give the same modulus."""
    ring = _ring(0.3, 0.1)
    assert modulus_by_normalization(ring) == pytest.approx(modulus_circle_ring(ring), rel=1e-9)


def test_normalization_makes_ring_concentric():
    """Both image circles are centered at the origin, inner one smaller."""
    ring = _ring(0.3 + 0.2j, 0.2)
    m = normalize_ring_to_concentric(ring)
    inner, outer = circle_apply(m, ring.inner), circle_apply(m, ring.outer)
    assert abs(inner.center) < 1e-9 * outer.radius
    assert abs(outer.center) < 1e-9 * outer.radius
    assert inner.radius < outer.radius


def test_core_circle_separates_boundaries():
    """The pulled-back middle circle encloses the inner circle and stays inside the outer one."""
    ring = _ring(0.3, 0.1)
    core = ring_core_circle(ring)
    assert abs(core.center - ring.inner.center) + ring.inner.radius < core.radius
    assert abs(core.center - ring.outer.center) + core.radius < ring.outer.radius


def test_ring_requires_nesting():
    """Inner circles poking out of the outer one are rejected."""
    with pytest.raises(ValueError, match="strictly inside"):
        _ring(0.8, 0.5)
    with pytest.raises(DegenerateAnnulusError, match="nested"):
        ring_from_circles(circle_from_center_radius(0, 1), circle_from_center_radius(1, 1))


def test_ring_modulus_is_moebius_invariant():
    """Random maps keeping the ring bounded preserve its modulus."""
    rng = np.random.default_rng(17)
    ring = _ring(0.3, 0.1)
    before = modulus_circle_ring(ring)
    for _ in range(10):
        m = random_moebius_keeping_ring(ring, rng, margin=2.0)
        assert modulus_circle_ring(ring_image(m, ring)) == pytest.approx(before, rel=1e-7)


def test_cover_relation():
    """z ↦ z^d multiplies the modulus of the covered annulus by d."""
    relation = cover_modulus_relation(2.0, 3)
    assert relation.mod_target == pytest.approx(3 * relation.mod_domain)
    assert relation.relation_error < 1e-12
    assert relation.ratio == pytest.approx(1 / 3)
    assert not relation.reversed_orientation_holds
    assert cover_modulus_relation(2.0, 1).reversed_orientation_holds

    with pytest.raises(ValueError, match="degree must be positive"):
        cover_modulus_relation(2.0, 0)


@pytest.mark.parametrize("rho, d", [(1.5, 2), (1.3, 3), (1.2, 5)])
def test_cover_target_is_the_modulus_of_the_image(rho, d):
    """The target modulus is measured on A_{ρ^d}, not derived from the domain."""
    relation = cover_modulus_relation(rho, d)
    target = Round(r=rho ** d)

    assert relation.mod_target == pytest.approx(modulus(target), rel=1e-12)
    numeric = modulus_numeric(sample_boundaries(target, 512))
    assert abs(numeric - relation.mod_target) / relation.mod_target < 0.01
    assert relation.mod_target / relation.mod_domain == pytest.approx(d)


def test_grotzsch_for_essential_sub_ring():
    """A concentric sub-ring of A_2 has smaller modulus."""
    sub_ring = _ring(0, 0.6, 0, 1.5)
    assert grotzsch_check(Round(r=2), sub_ring)


def test_grotzsch_rejects_non_essential_sub_ring():
    """A sub-ring whose inner circle misses the hole is refused."""
    sub_ring = _ring(1.0, 0.2, 0, 1.8)
    with pytest.raises(NonEssentialAnnulusError):
        grotzsch_check(Round(r=2), sub_ring)


def test_boundary_sampling_of_round_annulus():
    """Boundaries come out counterclockwise with the right radii."""
    sampling = sample_boundaries(Round(r=2), 64)
    assert np.allclose(np.abs(sampling.inner), 0.5)
    assert np.allclose(np.abs(sampling.outer), 2.0)
    assert sampling.density == 64


def test_boundary_sampling_rejects_crossing_curves():
    """Intersecting polylines are not an annulus."""
    square = [0, 1, 1 + 1j, 1j]
    shifted = [0.5 + 0.5j, 1.5 + 0.5j, 1.5 + 1.5j, 0.5 + 1.5j]
    with pytest.raises(ValueError, match="intersect"):
        BoundarySampling(inner=shifted, outer=square, density=4)


def test_numeric_modulus_of_round_annulus():
    """Finite differences reproduce log(r)/π within 1%."""
    exact = modulus_round(2.0)
    numeric = modulus_numeric(sample_boundaries(Round(r=2), 512))
    assert abs(numeric - exact) / exact < 0.01


def test_numeric_modulus_of_eccentric_ring():
    """Finite differences reproduce the inversive-distance formula within 1%."""
    ring = _ring(0.2, 0.3)
    exact = modulus_circle_ring(ring)
    numeric = modulus_numeric(sample_boundaries(ring, 512))
    assert abs(numeric - exact) / exact < 0.01


def test_joukowski_image_is_a_mapped_annulus():
    """z + 0.1/z is injective on A_2; the image modulus equals the base modulus."""
    annulus = Mapped(base=Round(r=2), f=LaurentMap.joukowski(0.1))
    assert modulus(annulus) == pytest.approx(modulus_round(2.0), rel=0.01)


def test_mapped_annulus_needs_injective_map():
    """z + 1/z folds the unit circle, so it cannot map A_2 injectively."""
    with pytest.raises(ValueError, match="derivative vanishes"):
        Mapped(base=Round(r=2), f=LaurentMap.joukowski(1.0))


def test_mapped_annulus_rejects_map_folding_near_the_boundary():
    """z + 8/z on A_3 sends 2.9 and 8/2.9 to the same point."""
    f = LaurentMap.joukowski(8.0)
    assert f.evaluate(2.9) == pytest.approx(f.evaluate(8 / 2.9))

    with pytest.raises(ValueError, match="derivative vanishes"):
        Mapped(base=Round(r=3), f=f)


def test_mapped_annulus_rejects_double_covering():
    """A value near the outer boundary of A_3 has two preimages under z + 8/z."""
    problems = mapped_injectivity_problems(3.0, LaurentMap.joukowski(8.0))
    assert any("taken 2 times" in p for p in problems)


def test_joukowski_critical_points():
    """The critical points of z + c/z are ±√c."""
    roots = np.sort_complex(LaurentMap.joukowski(4.0).critical_points())
    assert np.allclose(roots, [-2, 2])
    assert LaurentMap(coefficients={2: 1}).critical_points().size == 0


def test_thin_joukowski_image_is_accepted():
    """Critical points just outside A_1.2 still give an injective map."""
    f = LaurentMap.joukowski(1.4688)
    assert np.all(np.abs(f.critical_points()) > 1.2)
    assert mapped_injectivity_problems(1.2, f) == []


def test_constant_laurent_map_rejected():
    """Only a constant term is not a map of annuli."""
    with pytest.raises(ValueError, match="constant"):
        LaurentMap(coefficients={0: 1})


def test_rational_maps():
    """Degrees and evaluation of the rational map helpers."""
    assert RationalMap.power(3).degree == 3
    assert RationalMap.identity().evaluate(2.0) == pytest.approx(2.0)
    joukowski = RationalMap.from_laurent(LaurentMap.joukowski(0.1))
    assert joukowski.evaluate(2.0) == pytest.approx(2.05)
    with pytest.raises(ValueError, match="constant"):
        RationalMap(numerator=[3])


def test_task_needs_map_and_target_together():
    """A rational map without a target annulus is incomplete."""
    with pytest.raises(ValueError, match="together"):
        AnnulusTask(annulus=Round(r=2), rational_map=RationalMap.power(2))


def test_separating_circle_in_round_annulus():
    """A thick round annulus contains a circle around the hole."""
    annulus = Round(r=3)
    circle = find_separating_circle(annulus, 256)
    assert circle is not None
    assert separating_clearance(circle, sample_boundaries(annulus, 256)) > 0
    assert 1 / 3 < circle.radius < 3


def test_separating_circle_in_eccentric_ring():
    """An off-center hole is still enclosed with positive clearance."""
    ring = _ring(0.3, 0.1)
    circle = find_separating_circle(ring, 256)

    assert circle is not None
    assert separating_clearance(circle, sample_boundaries(ring, 256)) > 0
    assert abs(circle.center - 0.3) + 0.1 < circle.radius < 1 - abs(circle.center)


def test_separating_circle_in_joukowski_image():
    """The image of A_2 under z + 0.1/z contains a separating circle."""
    annulus = Mapped(base=Round(r=2), f=LaurentMap.joukowski(0.1))
    circle = find_separating_circle(annulus, 256)

    assert circle is not None
    assert separating_clearance(circle, sample_boundaries(annulus, 256)) > 0


def test_separating_clearance_of_unit_circle():
    """The unit circle clears A_2 by 1/2 on the inside."""
    sampling = sample_boundaries(Round(r=2), 512)
    assert separating_clearance(circle_from_center_radius(0, 1), sampling) == pytest.approx(0.5)
    assert separating_clearance(circle_from_center_radius(0, 0.3), sampling) < 0


def test_core_curve_of_round_annulus():
    """The core curve of A_r is the unit circle."""
    assert np.allclose(np.abs(core_curve(Round(r=2), 32)), 1.0)


def test_power_map_modulus_ratio():
    """z ↦ z² from A_1.5 onto A_2.25 has degree 2 and ratio 1/2."""
    measurement = lemma4_ratio(RationalMap.power(2), Round(r=1.5), Round(r=2.25))
    assert measurement.degree == 2
    assert measurement.ratio == pytest.approx(0.5)
    assert measurement.method == "closed_form/closed_form"


def test_modulus_ratio_needs_essential_map():
    """A translate of the core curve that misses the hole is refused."""
    with pytest.raises(CoreCurveNotEssentialError):
        lemma4_ratio(RationalMap(numerator=[5, 1]), Round(r=1.5), Round(r=10))


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
