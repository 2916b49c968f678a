import math

import numpy as np
import pytest

from src.geometry.circles import (
    CirclePosition,
    circle_apply,
    circle_distance,
    circle_from_center_radius,
    circle_through_points,
    circles_disjoint,
    inversive_distance,
    oriented_circle_apply,
)
from src.geometry.moebius import (
    mob_apply,
    mob_classify,
    mob_compose,
    mob_conjugate,
    mob_fixed_points,
    mob_from_three_points,
    mob_identity,
    mob_inverse,
)
from src.models.sphere import CircleSide, MoebiusClass, MoebiusMap, OrientedCircle
from src.utils.numeric_utils import (
    INFINITY,
    chordal_distance,
    polyline_is_simple,
    signed_area,
    sphere_point,
    winding_number,
)
from src.validation.suites import random_map


def test_determinant_is_normalized():
    """Stored coefficients always satisfy ad - bc = 1."""
    rng = np.random.default_rng(3)
    for _ in range(20):
        m = random_map(rng)
        assert abs(m.determinant - 1) < 1e-12


def test_scalar_multiples_are_the_same_map():
    """2I normalizes to the identity."""
    m = MoebiusMap(a=2, b=0, c=0, d=2)
    assert m.is_equivalent(mob_identity())
    assert mob_classify(m) == MoebiusClass.IDENTITY


def test_degenerate_map_rejected():
    """A zero determinant is not a Möbius map."""
    with pytest.raises(ValueError, match="determinant is zero"):
        MoebiusMap(a=1, b=2, c=2, d=4)


def test_non_finite_coefficients_rejected():
    """Infinite coefficients are refused."""
    with pytest.raises(ValueError, match="finite"):
        MoebiusMap(a=math.inf, b=0, c=0, d=1)


def test_apply_handles_infinity():
    """Poles go to ∞ and ∞ goes to a/c."""
    translation = MoebiusMap(a=1, b=1, c=0, d=1)
    assert mob_apply(translation, 2) == 3
    assert mob_apply(translation, INFINITY) is INFINITY

    flip = MoebiusMap(a=0, b=1, c=1, d=0)
    assert mob_apply(flip, 0) is INFINITY
    assert mob_apply(flip, INFINITY) == 0
    assert abs(mob_apply(flip, 2) - 0.5) < 1e-12


def test_compose_with_inverse_is_identity():
    """m∘m⁻¹ is the identity up to sign."""
    rng = np.random.default_rng(7)
    for _ in range(20):
        m = random_map(rng)
        assert mob_compose(m, mob_inverse(m)).is_equivalent(mob_identity(), tol=1e-9)


def test_compose_order():
    """mob_compose(f, g) applies g first."""
    f = MoebiusMap(a=2, b=0, c=0, d=1)
    g = MoebiusMap(a=1, b=1, c=0, d=1)
    assert abs(mob_apply(mob_compose(f, g), 1) - 4) < 1e-12
    assert abs(mob_apply(mob_compose(g, f), 1) - 3) < 1e-12


def test_three_point_map():
    """The map sends each source point to its target."""
    m = mob_from_three_points((0, 1, 2), (1j, 3, -1))
    for z, w in zip((0, 1, 2), (1j, 3, -1)):
        assert abs(mob_apply(m, z) - w) < 1e-9


def test_three_point_map_needs_distinct_points():
    """Repeated points do not determine a map."""
    with pytest.raises(ValueError, match="distinct"):
        mob_from_three_points((0, 0, 1), (1, 2, 3))


def test_classification():
    """Translations are parabolic, rotations elliptic, dilations loxodromic."""
    assert mob_classify(MoebiusMap(a=1, b=1, c=0, d=1)) == MoebiusClass.PARABOLIC
    assert mob_classify(MoebiusMap(a=1j, b=0, c=0, d=1)) == MoebiusClass.ELLIPTIC
    assert mob_classify(MoebiusMap(a=2, b=0, c=0, d=1)) == MoebiusClass.LOXODROMIC
    assert mob_classify(MoebiusMap(a=2j, b=0, c=0, d=1)) == MoebiusClass.LOXODROMIC


def test_classification_survives_conjugation():
    """Conjugate maps have the same type."""
    rng = np.random.default_rng(11)
    rotation = MoebiusMap(a=1j, b=0, c=0, d=1)
    for _ in range(10):
        g = random_map(rng)
        assert mob_classify(mob_conjugate(g, rotation), tol=1e-8) == MoebiusClass.ELLIPTIC


def test_fixed_points_of_dilation():
    """z ↦ 2z attracts to ∞ with multiplier 1/2 there."""
    first, second, multiplier = mob_fixed_points(MoebiusMap(a=2, b=0, c=0, d=1))
    assert first is INFINITY
    assert second == 0
    assert abs(multiplier - 0.5) < 1e-12


def test_fixed_points_of_parabolic_and_identity():
    """A translation fixes only ∞; the identity has no isolated fixed points."""
    first, second, multiplier = mob_fixed_points(MoebiusMap(a=1, b=1, c=0, d=1))
    assert first is INFINITY
    assert second is None
    assert multiplier == 1

    with pytest.raises(ValueError, match="fixes every point"):
        mob_fixed_points(mob_identity())


def test_fixed_points_are_fixed():
    """Both fixed points of a random loxodromic map are fixed."""
    rng = np.random.default_rng(5)
    m = random_map(rng)
    while mob_classify(m) != MoebiusClass.LOXODROMIC:
        m = random_map(rng)
    first, second, multiplier = mob_fixed_points(m)
    for z in (first, second):
        assert chordal_distance(mob_apply(m, z), z) < 1e-8
    assert abs(multiplier) < 1


def test_sphere_points():
    """'inf' and infinite magnitudes are ∞; NaN is rejected."""
    assert sphere_point("inf") is INFINITY
    assert sphere_point(complex(math.inf, 0)) is INFINITY
    assert chordal_distance(0, INFINITY) == 2.0
    with pytest.raises(ValueError, match="NaN"):
        sphere_point(float("nan"))


def test_circle_normalization():
    """Center and radius survive the (p, q, s) normalization."""
    c = circle_from_center_radius(1 + 1j, 2)
    assert abs(c.center - (1 + 1j)) < 1e-12
    assert abs(c.radius - 2) < 1e-12
    assert abs(abs(c.q) ** 2 - c.p * c.s - 1) < 1e-12


def test_circle_through_collinear_points_is_line():
    """Three collinear points give a line."""
    assert circle_through_points(0, 1, 2).is_line
    c = circle_through_points(1, 1j, -1)
    assert abs(c.center) < 1e-12
    assert abs(c.radius - 1) < 1e-12


def test_circle_image_under_translation():
    """Translating a circle moves its center."""
    c = circle_apply(MoebiusMap(a=1, b=3, c=0, d=1), circle_from_center_radius(1 + 1j, 2))
    assert abs(c.center - (4 + 1j)) < 1e-12
    assert abs(c.radius - 2) < 1e-12


def test_circle_through_pole_becomes_line():
    """1/z sends the circle |z - 1| = 1 to the line Re w = 1/2."""
    line = circle_apply(MoebiusMap(a=0, b=1, c=1, d=0), circle_from_center_radius(1, 1))
    assert line.is_line
    assert circle_distance(line, 0.5 + 7j) < 1e-9
    assert abs(circle_distance(line, 1.5) - 1.0) < 1e-9


def test_oriented_image_swaps_side():
    """1/z carries the inside of the unit circle to the outside."""
    unit = OrientedCircle(circle=circle_from_center_radius(0, 1), side=CircleSide.INTERIOR)
    image = oriented_circle_apply(MoebiusMap(a=0, b=1, c=1, d=0), unit)
    assert image.side == CircleSide.EXTERIOR
    assert image.contains(2)
    assert not image.contains(0.5)


def test_inversive_distance_and_positions():
    """Inversive distance classifies relative position."""
    far = (circle_from_center_radius(0, 1), circle_from_center_radius(5, 2))
    assert abs(inversive_distance(*far) - 5) < 1e-12
    assert circles_disjoint(*far) == CirclePosition.DISJOINT_EXTERNAL
    nested = (circle_from_center_radius(0, 3), circle_from_center_radius(0.5, 1))
    assert circles_disjoint(*nested) == CirclePosition.DISJOINT_NESTED
    assert circles_disjoint(circle_from_center_radius(0, 1), circle_from_center_radius(1, 1)) \
        == CirclePosition.CROSSING
    assert circles_disjoint(circle_from_center_radius(0, 1), circle_from_center_radius(2, 1)) \
        == CirclePosition.TANGENT


def test_inversive_distance_is_moebius_invariant():
    """Random maps keep the inversive distance of two circles."""
    rng = np.random.default_rng(13)
    c1, c2 = circle_from_center_radius(0, 1), circle_from_center_radius(3 + 1j, 0.5)
    before = inversive_distance(c1, c2)
    for _ in range(10):
        m = random_map(rng)
        after = inversive_distance(circle_apply(m, c1), circle_apply(m, c2))
        assert abs(after - before) < 1e-8 * max(1.0, before)


def test_polyline_helpers():
    """Area sign, winding and simplicity of small polygons."""
    square = [0, 1, 1 + 1j, 1j]
    assert signed_area(square) == pytest.approx(1.0)
    assert signed_area(square[::-1]) == pytest.approx(-1.0)
    assert winding_number(square, 0.5 + 0.5j) == 1
    assert winding_number(square, 3) == 0
    assert polyline_is_simple(square)
    assert not polyline_is_simple([0, 1 + 1j, 1, 1j])


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
