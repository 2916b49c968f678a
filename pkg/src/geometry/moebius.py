"""Möbius transformations of the Riemann sphere.

All maps are SL(2, C) representatives; composition renormalizes.
"""
import cmath
from typing import Optional, Tuple

from ..models.sphere import MoebiusClass, MoebiusMap
from ..utils.numeric_utils import (
    ALGEBRAIC_TOL,
    GEOMETRIC_TOL,
    INFINITY,
    SpherePoint,
    is_infinity,
    sphere_point,
)


OMEGA3 = cmath.exp(2j * cmath.pi / 3)


def mob_identity() -> MoebiusMap:
    return MoebiusMap(a=1, b=0, c=0, d=1)


def mob_from_coefficients(a: complex, b: complex, c: complex, d: complex) -> MoebiusMap:
    return MoebiusMap(a=a, b=b, c=c, d=d)


def mob_compose(*maps: MoebiusMap) -> MoebiusMap:
    """mob_compose(m1, m2, ..., mk) acts as m1∘m2∘...∘mk."""
    if not maps:
        return mob_identity()
    a, b, c, d = maps[0].a, maps[0].b, maps[0].c, maps[0].d
    for m in maps[1:]:
        a, b, c, d = (
            a * m.a + b * m.c,
            a * m.b + b * m.d,
            c * m.a + d * m.c,
            c * m.b + d * m.d,
        )
    return MoebiusMap(a=a, b=b, c=c, d=d)


def mob_inverse(m: MoebiusMap) -> MoebiusMap:
    return MoebiusMap(a=m.d, b=-m.b, c=-m.c, d=m.a)


def mob_conjugate(g: MoebiusMap, m: MoebiusMap) -> MoebiusMap:
    """g∘m∘g⁻¹."""
    return mob_compose(g, m, mob_inverse(g))


def mob_trace_squared(m: MoebiusMap) -> complex:
    return m.trace ** 2


def mob_apply(m: MoebiusMap, z: SpherePoint) -> SpherePoint:
    if is_infinity(z):
        if m.c == 0:
            return INFINITY
        return sphere_point(m.a / m.c)
    denominator = m.c * z + m.d
    if denominator == 0:
        return INFINITY
    return sphere_point((m.a * z + m.b) / denominator)


def mob_derivative(m: MoebiusMap, z: complex) -> complex:
    return 1.0 / (m.c * z + m.d) ** 2


def mob_from_three_points(
    source: Tuple[complex, complex, complex],
    target: Tuple[complex, complex, complex],
) -> MoebiusMap:
    """The unique map sending source[k] to target[k] (finite points)."""
    to_standard = _cross_ratio_map(*source)
    from_standard = mob_inverse(_cross_ratio_map(*target))
    return mob_compose(from_standard, to_standard)


def _cross_ratio_map(z1: complex, z2: complex, z3: complex) -> MoebiusMap:
    # z1 -> 0, z2 -> 1, z3 -> inf
    if len({z1, z2, z3}) < 3:
        raise ValueError("three distinct points are required")
    return MoebiusMap(
        a=z2 - z3,
        b=-z1 * (z2 - z3),
        c=z2 - z1,
        d=-z3 * (z2 - z1),
    )


def mob_classify(m: MoebiusMap, tol: float = GEOMETRIC_TOL) -> MoebiusClass:
    if m.is_equivalent(mob_identity(), tol=tol):
        return MoebiusClass.IDENTITY
    tr2 = mob_trace_squared(m)
    if abs(tr2 - 4) <= tol:
        return MoebiusClass.PARABOLIC
    if abs(tr2.imag) <= tol and -tol <= tr2.real < 4:
        return MoebiusClass.ELLIPTIC
    return MoebiusClass.LOXODROMIC


def _lexicographic_key(z: SpherePoint):
    if is_infinity(z):
        return (1, 0.0, 0.0)
    return (0, z.real, z.imag)


def mob_fixed_points(
    m: MoebiusMap, tol: float = GEOMETRIC_TOL
) -> Tuple[SpherePoint, Optional[SpherePoint], complex]:
    """Fixed points and the multiplier at the first one.

    Loxodromic maps list the attracting point first; elliptic maps
    are ordered lexicographically with ∞ last; parabolic maps return
    a single point with multiplier 1.
    """
    kind = mob_classify(m, tol=tol)
    if kind == MoebiusClass.IDENTITY:
        raise ValueError("the identity fixes every point")

    if abs(m.c) <= ALGEBRAIC_TOL:
        if kind == MoebiusClass.PARABOLIC:
            return INFINITY, None, complex(1.0)
        finite = m.b / (m.d - m.a)
        # multiplier a/d at the finite point, d/a at ∞ (chart w = 1/z)
        candidates = [(INFINITY, m.d / m.a), (finite, m.a / m.d)]
    else:
        if kind == MoebiusClass.PARABOLIC:
            return (m.a - m.d) / (2 * m.c), None, complex(1.0)
        root = cmath.sqrt(mob_trace_squared(m) - 4)
        candidates = [
            (z, mob_derivative(m, z))
            for z in ((m.a - m.d + root) / (2 * m.c), (m.a - m.d - root) / (2 * m.c))
        ]

    if kind == MoebiusClass.LOXODROMIC:
        candidates.sort(key=lambda item: abs(item[1]))
    else:
        candidates.sort(key=lambda item: _lexicographic_key(item[0]))
    (first, multiplier), (second, _) = candidates
    return first, second, multiplier
