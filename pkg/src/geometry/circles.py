"""Generalized circles and their Möbius images.

A circle is a Hermitian matrix H = [[p, q], [q̄, s]]; the image under M
is the congruence (M⁻¹)ᴴ H M⁻¹, which handles circle/line transitions
without special cases.
"""
import math
from enum import Enum
from typing import List

import numpy as np

from ..models.sphere import CircleSide, GeneralizedCircle, MoebiusMap, OrientedCircle
from ..utils.numeric_utils import GEOMETRIC_TOL, SpherePoint, is_infinity


class CirclePosition(str, Enum):
    DISJOINT_EXTERNAL = "disjoint_external"
    DISJOINT_NESTED = "disjoint_nested"
    TANGENT = "tangent"
    CROSSING = "crossing"


def circle_from_center_radius(center: complex, radius: float) -> GeneralizedCircle:
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius}")
    center = complex(center)
    return GeneralizedCircle(p=1.0, q=-center, s=abs(center) ** 2 - radius ** 2)


def line_through(point: complex, angle: float) -> GeneralizedCircle:
    """Line through ``point`` with direction e^{i·angle}."""
    normal = complex(math.cos(angle + math.pi / 2), math.sin(angle + math.pi / 2))
    return GeneralizedCircle(p=0.0, q=normal, s=-2.0 * (normal.conjugate() * point).real)


def circle_through_points(z1: complex, z2: complex, z3: complex) -> GeneralizedCircle:
    """Circle (or line, for collinear input) through three finite points."""
    a, b = z2 - z1, z3 - z1
    cross = (a.conjugate() * b).imag
    if abs(cross) <= GEOMETRIC_TOL * max(abs(a), abs(b)) ** 2:
        return line_through(z1, math.atan2(a.imag, a.real))
    center = z1 + _circumcenter_offset(a, b)
    return circle_from_center_radius(center, abs(center - z1))


def _circumcenter_offset(a: complex, b: complex) -> complex:
    d = 2.0 * (a.real * b.imag - a.imag * b.real)
    ux = (b.imag * abs(a) ** 2 - a.imag * abs(b) ** 2) / d
    uy = (a.real * abs(b) ** 2 - b.real * abs(a) ** 2) / d
    return complex(ux, uy)


def hermitian_matrix(c: GeneralizedCircle) -> np.ndarray:
    return np.array([[c.p, c.q], [c.q.conjugate(), c.s]], dtype=complex)


def _congruence(m: MoebiusMap, c: GeneralizedCircle):
    inverse = np.array([[m.d, -m.b], [-m.c, m.a]], dtype=complex)
    image = inverse.conj().T @ hermitian_matrix(c) @ inverse
    return float(image[0, 0].real), complex(image[0, 1]), float(image[1, 1].real)


def circle_apply(m: MoebiusMap, c: GeneralizedCircle) -> GeneralizedCircle:
    p, q, s = _congruence(m, c)
    return GeneralizedCircle(p=p, q=q, s=s)


def oriented_circle_apply(m: MoebiusMap, oc: OrientedCircle) -> OrientedCircle:
    """Image of a circle with a chosen complementary disk.

    The raw congruence preserves the sign of the form on corresponding
    points; normalization may negate it, which swaps the side.
    """
    p, q, s = _congruence(m, oc.circle)
    image = GeneralizedCircle(p=p, q=q, s=s)
    flipped = p * image.p + (q * image.q.conjugate()).real + s * image.s < 0
    side = oc.side
    if flipped:
        side = CircleSide.EXTERIOR if side == CircleSide.INTERIOR else CircleSide.INTERIOR
    return OrientedCircle(circle=image, side=side)


def circle_distance(c: GeneralizedCircle, z: SpherePoint) -> float:
    """Euclidean distance from a point to the circle or line."""
    if is_infinity(z):
        return 0.0 if c.is_line else math.inf
    if c.is_line:
        return abs(c.form(z)) / 2.0
    return abs(abs(z - c.center) - c.radius)


def circle_contains(c: GeneralizedCircle, z: SpherePoint, tol: float = GEOMETRIC_TOL) -> bool:
    """Strict membership in the interior side (form < 0)."""
    if is_infinity(z):
        return False
    return c.form(z) < -tol


def circle_sample_points(c: GeneralizedCircle, n: int) -> List[complex]:
    """n points on the circle, counterclockwise from angle 0.

    Lines are sampled symmetrically around the point nearest the origin.
    """
    if n < 1:
        raise ValueError("need at least one sample point")
    angles = 2 * np.pi * np.arange(n) / n
    if not c.is_line:
        return list(c.center + c.radius * np.exp(1j * angles))
    foot = -c.s * c.q / 2.0
    direction = 1j * c.q
    params = np.tan((angles - np.pi) / 2.0 * 0.98)
    return list(foot + params * direction)


def inversive_distance(c1: GeneralizedCircle, c2: GeneralizedCircle) -> float:
    """|p1·s2 + p2·s1 − 2·Re(q1·q̄2)| / 2 on normalized triples.

    Equals ||z1 − z2|² − r1² − r2²| / (2·r1·r2) for two circles.
    """
    value = c1.p * c2.s + c2.p * c1.s - 2.0 * (c1.q * c2.q.conjugate()).real
    return abs(value) / 2.0


def circles_disjoint(
    c1: GeneralizedCircle, c2: GeneralizedCircle, tol: float = GEOMETRIC_TOL
) -> CirclePosition:
    delta = inversive_distance(c1, c2)
    if abs(delta - 1.0) <= tol:
        return CirclePosition.TANGENT
    if delta < 1.0:
        return CirclePosition.CROSSING
    if c1.is_line or c2.is_line:
        return CirclePosition.DISJOINT_EXTERNAL
    if abs(c1.center - c2.center) < abs(c1.radius - c2.radius):
        return CirclePosition.DISJOINT_NESTED
    return CirclePosition.DISJOINT_EXTERNAL
