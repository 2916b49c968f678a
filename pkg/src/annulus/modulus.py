"""Closed-form moduli, Möbius normalization of rings, and the annulus inequality checks.

Normalization: mod(A_r) = (1/π)·log r, so a concentric ring with radius
ratio t has modulus (1/2π)·log t.
"""
import logging
import math
from typing import Optional, Union

import numpy as np
from pydantic import BaseModel

from ..errors import DegenerateAnnulusError, NonEssentialAnnulusError
from ..geometry.circles import (
    CirclePosition,
    circle_apply,
    circle_from_center_radius,
    circles_disjoint,
    inversive_distance,
)
from ..geometry.moebius import mob_inverse
from ..models.annulus import CircleRing, Mapped, Round
from ..models.sphere import GeneralizedCircle, MoebiusMap
from ..utils.numeric_utils import GEOMETRIC_TOL
from .numeric import DEFAULT_GRID_H, modulus_numeric
from .sampling import DEFAULT_BOUNDARY_SAMPLES, sample_boundaries

logger = logging.getLogger(__name__)

SEPARATION_THRESHOLD = 0.5
NUMERIC_RELATIVE_TOL = 0.01

Annulus = Union[Round, CircleRing, Mapped]


def modulus_round(r: float) -> float:
    if not r > 1:
        raise DegenerateAnnulusError(f"A_r needs r > 1, got {r}")
    return math.log(r) / math.pi


def ring_from_circles(inner: GeneralizedCircle, outer: GeneralizedCircle,
                      tol: float = GEOMETRIC_TOL) -> CircleRing:
    position = circles_disjoint(inner, outer, tol)
    if position != CirclePosition.DISJOINT_NESTED:
        raise DegenerateAnnulusError(f"ring circles must be nested and disjoint, got {position.value}")
    if inner.radius > outer.radius:
        inner, outer = outer, inner
    return CircleRing(inner=inner, outer=outer)


def modulus_circle_ring(ring: CircleRing) -> float:
    """arccosh(δ)/(2π) with δ the inversive distance of the boundaries."""
    delta = inversive_distance(ring.inner, ring.outer)
    if not delta > 1:
        raise DegenerateAnnulusError("ring boundaries are not disjoint")
    return math.acosh(delta) / (2 * math.pi)


def normalize_ring_to_concentric(ring: CircleRing, tol: float = GEOMETRIC_TOL) -> MoebiusMap:
    """Map sending the limit points of the ring's coaxial pencil to 0 and ∞.

    Both boundaries become circles centered at 0, the inner one smaller.
    """
    c_out, big_r = ring.outer.center, ring.outer.radius
    c_in, small_r = ring.inner.center, ring.inner.radius
    separation = abs(c_in - c_out)
    if separation <= tol * big_r:
        return MoebiusMap(a=1, b=-c_in, c=0, d=1)
    direction = (c_in - c_out) / separation
    # limit points at c_out + t·direction with t² − S·t + R² = 0
    s = (big_r ** 2 - small_r ** 2 + separation ** 2) / separation
    t_near = 2 * big_r ** 2 / (s + math.sqrt(s * s - 4 * big_r ** 2))
    t_far = big_r ** 2 / t_near
    z_in = c_out + t_near * direction
    z_out = c_out + t_far * direction
    return MoebiusMap(a=1, b=-z_in, c=1, d=-z_out)


def modulus_by_normalization(ring: CircleRing) -> float:
    """Independent route to the ring modulus through the concentric normal form."""
    m = normalize_ring_to_concentric(ring)
    inner = circle_apply(m, ring.inner)
    outer = circle_apply(m, ring.outer)
    return math.log(outer.radius / inner.radius) / (2 * math.pi)


def ring_core_circle(ring: CircleRing) -> GeneralizedCircle:
    """Pullback of the concentric circle with the geometric-mean radius."""
    m = normalize_ring_to_concentric(ring)
    inner = circle_apply(m, ring.inner)
    outer = circle_apply(m, ring.outer)
    middle = circle_from_center_radius(0, math.sqrt(inner.radius * outer.radius))
    return circle_apply(mob_inverse(m), middle)


def modulus(annulus: Annulus, grid_h: float = DEFAULT_GRID_H,
            samples: int = DEFAULT_BOUNDARY_SAMPLES) -> float:
    """Closed form for round and ring annuli, finite differences otherwise."""
    if isinstance(annulus, Round):
        return modulus_round(annulus.r)
    if isinstance(annulus, CircleRing):
        return modulus_circle_ring(annulus)
    return modulus_numeric(sample_boundaries(annulus, samples), grid_h)


def is_closed_form(annulus: Annulus) -> bool:
    return not isinstance(annulus, Mapped)


def _assert_essential(outer: Annulus, inner: CircleRing, samples: int, tol: float) -> None:
    sampling = sample_boundaries(outer, samples)
    hole = np.asarray(sampling.inner)
    rim = np.asarray(sampling.outer)
    if np.any(np.abs(hole - inner.inner.center) > inner.inner.radius + tol):
        raise NonEssentialAnnulusError("inner circle of the sub-annulus does not enclose the hole")
    if np.any(np.abs(rim - inner.outer.center) < inner.outer.radius - tol):
        raise NonEssentialAnnulusError("outer circle of the sub-annulus leaves the annulus")


def grotzsch_check(outer: Annulus, inner_essential: CircleRing,
                   tol: Optional[float] = None, grid_h: float = DEFAULT_GRID_H,
                   samples: int = DEFAULT_BOUNDARY_SAMPLES) -> bool:
    """mod(B) ≤ mod(A) for an essential sub-ring B of A.

    The tolerance defaults to 1e-9 when mod(A) has a closed form and to
    1% of mod(A) otherwise.
    """
    _assert_essential(outer, inner_essential, samples, GEOMETRIC_TOL)
    mod_a = modulus(outer, grid_h, samples)
    mod_b = modulus_circle_ring(inner_essential)
    if tol is None:
        tol = GEOMETRIC_TOL if is_closed_form(outer) else NUMERIC_RELATIVE_TOL * mod_a
    logger.debug("grotzsch mod(B)=%.12g mod(A)=%.12g", mod_b, mod_a)
    return mod_b <= mod_a + tol


class CoverModulusRelation(BaseModel):
    """Moduli around the covering z ↦ z^d from A_ρ onto A_{ρ^d}."""

    rho: float
    degree: int
    mod_domain: float
    mod_target: float
    ratio: float
    relation_error: float
    reversed_orientation_holds: bool
    note: str


ORIENTATION_NOTE = (
    "a degree-d covering of annuli multiplies the modulus of the covered annulus: "
    "mod(target) = d * mod(domain); the reversed relation mod(domain) = d * mod(target) "
    "holds only for d = 1"
)


def cover_modulus_relation(rho: float, d: int) -> CoverModulusRelation:
    if not rho > 1:
        raise DegenerateAnnulusError(f"rho must exceed 1, got {rho}")
    if d < 1:
        raise ValueError(f"degree must be positive, got {d}")
    mod_domain = modulus_round(rho)
    mod_target = modulus_round(rho ** d)
    error = abs(mod_target - d * mod_domain)
    return CoverModulusRelation(
        rho=rho,
        degree=d,
        mod_domain=mod_domain,
        mod_target=mod_target,
        ratio=1.0 / d,
        relation_error=error,
        reversed_orientation_holds=abs(mod_domain - d * mod_target) <= 1e-12 * max(1.0, mod_target),
        note=ORIENTATION_NOTE,
    )


def random_moebius_keeping_ring(ring: CircleRing, rng: np.random.Generator,
                                margin: float = 1.05) -> MoebiusMap:
    """Random map whose pole lies beyond ``margin`` times the outer radius, so the image ring stays bounded."""
    while True:
        a, b, c, d = rng.normal(size=4) + 1j * rng.normal(size=4)
        if abs(a * d - b * c) < 1e-3:
            continue
        if abs(c) < 1e-12:
            return MoebiusMap(a=a, b=b, c=c, d=d)
        pole = -d / c
        if abs(pole - ring.outer.center) > ring.outer.radius * margin:
            return MoebiusMap(a=a, b=b, c=c, d=d)


def ring_image(m: MoebiusMap, ring: CircleRing) -> CircleRing:
    return ring_from_circles(circle_apply(m, ring.inner), circle_apply(m, ring.outer))
