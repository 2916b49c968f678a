"""Classical Schottky configurations: pairing maps and verification."""
import cmath
import logging
import math
from itertools import combinations
from typing import List, Sequence, Tuple

import networkx as nx
import numpy as np

from ..geometry.circles import (
    CirclePosition,
    circle_distance,
    circle_from_center_radius,
    circle_sample_points,
    circles_disjoint,
    inversive_distance,
)
from ..geometry.moebius import mob_apply, mob_classify
from ..models.reports import CheckResult, VerificationReport
from ..models.schottky import CirclePairing, SchottkyConfiguration
from ..models.sphere import GeneralizedCircle, MoebiusClass, MoebiusMap
from ..utils.numeric_utils import GEOMETRIC_TOL, INFINITY

logger = logging.getLogger(__name__)

PAIRING_SAMPLES = 16


def twist_pairing_map(
    p: complex, rho: float, q: complex, rho_prime: float, theta: float
) -> MoebiusMap:
    """z ↦ q + ρρ'e^{iθ}/(z − p), as the matrix [[q, k − qp], [1, −p]]."""
    k = rho * rho_prime * cmath.exp(1j * theta)
    return MoebiusMap(a=q, b=k - q * p, c=1, d=-p)


def pairing_map_deviation(pairing: CirclePairing, samples: int = PAIRING_SAMPLES) -> float:
    """Largest distance from map(c) to c_prime over sample points, relative to c_prime's size."""
    scale = 1.0 if pairing.c_prime.is_line else max(1.0, pairing.c_prime.radius)
    worst = 0.0
    for z in circle_sample_points(pairing.c, samples):
        image = mob_apply(pairing.map, z)
        worst = max(worst, circle_distance(pairing.c_prime, image) / scale)
    return worst


def _exterior_points(c: GeneralizedCircle) -> list:
    if c.is_line:
        normal = c.q
        foot = -c.s * normal / 2.0
        return [foot + normal, foot + 10.0 * normal]
    return [INFINITY, c.center + 2.0 * c.radius]


def maps_exterior_to_interior(pairing: CirclePairing, tol: float = GEOMETRIC_TOL) -> bool:
    """Exterior points of ``c`` must land strictly inside ``c_prime``."""
    for z in _exterior_points(pairing.c):
        image = mob_apply(pairing.map, z)
        if image is INFINITY or not pairing.c_prime.form(image) < -tol:
            return False
    return True


def pairing_invariant_errors(pairing: CirclePairing, tol: float = GEOMETRIC_TOL) -> List[str]:
    errors = []
    deviation = pairing_map_deviation(pairing)
    if deviation > tol * 1e3:
        errors.append(f"map does not carry c onto c_prime (deviation {deviation:.3e})")
    if not maps_exterior_to_interior(pairing, tol):
        errors.append("map does not send the exterior of c into the interior of c_prime")
    return errors


def pairing_from_circles(
    p: complex, rho: float, q: complex, rho_prime: float, theta: float = 0.0,
    tol: float = GEOMETRIC_TOL,
) -> CirclePairing:
    if rho <= 0 or rho_prime <= 0:
        raise ValueError(f"radii must be positive, got {rho} and {rho_prime}")
    c = circle_from_center_radius(p, rho)
    c_prime = circle_from_center_radius(q, rho_prime)
    position = circles_disjoint(c, c_prime, tol)
    if position != CirclePosition.DISJOINT_EXTERNAL:
        raise ValueError(f"pairing circles must be disjoint and external, got {position.value}")
    return CirclePairing(c=c, c_prime=c_prime, map=twist_pairing_map(p, rho, q, rho_prime, theta))


def _check_disjoint(cfg: SchottkyConfiguration, tol: float) -> CheckResult:
    circles = cfg.circles()
    details = []
    min_delta = math.inf
    for i, j in combinations(range(len(circles)), 2):
        c1, c2 = circles[i], circles[j]
        if c1.is_line or c2.is_line:
            details.append(f"circle {i} or {j} is a line; bounded circles are required")
            continue
        min_delta = min(min_delta, inversive_distance(c1, c2))
        position = circles_disjoint(c1, c2, tol)
        if position != CirclePosition.DISJOINT_EXTERNAL:
            details.append(f"circles {i} and {j} are {position.value}")
    return CheckResult(
        name="disjoint_circles",
        passed=not details,
        measured={"min_inversive_distance": min_delta},
        tolerance=tol,
        details=details,
    )


def _check_maps_circles(cfg: SchottkyConfiguration, tol: float) -> CheckResult:
    deviations = [pairing_map_deviation(p) for p in cfg.pairings]
    details = [
        f"pairing {j + 1}: deviation {dev:.3e}"
        for j, dev in enumerate(deviations)
        if dev > tol * 1e3
    ]
    return CheckResult(
        name="pairing_maps_circles",
        passed=not details,
        measured={"max_deviation": max(deviations)},
        tolerance=tol * 1e3,
        details=details,
    )


def _check_orientation(cfg: SchottkyConfiguration, tol: float) -> CheckResult:
    details = [
        f"pairing {j + 1} does not map exterior to interior"
        for j, p in enumerate(cfg.pairings)
        if not maps_exterior_to_interior(p, tol)
    ]
    return CheckResult(name="exterior_to_interior", passed=not details, tolerance=tol, details=details)


def verify_classical(cfg: SchottkyConfiguration, tol: float = GEOMETRIC_TOL) -> VerificationReport:
    """Check the defining conditions of a classical Schottky configuration.

    (i) the 2g circles are pairwise disjoint and external, (ii) each map
    carries C_j onto C'_j, (iii) exterior goes to interior. A_j(D) ∩ D = ∅
    is recorded as a consequence of (i) and (iii).
    """
    disjoint = _check_disjoint(cfg, tol)
    maps_circles = _check_maps_circles(cfg, tol)
    orientation = _check_orientation(cfg, tol)
    derived = CheckResult(
        name="images_avoid_fundamental_domain",
        passed=disjoint.passed and orientation.passed,
        measured={"derived_from": "disjoint_circles+exterior_to_interior"},
    )
    report = VerificationReport.from_checks(
        "schottky_classical", [disjoint, maps_circles, orientation, derived]
    )
    logger.info("verify_classical g=%d passed=%s", cfg.g, report.passed)
    return report


def in_fundamental_domain(cfg: SchottkyConfiguration, z, tol: float = GEOMETRIC_TOL) -> bool:
    """True iff z lies strictly outside all 2g closed disks."""
    if z is INFINITY:
        return True
    for c in cfg.circles():
        if c.is_line:
            if c.form(z) <= tol:
                return False
        elif abs(z - c.center) <= c.radius + tol:
            return False
    return True


def quotient_cell_counts(cfg: SchottkyConfiguration, tol: float = GEOMETRIC_TOL) -> Tuple[int, int, int]:
    """(V, E, F) of the fundamental domain with its boundary circles identified.

    Circles that touch or overlap merge into one boundary component. The
    complement of h components is a sphere with h holes, cut along h − 1
    arcs into a single face; each hole is a vertex on a loop. A pairing
    glues two holes only when it is valid and both circles are isolated.
    Each glued pair lowers V and E by one and F by two, so k glued pairs
    give χ = 2 − 2k.
    """
    circles = cfg.circles()
    overlaps = nx.Graph()
    overlaps.add_nodes_from(range(len(circles)))
    for i, j in combinations(range(len(circles)), 2):
        if circles_disjoint(circles[i], circles[j], tol) != CirclePosition.DISJOINT_EXTERNAL:
            overlaps.add_edge(i, j)
    holes = nx.number_connected_components(overlaps)
    glued = 0
    for j, pairing in enumerate(cfg.pairings):
        isolated = overlaps.degree(2 * j) == 0 and overlaps.degree(2 * j + 1) == 0
        if isolated and not pairing_invariant_errors(pairing, tol):
            glued += 1
    vertices = holes - glued
    edges = vertices + holes - 1
    faces = 1 + holes - 2 * glued
    logger.debug("quotient of g=%d: %d holes, %d glued pairs", cfg.g, holes, glued)
    return vertices, edges, faces


def koebe_symmetric_config(
    g: int, centers: Sequence[float], radii: Sequence[float], tol: float = GEOMETRIC_TOL
) -> SchottkyConfiguration:
    """Configuration invariant under complex conjugation.

    Consecutive circles are paired with the half-turn twist, which makes
    every normalized pairing matrix real.
    """
    if g < 1:
        raise ValueError(f"genus must be at least 1, got {g}")
    if len(centers) != 2 * g or len(radii) != 2 * g:
        raise ValueError(f"need {2 * g} centers and radii for g={g}")
    for z in centers:
        if abs(complex(z).imag) > tol:
            raise ValueError(f"center {z} is not on the real axis")
    real_centers = [complex(z).real for z in centers]
    circles = [circle_from_center_radius(x, r) for x, r in zip(real_centers, radii)]
    for i, j in combinations(range(len(circles)), 2):
        position = circles_disjoint(circles[i], circles[j], tol)
        if position != CirclePosition.DISJOINT_EXTERNAL:
            raise ValueError(f"circles {i} and {j} overlap ({position.value})")
    pairings = [
        pairing_from_circles(
            real_centers[2 * j], radii[2 * j], real_centers[2 * j + 1], radii[2 * j + 1],
            theta=math.pi, tol=tol,
        )
        for j in range(g)
    ]
    return SchottkyConfiguration(pairings=pairings)


def _has_real_coefficients(m: MoebiusMap, tol: float) -> bool:
    """Real up to the normalizing scalar: det < 0 maps come out purely imaginary."""
    coefficients = (m.a, m.b, m.c, m.d)
    return all(abs(v.imag) <= tol for v in coefficients) or all(abs(v.real) <= tol for v in coefficients)


def is_conjugation_symmetric(cfg: SchottkyConfiguration, tol: float = GEOMETRIC_TOL) -> bool:
    circles = cfg.circles()
    for c in circles:
        mirrored = GeneralizedCircle(p=c.p, q=c.q.conjugate(), s=c.s)
        if not any(mirrored.is_equivalent(other, tol) for other in circles):
            return False
    return all(_has_real_coefficients(p.map, tol) for p in cfg.pairings)


def is_loxodromic_config(cfg: SchottkyConfiguration, tol: float = GEOMETRIC_TOL) -> bool:
    return all(mob_classify(p.map, tol) == MoebiusClass.LOXODROMIC for p in cfg.pairings)


def real_axis_config(
    centers: Sequence[float] = (-6.0, -2.0, 2.0, 6.0), radius: float = 1.0
) -> SchottkyConfiguration:
    """Circles of equal radius on the real axis, consecutive ones paired with zero twist.

    Built without the disjointness check so overlapping data can be verified.
    """
    pairings = []
    for j in range(len(centers) // 2):
        p, q = centers[2 * j], centers[2 * j + 1]
        pairings.append(
            CirclePairing(
                c=circle_from_center_radius(p, radius),
                c_prime=circle_from_center_radius(q, radius),
                map=twist_pairing_map(p, radius, q, radius, 0.0),
            )
        )
    return SchottkyConfiguration(pairings=pairings)


def circle_bounds(cfg: SchottkyConfiguration) -> np.ndarray:
    """Axis-aligned box [xmin, xmax, ymin, ymax] around all circles."""
    boxes = np.array(
        [
            [c.center.real - c.radius, c.center.real + c.radius,
             c.center.imag - c.radius, c.center.imag + c.radius]
            for c in cfg.circles()
        ]
    )
    return np.array([boxes[:, 0].min(), boxes[:, 1].max(), boxes[:, 2].min(), boxes[:, 3].max()])
