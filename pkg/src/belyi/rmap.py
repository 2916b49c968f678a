"""The degree-6 map R(z) = (i√3(z³ + z⁻³) − 6) / (i√3(z³ + z⁻³) + 6).

R is invariant under z ↦ ωz and z ↦ 1/z, has critical values 1, ω, ω²
and maps {1, ω, ω²} into itself. Its monodromy is computed once by
lifting three lassos through R, based at w = 0:

    γ_k: the segment 0 → (1 − ε)b_k, the counterclockwise circle of
    radius ε around b_k, and back along the segment,

with b_k = ω^k. The lifts also record, for each sheet, which cuts
{t·b_m : t ≥ 1} the lifted path crosses; ``refine`` turns those crossings
into words in the base loops of the inner map.
"""
import cmath
import functools
import logging
import math
from typing import Dict, List, Tuple

import numpy as np
from numpy.polynomial import polynomial as P

from ..errors import LiftingError
from ..models.belyi import MonodromyTriple, RConstellation
from ..utils.numeric_utils import INFINITY, SpherePoint, is_infinity, sphere_point

logger = logging.getLogger(__name__)

OMEGA = cmath.exp(2j * math.pi / 3)
BRANCH_VALUES = (1 + 0j, OMEGA, OMEGA * OMEGA)
SQRT3I = 1j * math.sqrt(3)

NUMERATOR = np.array([SQRT3I, 0, 0, -6, 0, 0, SQRT3I], dtype=complex)
DENOMINATOR = np.array([SQRT3I, 0, 0, 6, 0, 0, SQRT3I], dtype=complex)
DEGREE = 6

LOOP_RADIUS = 0.2
INITIAL_STEP = 1.0 / 64
MAX_STEP = 1.0 / 16
MIN_STEP = 1e-12
NEWTON_ITERATIONS = 12
STEP_FRACTION = 0.3

# a crossing word letter is ±(m + 1) for cut m; + is counterclockwise
Word = Tuple[int, ...]


def r_values(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return P.polyval(z, NUMERATOR) / P.polyval(z, DENOMINATOR)


def r_evaluate(z: SpherePoint) -> SpherePoint:
    if is_infinity(z):
        return sphere_point(NUMERATOR[-1] / DENOMINATOR[-1])
    bottom = P.polyval(complex(z), DENOMINATOR)
    if bottom == 0:
        return INFINITY
    return sphere_point(P.polyval(complex(z), NUMERATOR) / bottom)


def _derivative_numerator() -> np.ndarray:
    wronskian = P.polysub(
        P.polymul(P.polyder(NUMERATOR), DENOMINATOR),
        P.polymul(NUMERATOR, P.polyder(DENOMINATOR)),
    )
    return P.polytrim(wronskian, tol=1e-12 * float(np.max(np.abs(wronskian))))


def r_critical_points() -> List[SpherePoint]:
    """Distinct critical points, finite ones sorted by (|z|, arg z), then ∞."""
    wronskian = _derivative_numerator()
    points: List[SpherePoint] = []
    for root in P.polyroots(wronskian):
        root = complex(root)
        if abs(root) < 1e-6:
            root = 0j
        if all(abs(root - p) > 1e-5 for p in points):
            points.append(root)
    points.sort(key=lambda z: (round(abs(z), 9), cmath.phase(z) % (2 * math.pi)))
    if len(wronskian) - 1 < 2 * DEGREE - 2:
        points.append(INFINITY)
    return points


def r_critical_values() -> List[SpherePoint]:
    return [r_evaluate(z) for z in r_critical_points()]


def _chordal(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return 2 * np.abs(a - b) / np.sqrt((1 + np.abs(a) ** 2) * (1 + np.abs(b) ** 2))


def r_deck_deviation(n: int, rng: np.random.Generator) -> Tuple[float, float]:
    """Largest chordal gaps |R(ωz) − R(z)| and |R(1/z) − R(z)| over n random points."""
    z = rng.normal(size=n) + 1j * rng.normal(size=n)
    base = r_values(z)
    return float(np.max(_chordal(r_values(OMEGA * z), base))), float(np.max(_chordal(r_values(1 / z), base)))


def fiber_over_zero() -> np.ndarray:
    """R⁻¹(0): z³ = i(2 − √3) inside the unit disk, z³ = −i(2 + √3) outside.

    Ordered inside first, each group by argument in [0, 2π).
    """
    points = []
    for cube in (1j * (2 - math.sqrt(3)), -1j * (2 + math.sqrt(3))):
        root = abs(cube) ** (1 / 3)
        base = cmath.phase(cube) / 3
        points.extend(root * cmath.exp(1j * (base + 2 * math.pi * k / 3)) for k in range(3))
    points.sort(key=lambda z: (abs(z) > 1, cmath.phase(z) % (2 * math.pi)))
    return np.array(points, dtype=complex)


def _lasso(k: int, t: float) -> complex:
    b = BRANCH_VALUES[k]
    near = (1 - LOOP_RADIUS) * b
    if t <= 1 / 3:
        return 3 * t * near
    if t <= 2 / 3:
        return b - LOOP_RADIUS * b * cmath.exp(2j * math.pi * 3 * (t - 1 / 3))
    return 3 * (1 - t) * near


def _separation(z: np.ndarray) -> float:
    gaps = np.abs(z[:, None] - z[None, :])
    np.fill_diagonal(gaps, np.inf)
    punctures = np.abs(z[:, None] - np.array(BRANCH_VALUES)[None, :])
    return float(min(gaps.min(), punctures.min()))


def _newton(z: np.ndarray, w: complex):
    """Correct all sheets to N(z) = w·D(z); returns (z, converged)."""
    dn, dd = P.polyder(NUMERATOR), P.polyder(DENOMINATOR)
    for _ in range(NEWTON_ITERATIONS):
        f = P.polyval(z, NUMERATOR) - w * P.polyval(z, DENOMINATOR)
        fp = P.polyval(z, dn) - w * P.polyval(z, dd)
        if np.any(fp == 0):
            return z, False
        step = f / fp
        z = z - step
        if np.all(np.abs(step) <= 1e-13 * np.maximum(1.0, np.abs(z))):
            return z, True
    return z, False


def lift_lasso(k: int, start: np.ndarray) -> List[np.ndarray]:
    """Continue every sheet of the fiber along γ_k; returns the sampled trajectory."""
    z = np.array(start, dtype=complex)
    trajectory = [z.copy()]
    t, dt = 0.0, INITIAL_STEP
    while t < 1.0:
        t_next = min(1.0, t + dt)
        candidate, converged = _newton(z, _lasso(k, t_next))
        moved = float(np.max(np.abs(candidate - z)))
        if converged and moved <= STEP_FRACTION * _separation(z):
            z, t = candidate, t_next
            trajectory.append(z.copy())
            dt = min(2 * dt, MAX_STEP)
            continue
        dt /= 2
        if dt < MIN_STEP:
            raise LiftingError(f"step size underflow lifting the loop around branch value {k} at t={t:.6f}")
    return trajectory


def _match(end: np.ndarray, fiber: np.ndarray) -> Tuple[int, ...]:
    distances = np.abs(end[:, None] - fiber[None, :])
    images = tuple(int(i) for i in np.argmin(distances, axis=1))
    if sorted(images) != list(range(len(fiber))) or np.max(np.min(distances, axis=1)) > 1e-8:
        raise LiftingError("lifted endpoints do not match the fiber")
    return images


def crossing_word(path: np.ndarray) -> Word:
    """Signed crossings of the cuts {t·ω^m : t ≥ 1} along a polyline, in order."""
    letters = []
    for a, b in zip(path[:-1], path[1:]):
        hits = []
        for m, cut in enumerate(BRANCH_VALUES):
            ua, ub = cut.conjugate() * a, cut.conjugate() * b
            if (ua.imag < 0) == (ub.imag < 0):
                continue
            s = ua.imag / (ua.imag - ub.imag)
            if (ua + s * (ub - ua)).real >= 1:
                hits.append((s, m + 1 if ua.imag < 0 else -(m + 1)))
        letters.extend(letter for _, letter in sorted(hits))
    return tuple(letters)


@functools.cache
def lifting_data() -> Tuple[Tuple[Tuple[int, ...], ...], Dict[Tuple[int, int], Word]]:
    """R's monodromy around 1, ω, ω² and the crossing word of every lifted sheet."""
    fiber = fiber_over_zero()
    perms = []
    words: Dict[Tuple[int, int], Word] = {}
    for k in range(3):
        trajectory = np.array(lift_lasso(k, fiber))
        perms.append(_match(trajectory[-1], fiber))
        for sheet in range(DEGREE):
            words[(k, sheet)] = crossing_word(trajectory[:, sheet])
        logger.debug("lifted loop %d in %d steps: %s", k, len(trajectory) - 1, perms[-1])
    return tuple(perms), words


@functools.cache
def r_constellation() -> RConstellation:
    perms, _ = lifting_data()
    triple = MonodromyTriple(degree=DEGREE, s1=perms[0], sw=perms[1], sw2=perms[2])
    return RConstellation(
        triple=triple,
        numerator=[complex(c) for c in NUMERATOR],
        denominator=[complex(c) for c in DENOMINATOR],
    )
