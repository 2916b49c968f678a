import cmath
import math
from typing import Sequence, Union

import numpy as np
from matplotlib.path import Path


GEOMETRIC_TOL = 1e-9
ALGEBRAIC_TOL = 1e-12


class PointAtInfinity:
    """The point ∞ of the Riemann sphere (a singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (PointAtInfinity, ())


INFINITY = PointAtInfinity()

SpherePoint = Union[complex, PointAtInfinity]


def is_infinity(z) -> bool:
    return z is INFINITY


def sphere_point(value) -> SpherePoint:
    """Coerce a number (or ``"inf"``) into a point of the sphere.

    Non-finite magnitudes become ∞; NaN is rejected.
    """
    if value is INFINITY or (isinstance(value, str) and value == "inf"):
        return INFINITY
    z = complex(value)
    if cmath.isnan(z):
        raise ValueError("NaN is not a point of the Riemann sphere")
    if cmath.isinf(z):
        return INFINITY
    return z


def chordal_distance(z1: SpherePoint, z2: SpherePoint) -> float:
    """Chordal distance on the unit sphere (diameter 2 convention)."""
    if is_infinity(z1) and is_infinity(z2):
        return 0.0
    if is_infinity(z1):
        return 2.0 / math.sqrt(1.0 + abs(z2) ** 2)
    if is_infinity(z2):
        return 2.0 / math.sqrt(1.0 + abs(z1) ** 2)
    return 2.0 * abs(z1 - z2) / (math.sqrt(1.0 + abs(z1) ** 2) * math.sqrt(1.0 + abs(z2) ** 2))


def as_complex_array(points: Sequence[complex]) -> np.ndarray:
    return np.asarray(points, dtype=complex)


def signed_area(points: Sequence[complex]) -> float:
    """Shoelace area of a closed polyline; positive when counterclockwise."""
    z = as_complex_array(points)
    nxt = np.roll(z, -1)
    return 0.5 * float(np.sum((z.conj() * nxt).imag))


def winding_number(points: Sequence[complex], center: complex) -> int:
    """Winding number of a closed polyline around ``center``."""
    z = as_complex_array(points) - center
    if np.any(np.abs(z) == 0):
        raise ValueError("curve passes through the winding center")
    angles = np.unwrap(np.angle(np.append(z, z[0])))
    return int(round((angles[-1] - angles[0]) / (2 * math.pi)))


def _cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (np.conj(a) * b).imag


def _segments_cross(a0, a1, b0, b1) -> np.ndarray:
    """Proper crossings between segment arrays, broadcast against each other."""
    da = a1 - a0
    db = b1 - b0
    d1 = _cross(da, b0 - a0)
    d2 = _cross(da, b1 - a0)
    d3 = _cross(db, a0 - b0)
    d4 = _cross(db, a1 - b0)
    return (d1 * d2 < 0) & (d3 * d4 < 0)


def polyline_is_simple(points: Sequence[complex]) -> bool:
    """True when no two non-adjacent edges of the closed polyline cross."""
    z = as_complex_array(points)
    n = len(z)
    if n < 3:
        return False
    start = z[:, None]
    end = np.roll(z, -1)[:, None]
    crossing = _segments_cross(start, end, z[None, :], np.roll(z, -1)[None, :])
    idx = np.arange(n)
    gap = np.abs(idx[:, None] - idx[None, :])
    adjacent = (gap <= 1) | (gap == n - 1)
    return not bool(np.any(crossing & ~adjacent))


def polylines_cross(first: Sequence[complex], second: Sequence[complex]) -> bool:
    a = as_complex_array(first)
    b = as_complex_array(second)
    crossing = _segments_cross(
        a[:, None], np.roll(a, -1)[:, None], b[None, :], np.roll(b, -1)[None, :]
    )
    return bool(np.any(crossing))


def segment_distances(centers: np.ndarray, points: Sequence[complex]) -> np.ndarray:
    """Distance from each center to the closed polyline ``points``.

    Returns an array shaped like ``centers``.
    """
    c = np.asarray(centers, dtype=complex)
    a = as_complex_array(points)
    b = np.roll(a, -1)
    flat = c.reshape(-1, 1)
    edge = (b - a)[None, :]
    length2 = np.maximum(np.abs(edge) ** 2, 1e-300)
    t = np.clip(((flat - a[None, :]) * np.conj(edge)).real / length2, 0.0, 1.0)
    nearest = a[None, :] + t * edge
    return np.min(np.abs(flat - nearest), axis=1).reshape(c.shape)


def to_xy(points) -> np.ndarray:
    z = np.asarray(points, dtype=complex)
    return np.column_stack([z.real.ravel(), z.imag.ravel()])


def polygon_path(points: Sequence[complex]) -> Path:
    """Closed matplotlib path through the polyline vertices."""
    xy = to_xy(points)
    return Path(np.vstack([xy, xy[:1]]), closed=True)
