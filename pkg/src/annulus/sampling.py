"""Boundary polylines of annuli."""
from typing import List, Union

import numpy as np

from ..geometry.circles import circle_from_center_radius, circle_sample_points
from ..models.annulus import BoundarySampling, CircleRing, Mapped, Round
from ..models.sphere import GeneralizedCircle
from ..utils.numeric_utils import polygon_path, signed_area, to_xy

DEFAULT_BOUNDARY_SAMPLES = 512

Annulus = Union[Round, CircleRing, Mapped]


def _unit_circle_samples(radius: float, n: int) -> np.ndarray:
    return radius * np.exp(2j * np.pi * np.arange(n) / n)


def boundary_circles(annulus: Union[Round, CircleRing]) -> List[GeneralizedCircle]:
    if isinstance(annulus, Round):
        return [
            circle_from_center_radius(0, 1.0 / annulus.r),
            circle_from_center_radius(0, annulus.r),
        ]
    return [annulus.inner, annulus.outer]


def sample_boundaries(annulus: Annulus, n: int = DEFAULT_BOUNDARY_SAMPLES) -> BoundarySampling:
    """Both boundary components as counterclockwise polylines, inner first."""
    if isinstance(annulus, Mapped):
        first = annulus.f.evaluate(_unit_circle_samples(1.0 / annulus.base.r, n))
        second = annulus.f.evaluate(_unit_circle_samples(annulus.base.r, n))
        # a Laurent map may turn the annulus inside out
        if polygon_path(second).contains_point((first[0].real, first[0].imag)):
            inner, outer = first, second
        else:
            inner, outer = second, first
        return BoundarySampling(inner=list(inner), outer=list(outer), density=n)
    inner_circle, outer_circle = boundary_circles(annulus)
    return BoundarySampling(
        inner=circle_sample_points(inner_circle, n),
        outer=circle_sample_points(outer_circle, n),
        density=n,
    )


def interior_point(points: List[complex], lattice: int = 41) -> complex:
    """A point strictly inside a closed polyline.

    Tries the area centroid first, then the lattice point deepest inside.
    """
    z = np.asarray(points, dtype=complex)
    path = polygon_path(z)
    nxt = np.roll(z, -1)
    cross = (z.conj() * nxt).imag
    area = signed_area(z)
    if abs(area) > 0:
        centroid = np.sum((z + nxt) * cross) / (6.0 * area)
        if path.contains_point((centroid.real, centroid.imag)):
            return complex(centroid)
    xs = np.linspace(z.real.min(), z.real.max(), lattice)
    ys = np.linspace(z.imag.min(), z.imag.max(), lattice)
    grid = (xs[None, :] + 1j * ys[:, None]).ravel()
    inside = grid[path.contains_points(to_xy(grid))]
    if inside.size == 0:
        raise ValueError("could not find a point inside the polyline")
    depth = np.min(np.abs(inside[:, None] - z[None, :]), axis=1)
    return complex(inside[int(np.argmax(depth))])


def core_curve(annulus: Annulus, n: int = DEFAULT_BOUNDARY_SAMPLES) -> np.ndarray:
    """A closed curve separating the two boundaries."""
    if isinstance(annulus, Round):
        return _unit_circle_samples(1.0, n)
    if isinstance(annulus, Mapped):
        return annulus.f.evaluate(_unit_circle_samples(1.0, n))
    from .modulus import ring_core_circle

    return np.asarray(circle_sample_points(ring_core_circle(annulus), n))
