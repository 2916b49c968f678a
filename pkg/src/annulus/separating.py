"""Search for a euclidean circle separating the two boundaries of an annulus.

For a fixed center c the best radius is the midpoint of [R_in(c), R_out(c)],
R_in the farthest inner-boundary point and R_out the distance to the outer
boundary, so only the center is searched.
"""
import logging
from typing import Optional, Union

import numpy as np
from scipy.optimize import minimize

from ..geometry.circles import circle_from_center_radius
from ..models.annulus import BoundarySampling, CircleRing, Mapped, Round
from ..models.sphere import GeneralizedCircle
from ..utils.numeric_utils import GEOMETRIC_TOL, segment_distances
from .sampling import DEFAULT_BOUNDARY_SAMPLES, interior_point, sample_boundaries

logger = logging.getLogger(__name__)

CENTER_LATTICE = 31
REFINE_SEEDS = 3

Annulus = Union[Round, CircleRing, Mapped]


def _radii(centers: np.ndarray, sampling: BoundarySampling):
    c = np.asarray(centers, dtype=complex)
    inner = np.asarray(sampling.inner)
    r_in = np.max(np.abs(c.reshape(-1, 1) - inner[None, :]), axis=1).reshape(c.shape)
    r_out = segment_distances(c, sampling.outer)
    return r_in, r_out


def separating_clearance(circle: GeneralizedCircle, sampling: BoundarySampling) -> float:
    """Signed margin by which ``circle`` separates the sampled boundaries.

    Positive exactly when the inner polyline lies inside the circle and the
    outer polyline outside it.
    """
    if circle.is_line:
        return -np.inf
    r_in, r_out = _radii(np.asarray(circle.center), sampling)
    rho = circle.radius
    return float(min(rho - r_in, r_out - rho))


def _gap(point, sampling: BoundarySampling) -> float:
    r_in, r_out = _radii(np.asarray(complex(point[0], point[1])), sampling)
    return float(r_out - r_in)


def find_separating_circle(annulus: Annulus, samples: int = DEFAULT_BOUNDARY_SAMPLES,
                           tol: float = GEOMETRIC_TOL) -> Optional[GeneralizedCircle]:
    """Circle inside the annulus separating its boundaries, or None.

    Deterministic: a lattice of candidate centers over the outer boundary's
    bounding box, then Nelder-Mead from the best few.
    """
    sampling = sample_boundaries(annulus, samples)
    outer = np.asarray(sampling.outer)
    xs = np.linspace(outer.real.min(), outer.real.max(), CENTER_LATTICE)
    ys = np.linspace(outer.imag.min(), outer.imag.max(), CENTER_LATTICE)
    lattice = (xs[None, :] + 1j * ys[:, None]).ravel()
    seeds = [interior_point(sampling.inner)]
    if isinstance(annulus, CircleRing):
        seeds.append(annulus.inner.center)
    r_in, r_out = _radii(lattice, sampling)
    order = np.argsort(-(r_out - r_in), kind="stable")
    seeds.extend(lattice[order[:REFINE_SEEDS]])

    best_center, best_gap = None, -np.inf
    for seed in seeds:
        start = np.array([seed.real, seed.imag])
        result = minimize(lambda p: -_gap(p, sampling), start, method="Nelder-Mead",
                          options={"xatol": 1e-10, "fatol": 1e-12, "maxiter": 2000})
        for point in (start, result.x):
            gap = _gap(point, sampling)
            if gap > best_gap:
                best_center, best_gap = complex(point[0], point[1]), gap

    logger.debug("separating search best gap %.3g at %s", best_gap, best_center)
    if best_center is None or best_gap / 2 <= tol:
        return None
    r_in, r_out = _radii(np.asarray(best_center), sampling)
    circle = circle_from_center_radius(best_center, float(r_in + r_out) / 2)
    if separating_clearance(circle, sampling) <= tol:
        return None
    return circle
