"""Finite-difference estimate of the modulus of a doubly connected region.

The harmonic measure u (0 on the inner boundary, 1 on the outer) is
computed on a uniform grid in the chart w = log(z − z0), z0 a point of
the hole. The chart is conformal, so the Dirichlet energy E is the same
as in the z-plane and the modulus is 1/E. Grid edges that cross a
boundary are cut at the crossing (conductance scaled by 1/θ).
"""
import logging
import math
from typing import Tuple

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.linalg import spsolve

from ..errors import GridResolutionError
from ..models.annulus import BoundarySampling
from ..utils.numeric_utils import polygon_path, to_xy
from .sampling import interior_point

logger = logging.getLogger(__name__)

DEFAULT_GRID_H = 0.02
BISECTION_STEPS = 40
MIN_FRACTION = 1e-6

HOLE, FREE, OUTSIDE = 0, 1, 2


class _Classifier:
    def __init__(self, boundaries: BoundarySampling, z0: complex):
        self.inner = polygon_path(boundaries.inner)
        self.outer = polygon_path(boundaries.outer)
        self.z0 = z0

    def chart(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self.z0 + np.exp(x + 1j * y)

    def state(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        z = self.chart(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
        xy = to_xy(z)
        in_hole = self.inner.contains_points(xy)
        in_region = self.outer.contains_points(xy)
        result = np.where(in_hole, HOLE, np.where(in_region, FREE, OUTSIDE))
        return result.reshape(z.shape)


def _crossing_fraction(classifier: _Classifier, x0, y0, x1, y1) -> np.ndarray:
    """Fraction along each edge, from the free end, where the state first changes."""
    lo = np.zeros(len(x0))
    hi = np.ones(len(x0))
    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        free = classifier.state(x0 + mid * (x1 - x0), y0 + mid * (y1 - y0)) == FREE
        lo = np.where(free, mid, lo)
        hi = np.where(free, hi, mid)
    return np.maximum(0.5 * (lo + hi), MIN_FRACTION)


def _grid(boundaries: BoundarySampling, z0: complex, h: float):
    inner = np.asarray(boundaries.inner)
    outer = np.asarray(boundaries.outer)
    x_lo = math.log(float(np.min(np.abs(inner - z0)))) - 2 * h
    x_hi = math.log(float(np.max(np.abs(outer - z0)))) + 2 * h
    nx = int(math.ceil((x_hi - x_lo) / h)) + 1
    ny = max(8, int(round(2 * math.pi / h)))
    hx = (x_hi - x_lo) / (nx - 1)
    hy = 2 * math.pi / ny
    xs = x_lo + hx * np.arange(nx)
    ys = hy * np.arange(ny)
    return xs, ys, hx, hy


def dirichlet_energy(boundaries: BoundarySampling, h: float = DEFAULT_GRID_H) -> Tuple[float, int]:
    """Discrete Dirichlet energy of the harmonic measure and the number of free nodes."""
    if not h > 0:
        raise ValueError(f"grid step must be positive, got {h}")
    z0 = interior_point(boundaries.inner)
    classifier = _Classifier(boundaries, z0)
    xs, ys, hx, hy = _grid(boundaries, z0, h)
    ny, nx = len(ys), len(xs)
    X, Y = np.meshgrid(xs, ys)
    state = classifier.state(X, Y).ravel()
    node = np.arange(ny * nx).reshape(ny, nx)

    # x-edges (i, i+1) and periodic y-edges (j, j+1 mod ny)
    edges = [
        (node[:, :-1].ravel(), node[:, 1:].ravel(), hy / hx, 0.0),
        (node.ravel(), np.roll(node, -1, axis=0).ravel(), hx / hy, hy),
    ]
    free_index = -np.ones(ny * nx, dtype=int)
    free_nodes = np.flatnonzero(state == FREE)
    if free_nodes.size == 0:
        raise GridResolutionError("no grid node lies inside the annulus")
    free_index[free_nodes] = np.arange(free_nodes.size)
    Xf, Yf = X.ravel(), Y.ravel()

    rows, cols, data = [], [], []
    rhs = np.zeros(free_nodes.size)
    interior_pairs = []
    boundary_terms = []

    for a, b, weight, dy in edges:
        sa, sb = state[a], state[b]
        dirichlet = (sa != FREE) & (sb != FREE)
        if np.any(dirichlet & (sa != sb)):
            raise GridResolutionError(f"grid step {h} does not separate the boundaries")

        both = (sa == FREE) & (sb == FREE)
        mid_state = classifier.state(0.5 * (Xf[a] + Xf[b]), Yf[a] + 0.5 * dy)
        clean = both & (mid_state == FREE)
        cut = both & (mid_state != FREE)
        interior_pairs.append((a[clean], b[clean], weight))
        for end in (a[cut], b[cut]):
            boundary_terms.append((end, np.full(end.size, 0.5), weight,
                                   (mid_state[cut] == OUTSIDE).astype(float)))

        for free_end, fixed_end, sign in ((a, b, 1.0), (b, a, -1.0)):
            mask = (state[free_end] == FREE) & (state[fixed_end] != FREE)
            f, g = free_end[mask], fixed_end[mask]
            if f.size == 0:
                continue
            # the wrapped y-edge end sits at y ± hy, not at its stored angle
            theta = _crossing_fraction(classifier, Xf[f], Yf[f], Xf[g], Yf[f] + sign * dy)
            values = (state[g] == OUTSIDE).astype(float)
            boundary_terms.append((f, theta, weight, values))

    for a, b, weight in interior_pairs:
        ia, ib = free_index[a], free_index[b]
        w = np.full(ia.size, weight)
        rows.extend([ia, ib, ia, ib])
        cols.extend([ia, ib, ib, ia])
        data.extend([w, w, -w, -w])
    for ends, theta, weight, values in boundary_terms:
        idx = free_index[ends]
        w = weight / theta
        rows.append(idx)
        cols.append(idx)
        data.append(w)
        np.add.at(rhs, idx, w * values)

    n = free_nodes.size
    matrix = coo_matrix(
        (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n)
    ).tocsr()
    u = spsolve(matrix, rhs)

    energy = 0.0
    for a, b, weight in interior_pairs:
        energy += weight * float(np.sum((u[free_index[a]] - u[free_index[b]]) ** 2))
    for ends, theta, weight, values in boundary_terms:
        energy += float(np.sum(weight / theta * (u[free_index[ends]] - values) ** 2))
    logger.debug("grid %dx%d, %d free nodes, energy %.12g", nx, ny, n, energy)
    if not energy > 0:
        raise GridResolutionError("harmonic measure is constant; boundaries not resolved")
    return energy, n


def modulus_numeric(boundaries: BoundarySampling, grid_h: float = DEFAULT_GRID_H) -> float:
    energy, _ = dirichlet_energy(boundaries, grid_h)
    return 1.0 / energy
