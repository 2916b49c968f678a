"""Measurements for holomorphic maps between annuli."""
import logging
from typing import Union

import numpy as np
from pydantic import BaseModel

from ..errors import CoreCurveNotEssentialError
from ..models.annulus import CircleRing, Mapped, RationalMap, Round
from ..utils.numeric_utils import winding_number
from .modulus import is_closed_form, modulus
from .numeric import DEFAULT_GRID_H
from .sampling import DEFAULT_BOUNDARY_SAMPLES, core_curve, interior_point, sample_boundaries

logger = logging.getLogger(__name__)

Annulus = Union[Round, CircleRing, Mapped]


class ModulusRatioMeasurement(BaseModel):
    """mod(a)/mod(b) for a map q sending a into b."""

    ratio: float
    mod_a: float
    mod_b: float
    degree: int
    method: str


def _method(annulus: Annulus) -> str:
    return "closed_form" if is_closed_form(annulus) else "numeric"


def lemma4_ratio(q_map: RationalMap, a: Annulus, b: Annulus,
                 samples: int = DEFAULT_BOUNDARY_SAMPLES,
                 grid_h: float = DEFAULT_GRID_H) -> ModulusRatioMeasurement:
    """Measure mod(a)/mod(b), with the degree read off the image of a's core curve.

    The image of the core curve must wind around b's hole; otherwise q is
    not essential on a and the ratio says nothing.
    """
    image = q_map.evaluate(core_curve(a, samples))
    if not np.all(np.isfinite(image)):
        raise CoreCurveNotEssentialError("map has a pole on the core curve")
    hole = 0j if isinstance(b, Round) else interior_point(sample_boundaries(b, samples).inner)
    winding = winding_number(image, hole)
    if winding == 0:
        raise CoreCurveNotEssentialError("image of the core curve does not wind around the hole")
    mod_a = modulus(a, grid_h, samples)
    mod_b = modulus(b, grid_h, samples)
    logger.debug("lemma4 mod(a)=%.9g mod(b)=%.9g winding=%d", mod_a, mod_b, winding)
    return ModulusRatioMeasurement(
        ratio=mod_a / mod_b,
        mod_a=mod_a,
        mod_b=mod_b,
        degree=abs(winding),
        method=f"{_method(a)}/{_method(b)}",
    )
