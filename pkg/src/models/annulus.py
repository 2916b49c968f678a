from typing import Annotated, Dict, List, Literal, Optional, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import DegenerateAnnulusError
from ..utils.numeric_utils import (
    polygon_path,
    to_xy,
    polyline_is_simple,
    polylines_cross,
    signed_area,
    winding_number,
)
from .sphere import GeneralizedCircle

INJECTIVITY_SAMPLES = 512
CRITICAL_MARGIN = 1e-9


class LaurentMap(BaseModel):
    """f(z) = Σ c_k z^k over a finite range of integer powers."""

    model_config = ConfigDict(frozen=True)

    coefficients: Dict[int, complex]

    @field_validator("coefficients")
    @classmethod
    def not_constant(cls, v):
        if not any(k != 0 and c != 0 for k, c in v.items()):
            raise ValueError("Laurent map is constant")
        return v

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        return sum(c * z ** k for k, c in sorted(self.coefficients.items()))

    def derivative(self, z):
        z = np.asarray(z, dtype=complex)
        return sum(k * c * z ** (k - 1) for k, c in sorted(self.coefficients.items()) if k != 0)

    def critical_points(self) -> np.ndarray:
        """Zeros of f' away from 0, as the roots of the polynomial z^(-lo) f'(z)."""
        terms = {k - 1: k * complex(c) for k, c in self.coefficients.items() if k != 0 and c != 0}
        lo, hi = min(terms), max(terms)
        ascending = np.zeros(hi - lo + 1, dtype=complex)
        for power, coefficient in terms.items():
            ascending[power - lo] = coefficient
        return np.roots(ascending[::-1])

    @classmethod
    def joukowski(cls, c: complex) -> "LaurentMap":
        """z + c/z."""
        return cls(coefficients={1: 1, -1: c})


class Round(BaseModel):
    """A_r = {1/r < |z| < r}."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["round"] = "round"
    r: float = Field(gt=1)


class CircleRing(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["ring"] = "ring"
    inner: GeneralizedCircle
    outer: GeneralizedCircle

    @model_validator(mode="after")
    def inner_inside_outer(self) -> "CircleRing":
        if self.inner.is_line or self.outer.is_line:
            raise DegenerateAnnulusError("ring boundaries must be circles")
        gap = self.outer.radius - self.inner.radius
        if not abs(self.inner.center - self.outer.center) < gap:
            raise DegenerateAnnulusError("inner circle must lie strictly inside the outer circle")
        return self


class Mapped(BaseModel):
    """Image of a round annulus under an injective Laurent map."""

    model_config = ConfigDict(frozen=True)

    kind: Literal["mapped"] = "mapped"
    base: Round
    f: LaurentMap

    @model_validator(mode="after")
    def injective_on_closed_base(self) -> "Mapped":
        problems = mapped_injectivity_problems(self.base.r, self.f)
        if problems:
            raise DegenerateAnnulusError("; ".join(problems))
        return self


AnnulusSpec = Annotated[Union[Round, CircleRing, Mapped], Field(discriminator="kind")]


def _circle_image(f: LaurentMap, radius: float, n: int) -> np.ndarray:
    return f.evaluate(radius * np.exp(2j * np.pi * np.arange(n) / n))


def _covering_test_points(r: float) -> np.ndarray:
    """Core points plus points near both boundaries, where a second preimage can hide."""
    radii = r ** np.linspace(-0.9, 0.9, 7)
    angles = 2 * np.pi * np.arange(8) / 8
    return (radii[:, None] * np.exp(1j * angles[None, :])).ravel()


def mapped_injectivity_problems(r: float, f: LaurentMap, n: int = INJECTIVITY_SAMPLES) -> List[str]:
    """Injectivity test: simple disjoint boundary images, no critical point in the closed
    annulus, and every test value covered exactly once by the argument principle."""
    problems = []
    inner = _circle_image(f, 1.0 / r, n)
    outer = _circle_image(f, r, n)
    core = _circle_image(f, 1.0, n)
    for name, curve in (("inner boundary", inner), ("outer boundary", outer), ("core", core)):
        if not polyline_is_simple(curve):
            problems.append(f"{name} image is not simple")
    if polylines_cross(inner, outer):
        problems.append("boundary images intersect")
    moduli = np.abs(f.critical_points())
    if np.any((moduli >= (1 - CRITICAL_MARGIN) / r) & (moduli <= (1 + CRITICAL_MARGIN) * r)):
        problems.append("derivative vanishes on the base annulus")
    for z0 in _covering_test_points(r):
        w = complex(f.evaluate(z0))
        try:
            count = winding_number(outer, w) - winding_number(inner, w)
        except ValueError:
            problems.append("boundary image passes through an interior value")
            break
        if abs(count) != 1:
            problems.append(f"value f({z0:.3g}) is taken {abs(count)} times on the base annulus")
            break
    return problems


class BoundarySampling(BaseModel):
    """Inner and outer boundary polylines, both counterclockwise."""

    model_config = ConfigDict(frozen=True)

    inner: List[complex]
    outer: List[complex]
    density: int

    @model_validator(mode="before")
    @classmethod
    def orient_counterclockwise(cls, data):
        if isinstance(data, dict):
            data = dict(data)
            for key in ("inner", "outer"):
                points = [complex(z) for z in data[key]]
                if len(points) >= 3 and signed_area(points) < 0:
                    points = points[::-1]
                data[key] = points
        return data

    @model_validator(mode="after")
    def disjoint_simple_curves(self) -> "BoundarySampling":
        for name, points in (("inner", self.inner), ("outer", self.outer)):
            if len(points) < 3:
                raise ValueError(f"{name} boundary needs at least 3 points")
            if not polyline_is_simple(points):
                raise ValueError(f"{name} boundary is not a simple closed curve")
        if polylines_cross(self.inner, self.outer):
            raise ValueError("boundary components intersect")
        if not polygon_path(self.outer).contains_points(to_xy(self.inner)).all():
            raise ValueError("inner boundary must lie inside the outer boundary")
        return self


class RationalMap(BaseModel):
    """P(z)/Q(z) with coefficient lists in ascending powers."""

    model_config = ConfigDict(frozen=True)

    numerator: List[complex]
    denominator: List[complex] = Field(default_factory=lambda: [1])

    @model_validator(mode="after")
    def non_degenerate(self) -> "RationalMap":
        if not any(c != 0 for c in self.denominator):
            raise ValueError("denominator of a rational map cannot vanish identically")
        if not any(c != 0 for c in self.numerator[1:]) and not any(c != 0 for c in self.denominator[1:]):
            raise ValueError("rational map is constant")
        return self

    @property
    def degree(self) -> int:
        def top(coefficients):
            nonzero = [k for k, c in enumerate(coefficients) if c != 0]
            return nonzero[-1] if nonzero else 0

        return max(top(self.numerator), top(self.denominator))

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        top = np.polyval(np.asarray(self.numerator, dtype=complex)[::-1], z)
        bottom = np.polyval(np.asarray(self.denominator, dtype=complex)[::-1], z)
        return top / bottom

    @classmethod
    def power(cls, d: int) -> "RationalMap":
        if d < 1:
            raise ValueError(f"power must be positive, got {d}")
        return cls(numerator=[0] * d + [1])

    @classmethod
    def identity(cls) -> "RationalMap":
        return cls.power(1)

    @classmethod
    def from_laurent(cls, f: LaurentMap) -> "RationalMap":
        low = min(0, min(f.coefficients))
        high = max(f.coefficients)
        numerator = [0j] * (high - low + 1)
        for k, c in f.coefficients.items():
            numerator[k - low] = complex(c)
        return cls(numerator=numerator, denominator=[0] * (-low) + [1])


class AnnulusTask(BaseModel):
    """An annulus descriptor plus the optional comparisons requested with it."""

    model_config = ConfigDict(frozen=True)

    annulus: AnnulusSpec
    sub_ring: Optional[CircleRing] = None
    rational_map: Optional[RationalMap] = None
    target: Optional[AnnulusSpec] = None

    @model_validator(mode="after")
    def map_needs_target(self) -> "AnnulusTask":
        if (self.rational_map is None) != (self.target is None):
            raise ValueError("a rational map and its target annulus must be given together")
        return self
