import cmath
import math
from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, model_validator

from ..errors import DegenerateMapError
from ..utils.numeric_utils import ALGEBRAIC_TOL, GEOMETRIC_TOL


class MoebiusClass(str, Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    LOXODROMIC = "loxodromic"


class CircleSide(str, Enum):
    INTERIOR = "interior"
    EXTERIOR = "exterior"


def _snap(value: complex, scale: float) -> complex:
    """Flush rounding residue (relative to ``scale``) to an exact zero."""
    threshold = 1e-15 * scale
    re = 0.0 if abs(value.real) <= threshold else value.real
    im = 0.0 if abs(value.imag) <= threshold else value.imag
    return complex(re, im)


class MoebiusMap(BaseModel):
    """z ↦ (az + b)/(cz + d), stored with ad − bc = 1.

    Construction divides by a square root of the determinant, so the
    matrix is canonical up to a global sign.
    """

    model_config = ConfigDict(frozen=True)

    a: complex
    b: complex
    c: complex
    d: complex

    @model_validator(mode="before")
    @classmethod
    def normalize_determinant(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        try:
            coeffs = [complex(data[k]) for k in ("a", "b", "c", "d")]
        except KeyError as exc:
            raise DegenerateMapError(f"missing coefficient {exc}") from exc
        if not all(cmath.isfinite(v) for v in coeffs):
            raise DegenerateMapError("Möbius coefficients must be finite")
        scale = max(abs(v) for v in coeffs)
        if scale == 0:
            raise DegenerateMapError("all Möbius coefficients are zero")
        a, b, c, d = (v / scale for v in coeffs)
        det = a * d - b * c
        if abs(det) <= ALGEBRAIC_TOL:
            raise DegenerateMapError("Möbius determinant is zero")
        root = cmath.sqrt(det)
        a, b, c, d = (v / root for v in (a, b, c, d))
        top = max(abs(a), abs(b), abs(c), abs(d))
        return {k: _snap(v, top) for k, v in zip("abcd", (a, b, c, d))}

    @property
    def determinant(self) -> complex:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> complex:
        return self.a + self.d

    def is_equivalent(self, other: "MoebiusMap", tol: float = ALGEBRAIC_TOL) -> bool:
        """Equality as maps of the sphere, so M and −M agree."""
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        same = max(abs(x - y) for x, y in zip(mine, theirs))
        flipped = max(abs(x + y) for x, y in zip(mine, theirs))
        return min(same, flipped) <= tol


class GeneralizedCircle(BaseModel):
    """Circle or line as the zero set of p|z|² + q̄z + qz̄ + s.

    Normalized to |q|² − ps = 1 with p > 0 for circles; lines (p = 0)
    have the first nonzero coordinate of q positive. Center is −q/p.
    """

    model_config = ConfigDict(frozen=True)

    p: float
    q: complex
    s: float

    @model_validator(mode="before")
    @classmethod
    def normalize_triple(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        p = float(data["p"])
        q = complex(data["q"])
        s = float(data["s"])
        if not (math.isfinite(p) and cmath.isfinite(q) and math.isfinite(s)):
            raise ValueError("circle coefficients must be finite")
        disc = abs(q) ** 2 - p * s
        if not disc > 0:
            raise ValueError("circle discriminant |q|^2 - ps must be positive")
        root = math.sqrt(disc)
        p, q, s = p / root, q / root, s / root
        if abs(p) < ALGEBRAIC_TOL:
            p = 0.0
            # renormalize so |q| = 1 exactly on lines
            norm = abs(q)
            q, s = q / norm, s / norm
        flip = p < 0 or (p == 0 and (q.real < 0 or (q.real == 0 and q.imag < 0)))
        if flip:
            p, q, s = -p, -q, -s
        return {"p": p, "q": q, "s": s}

    @property
    def is_line(self) -> bool:
        return self.p == 0

    @property
    def center(self) -> complex:
        if self.is_line:
            raise ValueError("a line has no center")
        return -self.q / self.p

    @property
    def radius(self) -> float:
        if self.is_line:
            return math.inf
        return 1.0 / self.p

    def form(self, z: complex) -> float:
        """Value of the defining Hermitian form; negative on the interior side."""
        return self.p * abs(z) ** 2 + 2.0 * (self.q.conjugate() * z).real + self.s

    def is_equivalent(self, other: "GeneralizedCircle", tol: float = GEOMETRIC_TOL) -> bool:
        return (
            abs(self.p - other.p) <= tol
            and abs(self.q - other.q) <= tol
            and abs(self.s - other.s) <= tol
        )


class OrientedCircle(BaseModel):
    model_config = ConfigDict(frozen=True)

    circle: GeneralizedCircle
    side: CircleSide = CircleSide.INTERIOR

    def contains(self, z: complex, tol: float = GEOMETRIC_TOL) -> bool:
        value = self.circle.form(z)
        if self.side == CircleSide.INTERIOR:
            return value < -tol
        return value > tol
