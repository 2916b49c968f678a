"""JSON encodings shared by the input formats and the reports.

Complex numbers are [re, im] pairs (a bare real number is accepted on
input), ∞ is the string "inf", circles are {"center": [re, im],
"radius": r} or {"line": {"p": 0, "q": [re, im], "s": s}}.
"""
import math
from typing import Any, Dict, List

from ..geometry.circles import circle_from_center_radius
from ..models.sphere import GeneralizedCircle, MoebiusMap
from ..utils.numeric_utils import SpherePoint, is_infinity, sphere_point


def decode_complex(value: Any) -> complex:
    if isinstance(value, bool):
        raise ValueError(f"not a complex number: {value!r}")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
        if isinstance(re, (int, float)) and isinstance(im, (int, float)) \
                and not isinstance(re, bool) and not isinstance(im, bool):
            return complex(re, im)
    raise ValueError(f"complex numbers are [re, im] pairs, got {value!r}")


def encode_complex(z: complex) -> List[float]:
    return [float(z.real), float(z.imag)]


def decode_point(value: Any) -> SpherePoint:
    if value == "inf":
        return sphere_point("inf")
    return sphere_point(decode_complex(value))


def encode_point(z: SpherePoint):
    if is_infinity(z):
        return "inf"
    return encode_complex(z)


def decode_circle(value: Any) -> GeneralizedCircle:
    if not isinstance(value, dict):
        raise ValueError(f"circle must be an object, got {value!r}")
    if "line" in value:
        line = value["line"]
        if not isinstance(line, dict) or not {"p", "q", "s"} <= line.keys():
            raise ValueError("line needs p, q and s")
        return GeneralizedCircle(p=float(line["p"]), q=decode_complex(line["q"]), s=float(line["s"]))
    if "center" not in value or "radius" not in value:
        raise ValueError("circle needs center and radius")
    radius = value["radius"]
    if isinstance(radius, bool) or not isinstance(radius, (int, float)) or not math.isfinite(radius):
        raise ValueError(f"radius must be a finite number, got {radius!r}")
    return circle_from_center_radius(decode_complex(value["center"]), float(radius))


def encode_circle(c: GeneralizedCircle) -> Dict[str, Any]:
    if c.is_line:
        return {"line": {"p": 0.0, "q": encode_complex(c.q), "s": float(c.s)}}
    return {"center": encode_complex(c.center), "radius": float(c.radius)}


def decode_moebius(value: Any) -> MoebiusMap:
    if not isinstance(value, dict) or not {"a", "b", "c", "d"} <= value.keys():
        raise ValueError("Möbius map needs coefficients a, b, c, d")
    return MoebiusMap(**{k: decode_complex(value[k]) for k in "abcd"})


def encode_moebius(m: MoebiusMap) -> Dict[str, List[float]]:
    return {k: encode_complex(getattr(m, k)) for k in "abcd"}
