from typing import Any, Dict, List

from .base import InputAdapter
from .codec import decode_circle, decode_complex
from ..models.annulus import AnnulusTask, CircleRing, LaurentMap, Mapped, RationalMap, Round

ANNULUS_KINDS = ("round", "ring", "mapped")


class AnnulusDescriptorAdapter(InputAdapter):
    """
    Adapter for annulus descriptors.

    Exactly one of:
    - {"round": {"r": r}}
    - {"ring": {"inner": circle, "outer": circle}}
    - {"mapped": {"r": r, "laurent": {"-1": [re, im], "1": [re, im], ...}}}

    Optional extras: "sub_ring" (an essential ring inside the annulus, for
    the Grötzsch comparison) and "map" ({"numerator": [...],
    "denominator": [...], "target": descriptor}) for the modulus ratio of
    a holomorphic map into another annulus.
    """

    @property
    def format_id(self) -> str:
        return "annulus_descriptor"

    def parse(self, raw_input: Dict[str, Any]) -> AnnulusTask:
        annulus = self.parse_annulus(raw_input)

        sub_ring = None
        if "sub_ring" in raw_input:
            sub_ring = self._parse_ring(raw_input["sub_ring"])

        rational_map, target = None, None
        if "map" in raw_input:
            map_data = raw_input["map"]
            if not isinstance(map_data, dict) or "numerator" not in map_data or "target" not in map_data:
                raise ValueError("map needs numerator and target")
            rational_map = RationalMap(
                numerator=self._coefficients(map_data["numerator"]),
                denominator=self._coefficients(map_data.get("denominator", [1])),
            )
            target = self.parse_annulus(map_data["target"])

        return AnnulusTask(annulus=annulus, sub_ring=sub_ring, rational_map=rational_map, target=target)

    def parse_annulus(self, raw: Dict[str, Any]):
        if not isinstance(raw, dict):
            raise ValueError(f"annulus descriptor must be an object, got {raw!r}")
        kinds = [k for k in ANNULUS_KINDS if k in raw]
        if len(kinds) != 1:
            raise ValueError(f"annulus descriptor needs exactly one of {', '.join(ANNULUS_KINDS)}")
        kind = kinds[0]
        body = raw[kind]
        if not isinstance(body, dict):
            raise ValueError(f"{kind} descriptor must be an object")

        if kind == "round":
            return Round(r=self._radius(body))
        if kind == "ring":
            return self._parse_ring(body)
        return Mapped(base=Round(r=self._radius(body)), f=self._parse_laurent(body.get("laurent")))

    def _radius(self, body: Dict[str, Any]) -> float:
        r = body.get("r")
        if isinstance(r, bool) or not isinstance(r, (int, float)):
            raise ValueError(f"r must be a number, got {r!r}")
        return float(r)

    def _parse_ring(self, body: Any) -> CircleRing:
        if not isinstance(body, dict) or "inner" not in body or "outer" not in body:
            raise ValueError("ring needs inner and outer circles")
        return CircleRing(inner=decode_circle(body["inner"]), outer=decode_circle(body["outer"]))

    def _parse_laurent(self, raw: Any) -> LaurentMap:
        """Keys are integer powers written as strings."""
        if not isinstance(raw, dict) or not raw:
            raise ValueError("mapped annulus needs a laurent coefficient object")
        coefficients = {}
        for power, value in raw.items():
            try:
                k = int(power)
            except (TypeError, ValueError):
                raise ValueError(f"Laurent power must be an integer, got {power!r}")
            coefficients[k] = decode_complex(value)
        return LaurentMap(coefficients=coefficients)

    def _coefficients(self, raw: Any) -> List[complex]:
        if not isinstance(raw, list) or not raw:
            raise ValueError("polynomial coefficients must be a nonempty list")
        return [decode_complex(v) for v in raw]
