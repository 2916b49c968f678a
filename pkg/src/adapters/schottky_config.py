from typing import Any, Dict, List

from .base import InputAdapter
from .codec import decode_circle, decode_moebius, encode_circle, encode_moebius
from ..models.schottky import CirclePairing, SchottkyConfiguration
from ..schottky.construction import twist_pairing_map


class SchottkyConfigAdapter(InputAdapter):
    """
    Adapter for circle-pairing configurations.

    Format: {"genus": g, "pairings": [{"c": circle, "c_prime": circle,
    "theta": t}, ...]}. The pairing map is z ↦ q + ρρ'e^{iθ}/(z − p)
    unless an explicit "map" is given. Circle disjointness is not checked
    here, so overlapping data still reaches verify_classical.
    """

    @property
    def format_id(self) -> str:
        return "schottky_config"

    def parse(self, raw_input: Dict[str, Any]) -> SchottkyConfiguration:
        pairings = raw_input.get("pairings")
        if not isinstance(pairings, list):
            raise ValueError("Schottky configuration needs a list of pairings")

        parsed = [self._parse_pairing(idx, p) for idx, p in enumerate(pairings)]

        genus = raw_input.get("genus", len(parsed))
        if genus != len(parsed):
            raise ValueError(f"genus {genus} does not match {len(parsed)} pairings")

        return SchottkyConfiguration(pairings=parsed)

    def _parse_pairing(self, idx: int, raw: Dict[str, Any]) -> CirclePairing:
        if not isinstance(raw, dict) or "c" not in raw or "c_prime" not in raw:
            raise ValueError(f"pairing {idx + 1} needs circles c and c_prime")
        c = decode_circle(raw["c"])
        c_prime = decode_circle(raw["c_prime"])
        if c.is_line or c_prime.is_line:
            raise ValueError(f"pairing {idx + 1}: pairing circles must be bounded")

        if "map" in raw:
            m = decode_moebius(raw["map"])
        else:
            theta = raw.get("theta", 0.0)
            if isinstance(theta, bool) or not isinstance(theta, (int, float)):
                raise ValueError(f"pairing {idx + 1}: theta must be a number")
            m = twist_pairing_map(c.center, c.radius, c_prime.center, c_prime.radius, float(theta))

        return CirclePairing(c=c, c_prime=c_prime, map=m)


def pairings_payload(cfg: SchottkyConfiguration) -> List[Dict[str, Any]]:
    """Inverse direction, with the map written out explicitly."""
    return [
        {"c": encode_circle(p.c), "c_prime": encode_circle(p.c_prime), "map": encode_moebius(p.map)}
        for p in cfg.pairings
    ]
