from typing import Any, Dict

from .annulus_descriptor import ANNULUS_KINDS, AnnulusDescriptorAdapter
from .base import InputAdapter
from .monodromy import MonodromyAdapter
from .schottky_config import SchottkyConfigAdapter


class AdapterFactory:
    """
    Factory for selecting the appropriate adapter based on input format.

    Supports two strategies:
    1. Explicit "format" field in the payload
    2. Schema fingerprinting (detect format automatically)
    """

    def __init__(self):
        self._adapters = {
            "schottky_config": SchottkyConfigAdapter(),
            "annulus_descriptor": AnnulusDescriptorAdapter(),
            "monodromy": MonodromyAdapter(),
        }

    def get_adapter(self, raw_input: Dict[str, Any]) -> InputAdapter:
        """
        Select adapter based on input structure.

        Raises:
            ValueError: If the format cannot be determined
        """
        if not isinstance(raw_input, dict):
            raise ValueError("input must be a JSON object")

        # Strategy 1: Explicit format
        if "format" in raw_input:
            format_id = raw_input["format"]
            if format_id not in self._adapters:
                raise ValueError(f"Unknown format: {format_id}")
            return self._adapters[format_id]

        # Strategy 2: Schema fingerprinting
        return self._detect_adapter(raw_input)

    def _detect_adapter(self, raw_input: Dict[str, Any]) -> InputAdapter:
        """
        Schottky indicators: "pairings".
        Annulus indicators: one of "round", "ring", "mapped".
        Monodromy indicators: "s1", "sw" and "sw2".
        """
        if "pairings" in raw_input:
            return self._adapters["schottky_config"]

        if any(kind in raw_input for kind in ANNULUS_KINDS):
            return self._adapters["annulus_descriptor"]

        if all(key in raw_input for key in ("s1", "sw", "sw2")):
            return self._adapters["monodromy"]

        raise ValueError(
            "Unable to detect input format. "
            "Ensure input has pairings, an annulus kind (round/ring/mapped), or s1/sw/sw2"
        )

    def register_adapter(self, adapter: InputAdapter):
        self._adapters[adapter.format_id] = adapter
