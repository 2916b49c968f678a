from typing import Any, Dict

from .base import InputAdapter
from ..models.belyi import MonodromyTriple


class MonodromyAdapter(InputAdapter):
    """
    Adapter for monodromy triples.

    The file format is already the model's shape: {"degree": d, "s1": [...],
    "sw": [...], "sw2": [...]} with 0-indexed image arrays, so this adapter
    mostly checks types and passes through.
    """

    @property
    def format_id(self) -> str:
        return "monodromy"

    def parse(self, raw_input: Dict[str, Any]) -> MonodromyTriple:
        for key in ("degree", "s1", "sw", "sw2"):
            if key not in raw_input:
                raise ValueError(f"monodromy triple is missing '{key}'")
        for key in ("s1", "sw", "sw2"):
            images = raw_input[key]
            if not isinstance(images, list) or not all(
                isinstance(i, int) and not isinstance(i, bool) for i in images
            ):
                raise ValueError(f"'{key}' must be a list of integer images")
        return MonodromyTriple(
            degree=raw_input["degree"],
            s1=tuple(raw_input["s1"]),
            sw=tuple(raw_input["sw"]),
            sw2=tuple(raw_input["sw2"]),
        )
