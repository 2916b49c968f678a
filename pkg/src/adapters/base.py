from abc import ABC, abstractmethod
from typing import Any, Dict

from pydantic import BaseModel


class InputAdapter(ABC):
    """
    Base adapter for turning one JSON input format into validated models.

    Each file format (Schottky configuration, annulus descriptor,
    monodromy triple) is handled by a concrete adapter that implements
    parse(). This keeps the wire encoding out of the numerical modules.
    """

    @abstractmethod
    def parse(self, raw_input: Dict[str, Any]) -> BaseModel:
        """
        Transform a decoded JSON payload into a model.

        Args:
            raw_input: Decoded JSON object

        Returns:
            The validated model for this format

        Raises:
            ValueError: If input is malformed or missing required fields
        """
        pass

    @property
    @abstractmethod
    def format_id(self) -> str:
        """Unique identifier for this input format."""
        pass
