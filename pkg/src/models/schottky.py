from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from .sphere import GeneralizedCircle, MoebiusMap


class CirclePairing(BaseModel):
    """A pairing map carrying circle ``c`` onto ``c_prime``.

    The map must send the exterior of ``c`` onto the interior of
    ``c_prime``; both conditions are re-checked on construction.
    """

    model_config = ConfigDict(frozen=True)

    c: GeneralizedCircle
    c_prime: GeneralizedCircle
    map: MoebiusMap

    @model_validator(mode="after")
    def check_pairing(self) -> "CirclePairing":
        # deferred import: the geometry layer imports the models package
        from ..schottky.construction import pairing_invariant_errors

        errors = pairing_invariant_errors(self)
        if errors:
            raise ValueError("; ".join(errors))
        return self


class SchottkyConfiguration(BaseModel):
    model_config = ConfigDict(frozen=True)

    pairings: List[CirclePairing]

    @field_validator("pairings")
    @classmethod
    def rank_at_least_two(cls, v):
        if len(v) < 2:
            raise ValueError(f"rank below 2: got {len(v)} pairing(s)")
        return v

    @property
    def g(self) -> int:
        return len(self.pairings)

    def circles(self) -> List[GeneralizedCircle]:
        """The 2g boundary circles, ordered C_1, C'_1, C_2, C'_2, ..."""
        result = []
        for pairing in self.pairings:
            result.extend([pairing.c, pairing.c_prime])
        return result


class ReducedWord(BaseModel):
    """Signed generator indices: +j is A_j, −j its inverse (1-based)."""

    model_config = ConfigDict(frozen=True)

    letters: Tuple[int, ...] = ()

    @field_validator("letters")
    @classmethod
    def freely_reduced(cls, v):
        for i, letter in enumerate(v):
            if letter == 0:
                raise ValueError("generator index 0 is not a letter")
            if i > 0 and v[i - 1] == -letter:
                raise ValueError(f"adjacent cancellation at position {i}")
        return v

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters


class LimitEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    word: ReducedWord
    point: complex
    radius: float


class LimitSample(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: List[LimitEntry] = []

    def __len__(self) -> int:
        return len(self.entries)
