from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

COLOR_LABELS = ("1", "ω", "ω²")
ARC_LABELS = ("1→ω", "ω→ω²", "ω²→1")

Permutation = Tuple[int, ...]


def is_permutation(images, degree: int) -> bool:
    return len(images) == degree and sorted(images) == list(range(degree))


class MonodromyTriple(BaseModel):
    """Monodromy of a Belyi map around 1, ω, ω² (0-indexed sheets).

    Product identity and transitivity are not enforced here; see
    ``validate_triple``, which reports them as diagnostics.
    """

    model_config = ConfigDict(frozen=True)

    degree: int
    s1: Permutation
    sw: Permutation
    sw2: Permutation

    @field_validator("degree")
    @classmethod
    def positive_degree(cls, v):
        if v < 1:
            raise ValueError(f"degree must be positive, got {v}")
        return v

    @model_validator(mode="after")
    def bijective_images(self) -> "MonodromyTriple":
        for name in ("s1", "sw", "sw2"):
            if not is_permutation(getattr(self, name), self.degree):
                raise ValueError(f"{name} is not a permutation of 0..{self.degree - 1}")
        return self

    @property
    def permutations(self) -> Tuple[Permutation, Permutation, Permutation]:
        return self.s1, self.sw, self.sw2


class Dessin(BaseModel):
    """β⁻¹(S¹) as a colored triangulation.

    Edge k = 3i + a is the lift on sheet i of arc a (0: 1→ω, 1: ω→ω², 2: ω²→1).
    Dart 2k is its start, dart 2k + 1 its end. ``rotation`` gives the next
    dart counterclockwise around the same vertex.
    """

    model_config = ConfigDict(frozen=True)

    triple: MonodromyTriple
    rotation: Tuple[int, ...]
    involution: Tuple[int, ...]
    dart_vertex: Tuple[int, ...]
    vertex_colors: Tuple[int, ...]
    arc_labels: Tuple[int, ...]

    @property
    def num_darts(self) -> int:
        return len(self.rotation)

    @property
    def num_edges(self) -> int:
        return len(self.arc_labels)

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_colors)

    def dart_head(self, dart: int) -> int:
        return self.dart_vertex[self.involution[dart]]

    def edge_endpoints(self, edge: int) -> Tuple[int, int]:
        return self.dart_vertex[2 * edge], self.dart_vertex[2 * edge + 1]

    def faces(self) -> List[Tuple[int, ...]]:
        """Orbits of rotation∘involution, each starting at its smallest dart."""
        seen = [False] * self.num_darts
        orbits = []
        for start in range(self.num_darts):
            if seen[start]:
                continue
            orbit = []
            dart = start
            while not seen[dart]:
                seen[dart] = True
                orbit.append(dart)
                dart = self.rotation[self.involution[dart]]
            orbits.append(tuple(orbit))
        return orbits

    @property
    def num_faces(self) -> int:
        return len(self.faces())

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces


class CoveringCheck(BaseModel):
    covering: bool
    degree: Optional[int] = None
    reasons: List[str] = []


class LoopSet(BaseModel):
    """Simple loops in a dessin, each given as a dart sequence."""

    cycles: List[Tuple[int, ...]]
    degrees: List[int]

    @model_validator(mode="after")
    def one_degree_per_cycle(self) -> "LoopSet":
        if len(self.cycles) != len(self.degrees):
            raise ValueError("need one covering degree per cycle")
        return self


class LoopSearchResult(BaseModel):
    loop_set: Optional[LoopSet]
    triple: MonodromyTriple
    genus: int
    refinements_used: int
    exhausted: bool


class RConstellation(BaseModel):
    """Monodromy and coefficients of R(z) = N(z)/D(z), ascending powers."""

    model_config = ConfigDict(frozen=True)

    triple: MonodromyTriple
    numerator: List[complex]
    denominator: List[complex]

    @property
    def degree(self) -> int:
        return self.triple.degree


class LoopCandidate(BaseModel):
    """A directed covering cycle offered to the loop selection model."""

    model_config = ConfigDict(frozen=True)

    darts: Tuple[int, ...]
    vertices: Tuple[int, ...]
    homology_class: int

    @property
    def length(self) -> int:
        return len(self.darts)
