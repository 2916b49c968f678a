from collections import defaultdict
from typing import List, Sequence, Tuple

from ..belyi.homology import dual_pairing_rank, homology_rank
from ..belyi.loops import loop_is_covering
from ..errors import InvalidCycleError
from ..models.belyi import Dessin, LoopSet


def validate_loop_set(dessin: Dessin, loop_set: LoopSet) -> Tuple[bool, List[str]]:
    """Run all loop checks against the dessin the loops live on."""
    errors = []

    errors.extend(check_covering(dessin, loop_set))
    errors.extend(check_vertex_disjoint(dessin, loop_set.cycles))
    errors.extend(check_homology_independent(dessin, loop_set.cycles))

    return len(errors) == 0, errors


def check_covering(dessin: Dessin, loop_set: LoopSet) -> List[str]:
    """Every loop must wrap S¹ with the degree it claims."""
    errors = []

    for idx, (cycle, degree) in enumerate(zip(loop_set.cycles, loop_set.degrees)):
        result = loop_is_covering(dessin, cycle)
        if not result.covering:
            errors.append(f"Loop {idx} is not a covering: {'; '.join(result.reasons)}")
        elif result.degree != degree:
            errors.append(f"Loop {idx} has covering degree {result.degree}, reported {degree}")

    return errors


def check_vertex_disjoint(dessin: Dessin, cycles: Sequence[Sequence[int]]) -> List[str]:
    errors = []
    owners = defaultdict(list)

    for idx, cycle in enumerate(cycles):
        for v in {dessin.dart_vertex[d] for d in cycle}:
            owners[v].append(idx)

    for v in sorted(owners):
        if len(owners[v]) > 1:
            errors.append(f"Vertex {v} is shared by loops {owners[v]}")

    return errors


def check_homology_independent(dessin: Dessin, cycles: Sequence[Sequence[int]]) -> List[str]:
    """Tree-cotree rank and intersection-pairing rank must both equal the loop count."""
    try:
        rank = homology_rank(dessin, cycles)
        pairing_rank = dual_pairing_rank(dessin, cycles)
    except InvalidCycleError as e:
        return [f"Not a closed walk: {e}"]

    errors = []
    if rank != len(cycles):
        errors.append(f"Homology rank {rank} is below the loop count {len(cycles)}")
    if pairing_rank != len(cycles):
        errors.append(f"Intersection pairing rank {pairing_rank} is below the loop count {len(cycles)}")

    return errors
