"""Permutations as image tuples, composed left to right: (p·q)(i) = q[p[i]]."""
from typing import List, Sequence, Tuple

import networkx as nx

from ..errors import InvalidTripleError
from ..models.belyi import MonodromyTriple, Permutation


def identity(degree: int) -> Permutation:
    return tuple(range(degree))


def compose(*perms: Sequence[int]) -> Permutation:
    """Apply the first permutation first."""
    result = list(range(len(perms[0])))
    for p in perms:
        result = [p[i] for i in result]
    return tuple(result)


def inverse(p: Sequence[int]) -> Permutation:
    result = [0] * len(p)
    for i, image in enumerate(p):
        result[image] = i
    return tuple(result)


def cycles(p: Sequence[int]) -> List[Tuple[int, ...]]:
    """Disjoint cycles, fixed points included, each starting at its minimum."""
    seen = [False] * len(p)
    result = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i)
            i = p[i]
        result.append(tuple(cycle))
    return result


def cycle_type(p: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def is_transitive(degree: int, perms: Sequence[Sequence[int]]) -> bool:
    graph = nx.Graph()
    graph.add_nodes_from(range(degree))
    for p in perms:
        graph.add_edges_from((i, p[i]) for i in range(degree))
    return nx.is_connected(graph)


def validate_triple(t: MonodromyTriple) -> Tuple[bool, List[str]]:
    errors = []
    if compose(t.s1, t.sw, t.sw2) != identity(t.degree):
        errors.append("product s1·sw·sw2 is not the identity")
    if not is_transitive(t.degree, t.permutations):
        errors.append("generated group is not transitive")
    return len(errors) == 0, errors


def genus(t: MonodromyTriple) -> int:
    """Riemann-Hurwitz: 2 − 2g = 2d − Σ (len(c) − 1) over all cycles."""
    ok, errors = validate_triple(t)
    if not ok:
        raise InvalidTripleError("; ".join(errors))
    ramification = sum(len(c) - 1 for p in t.permutations for c in cycles(p))
    return (ramification - 2 * t.degree + 2) // 2


def trivial_triple() -> MonodromyTriple:
    return MonodromyTriple(degree=1, s1=(0,), sw=(0,), sw2=(0,))


def genus_two_triple() -> MonodromyTriple:
    """Three 5-cycles: s1 = sw = (0 1 2 3 4), sw2 = (s1·sw)⁻¹."""
    cycle = (1, 2, 3, 4, 0)
    return MonodromyTriple(degree=5, s1=cycle, sw=cycle, sw2=inverse(compose(cycle, cycle)))
