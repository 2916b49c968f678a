"""Covering loops in dessins and the refine-and-retry search for g of them."""
import logging
from typing import List, Optional, Sequence, Tuple

import networkx as nx

from ..models.belyi import CoveringCheck, Dessin, LoopCandidate, LoopSearchResult, LoopSet
from ..solver.engine import solve_loop_selection
from .dessin import build_dessin
from .homology import tree_cotree
from .permutations import genus
from .refine import refine

logger = logging.getLogger(__name__)

DEFAULT_REFINE_BUDGET = 3
DEFAULT_MAX_LOOP_LENGTH = 18
CANDIDATES_PER_CLASS = 12
SHORT_CYCLE_LENGTH = 6


def loop_is_covering(dessin: Dessin, cycle: Sequence[int]) -> CoveringCheck:
    reasons = []
    if len(cycle) == 0:
        return CoveringCheck(covering=False, reasons=["empty cycle"])
    for i, dart in enumerate(cycle):
        following = cycle[(i + 1) % len(cycle)]
        if dessin.dart_head(dart) != dessin.dart_vertex[following]:
            reasons.append(f"darts {dart} and {following} are not consecutive")
    vertices = [dessin.dart_vertex[dart] for dart in cycle]
    if len(set(vertices)) != len(vertices):
        reasons.append("cycle revisits a vertex")
    directions = {dart % 2 for dart in cycle}
    if len(directions) > 1:
        reasons.append("colors do not advance consistently")
    if reasons:
        return CoveringCheck(covering=False, reasons=reasons)
    return CoveringCheck(covering=True, degree=len(cycle) // 3)


def _canonical(darts: Sequence[int]) -> Tuple[int, ...]:
    start = darts.index(min(darts))
    return tuple(darts[start:]) + tuple(darts[:start])


def _forward_graph(dessin: Dessin) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(dessin.num_vertices))
    for k in range(dessin.num_edges):
        u, v = dessin.edge_endpoints(k)
        if not graph.has_edge(u, v):
            graph.add_edge(u, v, dart=2 * k)
    return graph


def enumerate_covering_cycles(dessin: Dessin, max_length: int = DEFAULT_MAX_LOOP_LENGTH) -> List[Tuple[int, ...]]:
    """All forward cycles up to length 6, plus shortest-path cycles through a root and one edge.

    Every cycle returned advances 1 → ω → ω²; sorted by (length, darts).
    """
    graph = _forward_graph(dessin)
    reverse = graph.reverse(copy=False)
    found = {_canonical([graph[a][b]["dart"] for a, b in zip(cycle, cycle[1:] + cycle[:1])])
             for cycle in nx.simple_cycles(graph, length_bound=SHORT_CYCLE_LENGTH)}
    roots = [v for v, color in enumerate(dessin.vertex_colors) if color == 0]
    for root in roots:
        outward = nx.single_source_shortest_path(graph, root)
        inward = nx.single_source_shortest_path(reverse, root)
        for k in range(dessin.num_edges):
            x, y = dessin.edge_endpoints(k)
            if x not in outward or y not in inward:
                continue
            there = outward[x]
            back = inward[y][::-1]
            if len(there) + len(back) - 1 > max_length:
                continue
            vertices = there + back[:-1]
            if len(set(vertices)) != len(vertices):
                continue
            darts = [graph[a][b]["dart"] for a, b in zip(there[:-1], there[1:])]
            darts.append(2 * k)
            darts.extend(graph[a][b]["dart"] for a, b in zip(back[:-1], back[1:]))
            found.add(_canonical(darts))
    return sorted(found, key=lambda c: (len(c), c))


def loop_candidates(dessin: Dessin, max_length: int = DEFAULT_MAX_LOOP_LENGTH) -> List[LoopCandidate]:
    """Homologically nontrivial covering cycles, the shortest few per class."""
    decomposition = tree_cotree(dessin)
    per_class = {}
    candidates = []
    for darts in enumerate_covering_cycles(dessin, max_length):
        homology_class = decomposition.cycle_class(darts)
        if homology_class == 0 or per_class.get(homology_class, 0) >= CANDIDATES_PER_CLASS:
            continue
        per_class[homology_class] = per_class.get(homology_class, 0) + 1
        candidates.append(LoopCandidate(
            darts=darts,
            vertices=tuple(dessin.dart_vertex[d] for d in darts),
            homology_class=homology_class,
        ))
    return candidates


def select_loops(dessin: Dessin, g_target: int,
                 max_length: int = DEFAULT_MAX_LOOP_LENGTH) -> Optional[LoopSet]:
    """g disjoint independent covering loops in this dessin, or None."""
    if g_target == 0:
        return LoopSet(cycles=[], degrees=[])
    if dessin.num_vertices < 3 * g_target:
        logger.info("%d vertices cannot carry %d disjoint loops", dessin.num_vertices, g_target)
        return None
    candidates = loop_candidates(dessin, max_length)
    logger.debug("%d loop candidates in degree %d", len(candidates), dessin.triple.degree)
    selection = solve_loop_selection(candidates, g_target)
    if selection is None:
        return None
    chosen = [candidates[i] for i in selection]
    return LoopSet(cycles=[c.darts for c in chosen], degrees=[c.length // 3 for c in chosen])


def find_disjoint_loops(dessin: Dessin, g_target: int,
                        refine_budget: int = DEFAULT_REFINE_BUDGET,
                        max_length: int = DEFAULT_MAX_LOOP_LENGTH) -> LoopSearchResult:
    """Search, refining β ↦ R∘β after each failure, up to ``refine_budget`` times.

    Loops in the result live on the dessin of ``result.triple``.
    """
    surface_genus = genus(dessin.triple)
    if g_target != surface_genus:
        raise ValueError(f"target {g_target} differs from the surface genus {surface_genus}")
    triple = dessin.triple
    refinements = 0
    while True:
        loop_set = select_loops(dessin, g_target, max_length)
        if loop_set is not None:
            return LoopSearchResult(loop_set=loop_set, triple=triple, genus=surface_genus,
                                    refinements_used=refinements, exhausted=False)
        if refinements >= refine_budget:
            logger.info("loop search exhausted after %d refinements", refinements)
            return LoopSearchResult(loop_set=None, triple=triple, genus=surface_genus,
                                    refinements_used=refinements, exhausted=True)
        triple = refine(triple)
        dessin = build_dessin(triple)
        refinements += 1
