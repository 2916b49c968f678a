"""Mod-2 homology of dessins by tree-cotree decomposition.

T is a spanning tree of the graph, C a spanning tree of the dual graph
using only edges outside T, and X the 2g remaining edges. A cycle's class
is its coordinate vector over X, where each cotree edge c is first
replaced by the X-edges crossing the boundary of the face set cut off
by c. Classes are Python ints used as bitsets over X.
"""
import functools
from typing import Dict, Iterable, List, Sequence, Set

import networkx as nx
from networkx.utils import UnionFind

from ..errors import InvalidCycleError
from ..models.belyi import Dessin


def gf2_rank(vectors: Iterable[int]) -> int:
    basis: Dict[int, int] = {}
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


class TreeCotree:
    def __init__(self, dessin: Dessin):
        self.dessin = dessin
        faces = dessin.faces()
        self.face_of = [0] * dessin.num_darts
        for f, face in enumerate(faces):
            for dart in face:
                self.face_of[dart] = f

        vertices = UnionFind(range(dessin.num_vertices))
        self.tree = nx.Graph()
        self.tree.add_nodes_from(range(dessin.num_vertices))
        for k in range(dessin.num_edges):
            u, v = dessin.edge_endpoints(k)
            if vertices[u] != vertices[v]:
                vertices.union(u, v)
                self.tree.add_edge(u, v, edge=k)
        tree_edges = {k for _, _, k in self.tree.edges(data="edge")}

        regions = UnionFind(range(len(faces)))
        self.cotree = nx.Graph()
        self.cotree.add_nodes_from(range(len(faces)))
        self.extra: List[int] = []
        for k in range(dessin.num_edges):
            if k in tree_edges:
                continue
            f, g = self.face_of[2 * k], self.face_of[2 * k + 1]
            if regions[f] != regions[g]:
                regions.union(f, g)
                self.cotree.add_edge(f, g, edge=k)
            else:
                self.extra.append(k)
        self.bit = {k: 1 << i for i, k in enumerate(self.extra)}
        self.cotree_class = self._cotree_classes(faces)

    def _cotree_classes(self, faces) -> Dict[int, int]:
        classes: Dict[int, int] = {}
        parent_edge = {child: self.cotree[parent][child]["edge"]
                       for parent, child in nx.bfs_edges(self.cotree, 0)}
        for f in nx.dfs_postorder_nodes(self.cotree, 0):
            if f == 0:
                continue
            value = 0
            for dart in faces[f]:
                value ^= self.bit.get(dart // 2, 0)
            for g in self.cotree.neighbors(f):
                edge = self.cotree[f][g]["edge"]
                if edge != parent_edge[f]:
                    value ^= classes[edge]
            classes[parent_edge[f]] = value
        return classes

    @property
    def rank(self) -> int:
        return len(self.extra)

    def edge_class(self, edge: int) -> int:
        if edge in self.bit:
            return self.bit[edge]
        return self.cotree_class.get(edge, 0)

    def cycle_class(self, darts: Sequence[int]) -> int:
        value = 0
        for dart in darts:
            value ^= self.edge_class(dart // 2)
        return value

    def _darts_along(self, path: Sequence[int]) -> List[int]:
        darts = []
        for a, b in zip(path[:-1], path[1:]):
            k = self.tree[a][b]["edge"]
            darts.append(2 * k if self.dessin.dart_vertex[2 * k] == a else 2 * k + 1)
        return darts

    def fundamental_cycle(self, edge: int) -> List[int]:
        """edge followed by the tree path back to its start."""
        start, end = self.dessin.edge_endpoints(edge)
        return [2 * edge] + self._darts_along(nx.shortest_path(self.tree, end, start))

    def dual_cycle_edges(self, edge: int) -> Set[int]:
        """Primal edges crossed by the dual cycle through ``edge`` and the cotree."""
        path = nx.shortest_path(self.cotree, self.face_of[2 * edge], self.face_of[2 * edge + 1])
        return {edge} | {self.cotree[a][b]["edge"] for a, b in zip(path[:-1], path[1:])}


@functools.lru_cache(maxsize=8)
def tree_cotree(dessin: Dessin) -> TreeCotree:
    return TreeCotree(dessin)


def check_closed_walk(dessin: Dessin, darts: Sequence[int]) -> None:
    if len(darts) == 0:
        raise InvalidCycleError("empty cycle")
    for i, dart in enumerate(darts):
        if not 0 <= dart < dessin.num_darts:
            raise InvalidCycleError(f"dart {dart} out of range")
        following = darts[(i + 1) % len(darts)]
        if 0 <= following < dessin.num_darts and dessin.dart_head(dart) != dessin.dart_vertex[following]:
            raise InvalidCycleError(f"darts {dart} and {following} are not consecutive")


def homology_classes(dessin: Dessin, cycles: Sequence[Sequence[int]]) -> List[int]:
    decomposition = tree_cotree(dessin)
    for cycle in cycles:
        check_closed_walk(dessin, cycle)
    return [decomposition.cycle_class(cycle) for cycle in cycles]


def homology_rank(dessin: Dessin, cycles: Sequence[Sequence[int]]) -> int:
    return gf2_rank(homology_classes(dessin, cycles))


def _edge_parity(darts: Sequence[int]) -> Set[int]:
    odd: Set[int] = set()
    for dart in darts:
        odd ^= {dart // 2}
    return odd


def dual_pairing_rank(dessin: Dessin, cycles: Sequence[Sequence[int]]) -> int:
    """Rank of the mod-2 intersection matrix of the cycles against the dual basis."""
    decomposition = tree_cotree(dessin)
    duals = [decomposition.dual_cycle_edges(x) for x in decomposition.extra]
    rows = []
    for cycle in cycles:
        check_closed_walk(dessin, cycle)
        edges = _edge_parity(cycle)
        row = 0
        for i, dual in enumerate(duals):
            if len(edges & dual) % 2:
                row |= 1 << i
        rows.append(row)
    return gf2_rank(rows)


def homology_basis(dessin: Dessin) -> List[List[int]]:
    decomposition = tree_cotree(dessin)
    return [decomposition.fundamental_cycle(x) for x in decomposition.extra]


def homology_basis_pairing(dessin: Dessin) -> List[List[int]]:
    """Intersection matrix of the primal basis cycles against the dual basis cycles."""
    decomposition = tree_cotree(dessin)
    duals = [decomposition.dual_cycle_edges(x) for x in decomposition.extra]
    return [
        [len(_edge_parity(cycle) & dual) % 2 for dual in duals]
        for cycle in homology_basis(dessin)
    ]
