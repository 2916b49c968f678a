"""The colored triangulation β⁻¹(S¹) of a monodromy triple.

Sheet i labels the inner face (preimage of |z| < 1) on that sheet; its
boundary is the edges (i, 0), (i, 1), (i, 2). Around the vertex over 1,
counterclockwise, the start of edge (i, 0) is followed by the end of edge
(i, 2) and then by the start of edge (s1(i), 0); the vertices over ω and
ω² follow the same pattern with sw and sw2.
"""
from typing import Dict, List, Optional, Sequence

from ..errors import InvalidTripleError
from ..models.belyi import ARC_LABELS, COLOR_LABELS, Dessin, MonodromyTriple
from .permutations import cycles, genus, validate_triple


def start_dart(sheet: int, arc: int) -> int:
    return 2 * (3 * sheet + arc)


def end_dart(sheet: int, arc: int) -> int:
    return start_dart(sheet, arc) + 1


def build_dessin(t: MonodromyTriple) -> Dessin:
    ok, errors = validate_triple(t)
    if not ok:
        raise InvalidTripleError("; ".join(errors))
    d = t.degree
    darts = 6 * d
    rotation = [0] * darts
    involution = [0] * darts
    dart_vertex = [0] * darts
    vertex_colors: List[int] = []
    # (color, sheet) -> vertex index
    vertex_of: Dict[tuple, int] = {}
    for color, p in enumerate(t.permutations):
        for cycle in cycles(p):
            for i in cycle:
                vertex_of[(color, i)] = len(vertex_colors)
            vertex_colors.append(color)

    for i in range(d):
        for arc, p in enumerate(t.permutations):
            previous_arc = (arc + 2) % 3
            rotation[start_dart(i, arc)] = end_dart(i, previous_arc)
            rotation[end_dart(i, previous_arc)] = start_dart(p[i], arc)
            dart_vertex[start_dart(i, arc)] = vertex_of[(arc, i)]
            dart_vertex[end_dart(i, previous_arc)] = vertex_of[(arc, i)]
            involution[start_dart(i, arc)] = end_dart(i, arc)
            involution[end_dart(i, arc)] = start_dart(i, arc)

    return Dessin(
        triple=t,
        rotation=tuple(rotation),
        involution=tuple(involution),
        dart_vertex=tuple(dart_vertex),
        vertex_colors=tuple(vertex_colors),
        arc_labels=tuple(k % 3 for k in range(3 * d)),
    )


def check_dessin(dessin: Dessin) -> List[str]:
    """Structural checks: Euler identity, edge colors, connectivity through faces."""
    errors = []
    expected = 2 - 2 * genus(dessin.triple)
    if dessin.euler_characteristic != expected:
        errors.append(f"V - E + F = {dessin.euler_characteristic}, expected {expected}")
    if dessin.num_edges != 3 * dessin.triple.degree:
        errors.append(f"{dessin.num_edges} edges for degree {dessin.triple.degree}")
    for edge, arc in enumerate(dessin.arc_labels):
        start, end = dessin.edge_endpoints(edge)
        if dessin.vertex_colors[start] != arc or dessin.vertex_colors[end] != (arc + 1) % 3:
            errors.append(f"edge {edge} ({ARC_LABELS[arc]}) joins vertices of the wrong colors")
    for dart in range(dessin.num_darts):
        if dessin.dart_vertex[dessin.rotation[dart]] != dessin.dart_vertex[dart]:
            errors.append(f"rotation moves dart {dart} off its vertex")
    return errors


def dessin_to_json(dessin: Dessin, loops: Optional[Sequence[Sequence[int]]] = None) -> dict:
    """Adjacency export: vertices with colors, edges with arcs and endpoints."""
    data = {
        "degree": dessin.triple.degree,
        "genus": genus(dessin.triple),
        "vertices": [
            {"id": v, "color": COLOR_LABELS[c]} for v, c in enumerate(dessin.vertex_colors)
        ],
        "edges": [
            {
                "id": k,
                "arc": ARC_LABELS[arc],
                "start": dessin.edge_endpoints(k)[0],
                "end": dessin.edge_endpoints(k)[1],
            }
            for k, arc in enumerate(dessin.arc_labels)
        ],
        "faces": [list(face) for face in dessin.faces()],
        "counts": {
            "V": dessin.num_vertices,
            "E": dessin.num_edges,
            "F": dessin.num_faces,
            "euler": dessin.euler_characteristic,
        },
    }
    if loops is not None:
        data["loops"] = [list(loop) for loop in loops]
    return data
