"""Deterministic SVG rendering of dessins."""
from typing import List, Optional, Sequence

import networkx as nx

from ..models.belyi import Dessin

VERTEX_FILLS = ("black", "white", "gray")
LOOP_STROKES = ("red", "blue", "green", "orange", "purple", "teal")


def dessin_svg(dessin: Dessin, loops: Optional[Sequence[Sequence[int]]] = None) -> str:
    """Vertices on a circle colored by branch value, edges as chords, loops on top."""
    graph = nx.Graph()
    graph.add_nodes_from(range(dessin.num_vertices))
    layout = nx.circular_layout(graph, scale=100.0)

    def point(v):
        x, y = layout[v]
        return float(x), -float(y)

    rows: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" viewBox="-110.000000 -110.000000 220.000000 220.000000">',
    ]
    for k in range(dessin.num_edges):
        (x1, y1), (x2, y2) = (point(v) for v in dessin.edge_endpoints(k))
        rows.append(
            f'<line x1="{x1:.6f}" y1="{y1:.6f}" x2="{x2:.6f}" y2="{y2:.6f}" '
            'stroke="lightgray" stroke-width="0.300000"/>'
        )
    for idx, loop in enumerate(loops or []):
        stroke = LOOP_STROKES[idx % len(LOOP_STROKES)]
        for dart in loop:
            (x1, y1), (x2, y2) = point(dessin.dart_vertex[dart]), point(dessin.dart_head(dart))
            rows.append(
                f'<line x1="{x1:.6f}" y1="{y1:.6f}" x2="{x2:.6f}" y2="{y2:.6f}" '
                f'stroke="{stroke}" stroke-width="1.200000"/>'
            )
    for v, color in enumerate(dessin.vertex_colors):
        x, y = point(v)
        rows.append(
            f'<circle cx="{x:.6f}" cy="{y:.6f}" r="2.000000" '
            f'fill="{VERTEX_FILLS[color]}" stroke="black" stroke-width="0.300000"/>'
        )
    rows.append("</svg>")
    return "\n".join(rows) + "\n"
