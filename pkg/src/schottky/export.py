"""Deterministic SVG rendering of circles and limit samples."""
from typing import List, Optional

from ..models.schottky import LimitSample, SchottkyConfiguration
from .construction import circle_bounds

MARKER_RADIUS_FRACTION = 0.004


def _circle_path(center: complex, radius: float) -> str:
    # y axis flipped: SVG grows downwards
    x, y = center.real, -center.imag
    return (
        f'<path d="M {x + radius:.6f} {y:.6f} '
        f'A {radius:.6f} {radius:.6f} 0 1 0 {x - radius:.6f} {y:.6f} '
        f'A {radius:.6f} {radius:.6f} 0 1 0 {x + radius:.6f} {y:.6f} Z" '
        'stroke="black" fill="none"/>'
    )


def schottky_svg(cfg: SchottkyConfiguration, sample: Optional[LimitSample] = None) -> str:
    """One <path> per circle (C_1, C'_1, C_2, ...) then one <circle> per limit point."""
    xmin, xmax, ymin, ymax = circle_bounds(cfg)
    span = max(xmax - xmin, ymax - ymin)
    pad = 0.05 * span
    stroke = 0.002 * span
    marker = MARKER_RADIUS_FRACTION * span

    rows: List[str] = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        (
            '<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="{xmin - pad:.6f} {-ymax - pad:.6f} '
            f'{xmax - xmin + 2 * pad:.6f} {ymax - ymin + 2 * pad:.6f}" '
            f'stroke-width="{stroke:.6f}">'
        ),
    ]
    rows.extend(_circle_path(c.center, c.radius) for c in cfg.circles())
    if sample is not None:
        for entry in sample.entries:
            rows.append(
                f'<circle cx="{entry.point.real:.6f}" cy="{-entry.point.imag:.6f}" '
                f'r="{marker:.6f}" fill="red" stroke="none"/>'
            )
    rows.append("</svg>")
    return "\n".join(rows) + "\n"
