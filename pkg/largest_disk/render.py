"""
SVG rendering of an instance and its frame maps, for debugging.

Disk outlines are drawn thin; each frame's surviving arcs go in their own
`<g id="frame-...">` group so a viewer can toggle them. Drawing happens in
plane coordinates under a y-flip.
"""

import math

from largest_disk.engine import Structure
from largest_disk.geom import on_circle, rotate_xy
from largest_disk.models import Disk, Frame

FRAME_COLORS = {
    Frame.RIGHT: "#d62728",
    Frame.TOP: "#2ca02c",
    Frame.BOTTOM: "#1f77b4",
}


def _viewbox(disks: list[Disk]) -> tuple[float, float, float, float]:
    if not disks:
        return -1.0, -1.0, 2.0, 2.0
    x_min = min(d.cx - d.radius for d in disks)
    x_max = max(d.cx + d.radius for d in disks)
    y_min = min(d.cy - d.radius for d in disks)
    y_max = max(d.cy + d.radius for d in disks)
    pad = 0.05 * max(x_max - x_min, y_max - y_min)
    # y is flipped, so the box starts at -y_max
    return x_min - pad, -y_max - pad, x_max - x_min + 2 * pad, y_max - y_min + 2 * pad


def render_svg(disks: list[Disk], structure: Structure | None = None) -> str:
    x, y, width, height = _viewbox(disks)
    stroke = 0.002 * max(width, height)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x:.6g} {y:.6g} {width:.6g} {height:.6g}">',
        '<g transform="scale(1,-1)">',
        f'<g id="disks" fill="none" stroke="#888888" stroke-width="{stroke:.6g}">',
    ]
    for d in disks:
        lines.append(f'<circle cx="{d.cx!r}" cy="{d.cy!r}" r="{d.radius!r}"><title>{d.id}</title></circle>')
    lines.append("</g>")

    if structure is not None:
        for frame in Frame:
            lines.append(
                f'<g id="frame-{frame.value}" fill="none" stroke="{FRAME_COLORS[frame]}" '
                f'stroke-width="{3 * stroke:.6g}">'
            )
            for arc in structure.map_of(frame).sorted_arcs():
                # Arcs live in the rotated frame; rotate the endpoints back.
                d = arc.disk
                x0, y0 = rotate_xy(*on_circle(d.cx, d.cy, d.radius, arc.theta_lo), frame.angle)
                x1, y1 = rotate_xy(*on_circle(d.cx, d.cy, d.radius, arc.theta_hi), frame.angle)
                large = 1 if arc.theta_hi - arc.theta_lo > math.pi else 0
                lines.append(
                    f'<path d="M {x0!r} {y0!r} A {d.radius!r} {d.radius!r} 0 {large} 1 {x1!r} {y1!r}">'
                    f"<title>{arc.owner}</title></path>"
                )
            lines.append("</g>")

    lines += ["</g>", "</svg>"]
    return "\n".join(lines) + "\n"
