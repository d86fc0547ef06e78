"""SVG drawing of the tree as a diamond of units.

Unit (a, b) holds every node whose x level is ``a`` and y level is ``b``.
The root unit sits at the top; x levels go down-left, y levels down-right.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET

from .unified import TreeStats

CELL = 48  # half-diagonal of one diamond cell
MARGIN = 24
FILL_EMPTY = "#f2f2f2"
FONT = "sans-serif"


def _shade(nodes: int, peak: int) -> str:
    if nodes == 0 or peak == 0:
        return FILL_EMPTY
    # lighter for sparse units, full color for the busiest one
    t = 0.25 + 0.75 * nodes / peak
    base = (0x79, 0x95, 0xC4)
    rgb = [round(255 - (255 - c) * t) for c in base]
    return "#%02x%02x%02x" % tuple(rgb)


def render_svg(stats: TreeStats) -> str:
    la, lb = stats.x_levels, stats.y_levels
    # root cell center; la cells extend to the left of it, lb to the right
    ox = MARGIN + (la + 1) * CELL
    oy = MARGIN + 20 + CELL
    width = ox + (lb + 1) * CELL + MARGIN
    height = oy + (la + lb + 1) * CELL + MARGIN

    svg = ET.Element(
        "svg",
        xmlns="http://www.w3.org/2000/svg",
        width=str(width),
        height=str(height),
        viewBox=f"0 0 {width} {height}",
    )
    title = ET.SubElement(svg, "text", x=str(MARGIN), y=str(MARGIN), attrib={"font-family": FONT, "font-size": "12"})
    title.text = f"{stats.nodes} nodes, {stats.rects} rects, L_x={la}, L_y={lb}"

    peak = max((u.nodes for u in stats.units), default=0)
    for u in stats.units:
        cx = ox + (u.b - u.a) * CELL
        cy = oy + (u.a + u.b) * CELL
        g = ET.SubElement(svg, "g", attrib={"class": "unit", "data-a": str(u.a), "data-b": str(u.b)})
        pts = [(cx, cy - CELL), (cx + CELL, cy), (cx, cy + CELL), (cx - CELL, cy)]
        ET.SubElement(
            g,
            "polygon",
            points=" ".join(f"{x},{y}" for x, y in pts),
            fill=_shade(u.nodes, peak),
            stroke="#555555",
            attrib={"stroke-width": "1"},
        )
        label = ET.SubElement(
            g, "text", x=str(cx), y=str(cy - 2),
            attrib={"text-anchor": "middle", "font-family": FONT, "font-size": "11"},
        )
        label.text = str(u.nodes)
        sub = ET.SubElement(
            g, "text", x=str(cx), y=str(cy + 12),
            attrib={"text-anchor": "middle", "font-family": FONT, "font-size": "9", "fill": "#333333"},
        )
        sub.text = f"ids {u.stored}"
        tip = ET.SubElement(g, "title")
        tip.text = f"unit ({u.a},{u.b}): {u.nodes} nodes, {u.stored} stored ids"
    return ET.tostring(svg, encoding="unicode", xml_declaration=False)
