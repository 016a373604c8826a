"""Deterministic SVG drawing of a deployment."""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .deployment import Deployment
from .verification import build_comm_graph

CANVAS_WIDTH = 800.0


def _num(v: float) -> str:
    s = f"{v:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(dep: Deployment, rc: float | None = None, title: str | None = None) -> str:
    """SVG with the field outline, one translucent disk per node, node centres and,
    when ``rc`` is given, the communication links.

    The y axis points up as in the field's own coordinates.
    """
    f = dep.field
    pad = dep.rs if dep.nodes else 0.0
    vx0, vy0 = f.origin.x - pad, f.origin.y - pad
    vw, vh = f.width + 2 * pad, f.height + 2 * pad
    k = CANVAS_WIDTH / vw

    def X(x):
        return _num((x - vx0) * k)

    def Y(y):
        return _num((vy0 + vh - y) * k)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(vw * k)}" height="{_num(vh * k)}" '
        f'viewBox="0 0 {_num(vw * k)} {_num(vh * k)}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(
        "<style>.field{fill:none;stroke:#333;stroke-width:1.5}"
        ".sensing-disk{fill:#3a7bd5;fill-opacity:0.25;stroke:#3a7bd5;stroke-width:0.5}"
        ".comm-edge{stroke:#d5533a;stroke-width:0.8}"
        ".node{fill:#111}.base-station{fill:#d5533a}</style>"
    )
    out.append(
        f'<rect class="field" x="{X(f.origin.x)}" y="{Y(f.y_max)}" '
        f'width="{_num(f.width * k)}" height="{_num(f.height * k)}"/>'
    )

    out.append('<g id="sensing">')
    r = _num(dep.rs * k) if dep.nodes else "0"
    for n in dep.nodes:
        out.append(f'<circle class="sensing-disk" cx="{X(n.position.x)}" cy="{Y(n.position.y)}" r="{r}"/>')
    out.append("</g>")

    if rc is not None:
        graph = build_comm_graph(dep, rc)
        out.append(f'<g id="links" data-rc={quoteattr(repr(float(rc)))}>')
        for i, j in sorted(graph.edges()):
            a, b = dep.nodes[i].position, dep.nodes[j].position
            out.append(f'<line class="comm-edge" x1="{X(a.x)}" y1="{Y(a.y)}" x2="{X(b.x)}" y2="{Y(b.y)}"/>')
        out.append("</g>")

    out.append('<g id="nodes">')
    dot = _num(max(1.5, 0.06 * dep.rs * k)) if dep.nodes else "0"
    for n in dep.nodes:
        cls = "node base-station" if n.id == dep.base_station_id else "node"
        out.append(
            f'<circle class="{cls}" data-id="{n.id}" cx="{X(n.position.x)}" cy="{Y(n.position.y)}" r="{dot}"/>'
        )
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
