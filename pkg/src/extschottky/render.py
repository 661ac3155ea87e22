"""Pictures of circle systems and limit points.

The SVG writer is hand-rolled so that output is byte-stable; matplotlib is
only imported for the optional raster figure.
"""

from __future__ import annotations

from .circles import is_inf

SVG_SIZE = 800
MARGIN = 0.05
DOT_RADIUS = 0.5


def initial_discs(group) -> list:
    """Discs that must hold every limit point: the pairing discs of factors
    that have a pairing, and the host region of the others."""
    out = []
    for f in group.factors:
        if f.pairing is not None:
            out += [f.pairing.source, f.pairing.target]
        else:
            out += list(f.hosts)
    return out


def _drawable(circles) -> list:
    # lines would need clipping to the viewport and do not occur in placed assemblies
    return [c for c in circles if not c.is_line]


def _bounds(circles, points) -> tuple:
    xs, ys = [], []
    for c in circles:
        z, r = c.center, c.radius
        xs += [z.real - r, z.real + r]
        ys += [z.imag - r, z.imag + r]
    for p in points:
        xs.append(p.real)
        ys.append(p.imag)
    if not xs:
        return -1.0, -1.0, 1.0, 1.0
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0, 1e-12)
    pad = MARGIN * span
    return x0 - pad, y0 - pad, x1 + pad, y1 + pad


def _num(x: float) -> str:
    return f"{x:.6f}".rstrip("0").rstrip(".") or "0"


def svg_document(circles, points, size: int = SVG_SIZE) -> str:
    """SVG 1.1 text with one ``<circle>`` per circle and one dot per point.

    Points at infinity are dropped. The viewport fits the bounding box of
    everything drawn, padded by 5% of its larger side.
    """
    circles = _drawable(circles)
    points = [complex(p) for p in points if not is_inf(p)]
    x0, y0, x1, y1 = _bounds(circles, points)
    scale = size / max(x1 - x0, y1 - y0)
    width, height = (x1 - x0) * scale, (y1 - y0) * scale

    def px(z: complex) -> tuple:
        # the y axis points down in SVG
        return (z.real - x0) * scale, (y1 - z.imag) * scale

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_num(width)}" height="{_num(height)}" viewBox="0 0 {_num(width)} {_num(height)}">',
        '<g fill="none" stroke="#1f4e79" stroke-width="1">',
    ]
    for c in circles:
        cx, cy = px(c.center)
        lines.append(f'<circle cx="{_num(cx)}" cy="{_num(cy)}" r="{_num(c.radius * scale)}"/>')
    lines.append("</g>")
    lines.append('<g fill="#b22222" stroke="none">')
    for p in points:
        cx, cy = px(p)
        lines.append(f'<circle cx="{_num(cx)}" cy="{_num(cy)}" r="{DOT_RADIUS}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg(path, circles, points) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg_document(circles, points))


def write_figure(path, circles, points, title: str = "") -> None:
    """Raster or vector figure through matplotlib (format from the suffix)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Circle

    circles = _drawable(circles)
    finite = [complex(p) for p in points if not is_inf(p)]
    fig, ax = plt.subplots(figsize=(6, 6))
    for c in circles:
        ax.add_patch(Circle((c.center.real, c.center.imag), c.radius, fill=False,
                            linewidth=0.8, color="#1f4e79"))
    if finite:
        ax.scatter([p.real for p in finite], [p.imag for p in finite], s=0.5, color="#b22222")
    x0, y0, x1, y1 = _bounds(circles, finite)
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    ax.set_aspect("equal")
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=200, bbox_inches="tight")
    plt.close(fig)


def points_outside(points, discs, tol: float = 1e-9) -> list:
    """Points lying in none of ``discs`` (closed, with a relative slack ``tol``)."""
    return [p for p in points if not any(d.contains(p, tol * max(1.0, d.radius)) for d in discs)]
