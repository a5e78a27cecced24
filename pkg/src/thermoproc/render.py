"""Minimal CSV and SVG output for thermomajorization curves."""

from __future__ import annotations

import csv
import io
from xml.sax.saxutils import escape

PALETTE = ("#c0392b", "#2471a3", "#e67e22", "#000000", "#8b4513", "#27ae60",
           "#7d3c98", "#17a589")
DASHES = ("", "8,4", "8,3,2,3", "2,3", "5,3", "12,4", "1,2", "6,2,1,2")


def curves_csv(curves) -> str:
    """``label,x,y`` rows, one per elbow.  ``curves`` is a list of ``(label, ThermoCurve)``."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["label", "x", "y"])
    for label, c in curves:
        for x, y in c.elbows:
            w.writerow([label, repr(float(x)), repr(float(y))])
    return buf.getvalue()


def curve_csv(c) -> str:
    """Plain ``x,y`` rows for a single curve."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "y"])
    for x, y in c.elbows:
        w.writerow([repr(float(x)), repr(float(y))])
    return buf.getvalue()


def curves_svg(curves, width: int = 480, height: int = 360, margin: int = 40) -> str:
    """Polyline plot of several curves on shared axes, with a legend."""
    xmax = max(float(c.elbows[-1][0]) for _, c in curves)
    sx = (width - 2 * margin) / xmax
    sy = height - 2 * margin

    def px(x, y):
        return f"{margin + float(x) * sx:.3f},{height - margin - float(y) * sy:.3f}"

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}">',
           '<rect width="100%" height="100%" fill="white"/>',
           f'<polyline points="{px(0, 1)} {px(0, 0)} {px(xmax, 0)}" fill="none" stroke="#888"/>']
    for k, (label, c) in enumerate(curves):
        color = PALETTE[k % len(PALETTE)]
        dash = DASHES[k % len(DASHES)]
        pts = " ".join(px(x, y) for x, y in c.elbows)
        style = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline class="curve" points="{pts}" fill="none" stroke="{color}" '
                   f'stroke-width="1.5"{style}><title>{escape(label)}</title></polyline>')
        ly = margin + 14 * k
        out.append(f'<text x="{width - margin - 90}" y="{ly}" font-size="11" fill="{color}">'
                   f'{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
