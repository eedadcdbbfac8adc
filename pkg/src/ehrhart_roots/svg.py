"""Static SVG of polynomial roots against the two norm bounds."""

from __future__ import annotations

from typing import Sequence

from .bounds import bddps_bound, braun_disc

_SIZE = 600
_MARGIN = 40


def _num(x: float) -> str:
    return format(x, ".6f").rstrip("0").rstrip(".") if x != 0 else "0"


def roots_svg(roots: Sequence[complex], d: int, title: str = "") -> str:
    """Root scatter, the disc |z+1/2| <= d(d-1/2), and the circle |z| = 1+(d+1)!.

    The view is fitted to the disc and the roots; the older factorial bound
    is usually far larger and shows as an arc or not at all, its radius is
    printed in the legend either way.
    """
    disc = braun_disc(d)
    radius = disc.radius_float
    old = bddps_bound(d)
    half = max([radius] + [abs(z + 0.5) for z in roots]) * 1.1
    scale = (_SIZE - 2 * _MARGIN) / (2 * half)
    cx = cy = _SIZE / 2

    def px(z: complex):
        return cx + (z.real + 0.5) * scale, cy - z.imag * scale

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SIZE}" height="{_SIZE + 60}" '
        f'viewBox="0 0 {_SIZE} {_SIZE + 60}">',
        f'<rect x="0" y="0" width="{_SIZE}" height="{_SIZE + 60}" fill="white"/>',
        f'<clipPath id="view"><rect x="0" y="0" width="{_SIZE}" height="{_SIZE}"/></clipPath>',
        '<g clip-path="url(#view)">',
    ]
    ox, oy = px(0j)
    out.append(f'<line x1="0" y1="{_num(oy)}" x2="{_SIZE}" y2="{_num(oy)}" stroke="#999" stroke-width="1"/>')
    out.append(f'<line x1="{_num(ox)}" y1="0" x2="{_num(ox)}" y2="{_SIZE}" stroke="#999" stroke-width="1"/>')
    out.append(f'<line class="re-half" x1="{_num(cx)}" y1="0" x2="{_num(cx)}" y2="{_SIZE}" '
               'stroke="#bbb" stroke-dasharray="4 4" stroke-width="1"/>')
    out.append(f'<circle class="bddps-bound" cx="{_num(ox)}" cy="{_num(oy)}" r="{_num(old * scale)}" '
               'fill="none" stroke="#c33" stroke-width="1.5"/>')
    out.append(f'<circle class="braun-disc" cx="{_num(cx)}" cy="{_num(cy)}" r="{_num(radius * scale)}" '
               'fill="#36c" fill-opacity="0.08" stroke="#36c" stroke-width="1.5"/>')
    for z in roots:
        x, y = px(z)
        out.append(f'<circle class="root" cx="{_num(x)}" cy="{_num(y)}" r="4" fill="black"/>')
    out.append("</g>")
    legend_y = _SIZE + 20
    if title:
        out.append(f'<text x="10" y="{legend_y}" font-family="monospace" font-size="13">{title}</text>')
    out.append(f'<text x="10" y="{legend_y + 20}" font-family="monospace" font-size="13">'
               f'roots: {len(roots)}; |z+1/2| &lt;= {format(radius, ".17g")} (blue); '
               f'|z| &lt;= {old} (red)</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
