"""Deterministic SVG pictures of a configuration."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from xml.sax.saxutils import escape

SIZE = 1024
RADIUS = 400
_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


@dataclass(frozen=True)
class SvgOptions:
    intervals: bool = False
    domains: bool = False
    orbit: int = 0
    labels: bool = True
    d: int = 1


def _xy(theta: float, r: float = RADIUS) -> tuple[str, str]:
    a = 2 * math.pi * theta
    return f"{SIZE / 2 + r * math.cos(a):.3f}", f"{SIZE / 2 - r * math.sin(a):.3f}"


def _arc(t0: float, t1: float, r: float, color: str, width: float, opacity: float = 1.0) -> str:
    span = (t1 - t0) % 1.0
    x0, y0 = _xy(t0, r)
    x1, y1 = _xy(t0 + span, r)
    large = 1 if span > 0.5 else 0
    return (f'<path d="M {x0} {y0} A {r:.3f} {r:.3f} 0 {large} 0 {x1} {y1}" fill="none" '
            f'stroke="{color}" stroke-width="{width:g}" stroke-opacity="{opacity:g}"/>')


def render(config, options: SvgOptions = SvgOptions()) -> str:
    prec = config.policy.start
    ang = lambda ref: float(config.angle(ref, prec).mid)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">',
           f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
           f'<circle cx="{SIZE // 2}" cy="{SIZE // 2}" r="{RADIUS}" fill="none" stroke="black" stroke-width="1.5"/>',
           f'<text x="16" y="28" font-family="monospace" font-size="16">{escape(str(config.spec))}</text>']
    if options.domains and config.epsilon is not None:
        for (idx, sgn), (a, b) in sorted(config.domain_arcs().items()):
            color = _PALETTE[idx % len(_PALETTE)]
            out.append(_arc(ang(a), ang(b), RADIUS + (10 if sgn > 0 else 18), color, 6, 0.8))
    if options.intervals:
        arcs = [(f"J{i}", config.arc_J(i)) for i in range(1, config.spec.k + 1)]
        for i in range(1, 2 * config.spec.n + 1):
            arcs += [(f"K{i}+", config.arc_K(i, 1)), (f"K{i}-", config.arc_K(i, -1))]
        for n, (name, (a, b)) in enumerate(arcs):
            out.append(_arc(ang(a), ang(b), RADIUS - 12, _PALETTE[n % len(_PALETTE)], 3))
    marked = [(f"x_e{i}", config.xe(i)) for i in range(1, config.spec.k + 1)]
    for j in range(1, 2 * config.spec.n + 1):
        marked += [(f"x{j}+", config.xp(j)), (f"x{j}-", config.xm(j))]
    for name, ref in marked:
        t = ang(ref)
        x, y = _xy(t)
        out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="black"/>')
        if options.labels:
            lx, ly = _xy(t, RADIUS + 34)
            out.append(f'<text x="{lx}" y="{ly}" font-family="monospace" font-size="12" '
                       f'text-anchor="middle">{escape(name)}</text>')
    if options.orbit > 0:
        from .realization import enumerate_elements
        for w in enumerate_elements(config.spec, options.orbit):
            t = ang(config.xe(1).translate(w))
            x, y = _xy(t, RADIUS - 4)
            out.append(f'<circle cx="{x}" cy="{y}" r="2" fill="#444" fill-opacity="0.7"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_realization(angles: list[Fraction], title: str = "") -> str:
    """Points of a finite realization, in order of insertion."""
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
           f'viewBox="0 0 {SIZE} {SIZE}">',
           f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
           f'<circle cx="{SIZE // 2}" cy="{SIZE // 2}" r="{RADIUS}" fill="none" stroke="black" stroke-width="1.5"/>']
    if title:
        out.append(f'<text x="16" y="28" font-family="monospace" font-size="16">{escape(title)}</text>')
    for i, q in enumerate(angles):
        x, y = _xy(float(q))
        out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="{_PALETTE[i % len(_PALETTE)]}"/>')
        if i < 12:
            lx, ly = _xy(float(q), RADIUS + 20)
            out.append(f'<text x="{lx}" y="{ly}" font-family="monospace" font-size="11" '
                       f'text-anchor="middle">{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
