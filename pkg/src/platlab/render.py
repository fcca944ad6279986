"""Deterministic SVG drawings of plat diagrams and labyrinth chains."""
from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .labyrinth import ChainNormalForm, chain_recurrence, gates, position_pair
from .plat import PlatSpec, require_valid, row_layout


@dataclass(frozen=True)
class RenderPlan:
    target: str = "plat"          # "plat" or "labyrinth"
    width: int = 800
    height: int = 600
    boxed: bool = True            # draw multiplicities as boxed labels

    def __post_init__(self):
        if self.target not in ("plat", "labyrinth"):
            raise ValueError(f"unknown render target {self.target!r}")
        if self.width <= 0 or self.height <= 0:
            raise ValueError("page size must be positive")


def _f(x: float) -> str:
    s = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _header(plan: RenderPlan, title: str) -> list[str]:
    return [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{plan.width}" height="{plan.height}" '
        f'viewBox="0 0 {plan.width} {plan.height}">',
        f"<title>{escape(title)}</title>",
        f'<rect width="{plan.width}" height="{plan.height}" fill="white"/>',
    ]


def render(spec: PlatSpec, plan: RenderPlan = RenderPlan()) -> str:
    if plan.target == "plat":
        return render_plat(spec, plan)
    return render_labyrinth(spec, plan)


def render_plat(spec: PlatSpec, plan: RenderPlan = RenderPlan()) -> str:
    """Strands, twist boxes (signed half-twist counts) and the top and bottom bridges."""
    require_valid(spec, strict=False)
    n = 2 * spec.b
    margin = 40.0
    dx = (plan.width - 2 * margin) / (n + 1)
    top, bottom = margin + dx, plan.height - margin - dx
    band = (bottom - top) / max(spec.rows, 1)
    xs = [margin + dx * k for k in range(1, n + 1)]
    out = _header(plan, f"plat b={spec.b} h={spec.h}")
    out.append('<g stroke="black" stroke-width="2" fill="none">')
    for i in range(spec.b):
        x0, x1 = xs[2 * i], xs[2 * i + 1]
        r = (x1 - x0) / 2
        out.append(f'<path class="bridge top" d="M {_f(x0)} {_f(top)} A {_f(r)} {_f(r)} 0 0 1 {_f(x1)} {_f(top)}"/>')
        out.append(f'<path class="bridge bottom" d="M {_f(x0)} {_f(bottom)} A {_f(r)} {_f(r)} 0 0 0 {_f(x1)} {_f(bottom)}"/>')
    for k, x in enumerate(xs, start=1):
        out.append(f'<line class="strand" data-position="{k}" x1="{_f(x)}" y1="{_f(top)}" x2="{_f(x)}" y2="{_f(bottom)}"/>')
    out.append("</g>")
    for k, x in enumerate(xs, start=1):
        out.append(f'<circle class="strand-top" data-position="{k}" cx="{_f(x)}" cy="{_f(top)}" r="2"/>')
    for k, x in enumerate(xs, start=1):
        out.append(f'<circle class="endpoint" data-position="{k}" cx="{_f(x)}" cy="{_f(bottom)}" r="3"/>')
    for r in range(1, spec.rows + 1):
        yc = bottom - band * (r - 0.5)
        for (p, q), t in zip(row_layout(spec.b, r).pairs, spec.twists[r - 1]):
            x0, x1 = xs[p - 1] - dx * 0.3, xs[q - 1] + dx * 0.3
            hgt = min(band * 0.6, 40.0)
            out.append(
                f'<rect class="twist-region" data-row="{r}" x="{_f(x0)}" y="{_f(yc - hgt / 2)}" '
                f'width="{_f(x1 - x0)}" height="{_f(hgt)}" fill="white" stroke="black"/>')
            out.append(
                f'<text x="{_f((x0 + x1) / 2)}" y="{_f(yc + 5)}" text-anchor="middle" '
                f'font-family="sans-serif" font-size="14">{t}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_labyrinth(spec: PlatSpec, plan: RenderPlan = RenderPlan(), nf: ChainNormalForm | None = None) -> str:
    """
    The chain of h circle families around consecutive puncture pairs, with
    the multiplicity of each family, the h-1 gates and the beta arcs.
    """
    require_valid(spec, strict=True)
    if nf is None:
        nf = chain_recurrence(spec)
    n = 2 * spec.b
    margin = 30.0
    dx = (plan.width - 2 * margin) / (n + 1)
    yc = plan.height / 2
    xs = [margin + dx * k for k in range(1, n + 1)]
    out = _header(plan, f"labyrinth b={spec.b} h={spec.h}")
    out.append(f'<line class="puncture-line" x1="{_f(margin)}" y1="{_f(yc)}" x2="{_f(plan.width - margin)}" '
               f'y2="{_f(yc)}" stroke="#bbbbbb" stroke-dasharray="2 4"/>')
    ry = min(plan.height * 0.3, dx * 1.2)
    for j in range(1, nf.h + 1):
        p, q = position_pair(j)
        cx = (xs[p - 1] + xs[q - 1]) / 2
        rx = dx * 0.95
        r_y = ry if j % 2 else ry * 0.75
        role = "undercircle" if j % 2 else "overcircle"
        out.append(f'<ellipse class="{role}" data-position="{j}" cx="{_f(cx)}" cy="{_f(yc)}" '
                   f'rx="{_f(rx)}" ry="{_f(r_y)}" fill="none" stroke="black" stroke-width="2"/>')
        label = str(nf[j])
        ly = yc - r_y - 14 if j % 2 else yc + r_y + 22
        if plan.boxed:
            w = 10 + 8 * len(label)
            out.append(f'<rect class="multiplicity-box" data-position="{j}" x="{_f(cx - w / 2)}" y="{_f(ly - 14)}" '
                       f'width="{_f(w)}" height="20" fill="white" stroke="black"/>')
        out.append(f'<text class="multiplicity" data-position="{j}" x="{_f(cx)}" y="{_f(ly)}" '
                   f'text-anchor="middle" font-family="sans-serif" font-size="13">{escape(label)}</text>')
    for g in gates(nf.h):
        p, q = position_pair(g.color)
        x = (xs[q - 1] + xs[q]) / 2 if q < n else xs[q - 1]
        y0, y1 = (yc + ry * 0.4, yc + ry * 0.95) if g.side == "lower" else (yc - ry * 0.95, yc - ry * 0.4)
        out.append(f'<line class="gate" data-color="{g.color}" x1="{_f(x)}" y1="{_f(y0)}" x2="{_f(x)}" y2="{_f(y1)}" '
                   f'stroke="black" stroke-dasharray="3 3"/>')
    for k, x in enumerate(xs, start=1):
        out.append(f'<circle class="puncture" data-position="{k}" cx="{_f(x)}" cy="{_f(yc)}" r="3"/>')
    for i in range(1, spec.b + 1):
        x = (xs[2 * i - 2] + xs[2 * i - 1]) / 2
        out.append(f'<text class="arc-label" x="{_f(x)}" y="{_f(yc + 16)}" text-anchor="middle" '
                   f'font-family="serif" font-size="11">β{i}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
