"""
SVG rendering of shuffle diagrams in the style of box-and-strand figures.

Each diagram shows the source composition's boxes along the bottom, the
target composition's boxes along the top and straight strands between slot
anchors, captioned with the one-line permutation.  Layout constants live in
one configuration record; output is deterministic byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .compositions import Composition, Pair, blocks, total
from .fiber import FiberReport, total_fiber
from .perms import Perm


@dataclass(frozen=True)
class SvgConfig:
    slot_width: int = 26
    box_height: int = 16
    strand_height: int = 64
    box_gap: int = 6
    margin: int = 12
    caption_height: int = 18
    diagram_gap: int = 20
    font_size: int = 11
    stroke: str = "#1a1a1a"
    box_fill: str = "#f2f2f2"


DEFAULT_CONFIG = SvgConfig()


def _slot_x(slot: int, cfg: SvgConfig) -> float:
    return cfg.margin + (slot - 0.5) * cfg.slot_width


def _boxes_svg(comp: Composition, y: float, x0: float, cfg: SvgConfig) -> list[str]:
    out = []
    for lo, hi in blocks(comp):
        left = x0 + (lo - 1) * cfg.slot_width + cfg.box_gap / 2
        width = (hi - lo + 1) * cfg.slot_width - cfg.box_gap
        out.append(
            f'<rect x="{left:.1f}" y="{y:.1f}" width="{width:.1f}" '
            f'height="{cfg.box_height}" fill="{cfg.box_fill}" '
            f'stroke="{cfg.stroke}"/>'
        )
    return out


def diagram_svg(
    w: Perm,
    source: Composition,
    target: Composition,
    x0: float = 0.0,
    cfg: SvgConfig = DEFAULT_CONFIG,
) -> list[str]:
    """SVG fragments for one permutation between composition boxes."""
    n = len(w)
    top_y = cfg.margin
    strand_top = top_y + cfg.box_height
    strand_bot = strand_top + cfg.strand_height
    caption_y = strand_bot + cfg.box_height + cfg.caption_height
    out = _boxes_svg(target, top_y, x0, cfg)
    out += _boxes_svg(source, strand_bot, x0, cfg)
    for p in range(1, n + 1):
        x_from = x0 + _slot_x(p, cfg) - cfg.margin
        x_to = x0 + _slot_x(w[p - 1], cfg) - cfg.margin
        out.append(
            f'<line x1="{x_from:.1f}" y1="{strand_bot:.1f}" '
            f'x2="{x_to:.1f}" y2="{strand_top:.1f}" '
            f'stroke="{cfg.stroke}"/>'
        )
    caption = ",".join(str(v) for v in w)
    mid = x0 + (n * cfg.slot_width) / 2
    out.append(
        f'<text x="{mid:.1f}" y="{caption_y:.1f}" font-size="{cfg.font_size}" '
        f'text-anchor="middle" font-family="monospace">{caption}</text>'
    )
    return out


def vertex_svg(
    diagrams: tuple[Perm, ...],
    source: Composition,
    target: Composition,
    cfg: SvgConfig = DEFAULT_CONFIG,
) -> str:
    """One SVG document holding every diagram of a vertex, side by side."""
    n = total(source)
    width_each = n * cfg.slot_width
    count = max(len(diagrams), 1)
    width = cfg.margin * 2 + count * width_each + (count - 1) * cfg.diagram_gap
    height = (
        cfg.margin * 2
        + 2 * cfg.box_height
        + cfg.strand_height
        + cfg.caption_height
        + cfg.margin
    )
    body: list[str] = []
    for k, w in enumerate(diagrams):
        x0 = cfg.margin + k * (width_each + cfg.diagram_gap)
        body += diagram_svg(w, source, target, x0, cfg)
    if not diagrams:
        body.append(
            f'<text x="{width / 2:.1f}" y="{height / 2:.1f}" '
            f'font-size="{cfg.font_size}" text-anchor="middle" '
            f'font-family="monospace">(empty)</text>'
        )
    joined = "\n".join(body)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">\n'
        f"{joined}\n</svg>\n"
    )


def render_level(
    pair: Pair,
    level: int,
    out_dir: str | Path,
    cfg: SvgConfig = DEFAULT_CONFIG,
    report: FiberReport | None = None,
) -> list[Path]:
    """Write one SVG per vertex of the intermediate cube at `level`.

    Files are named B{level}_{bits}.svg; the final single vertex gets
    B0.svg.  Returns the written paths.
    """
    if report is None:
        report = total_fiber(pair)
    cube = next((c for c in report.levels if c.level == level), None)
    if cube is None:
        lo, hi = 0, report.levels[0].level
        raise ValueError(f"level {level} out of range {lo}..{hi}")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    source, target = pair
    for index in sorted(cube.vertex_sets):
        bits = "".join(str(b) for b in index)
        name = f"B{level}_{bits}.svg" if bits else f"B{level}.svg"
        path = out / name
        path.write_text(
            vertex_svg(cube.vertex_sets[index], source, target, cfg),
            encoding="utf-8",
        )
        written.append(path)
    return written
