"""Matplotlib renderings: graphs to PNG, corpus reports to charts.

Everything here draws with plain matplotlib primitives and writes to a
file; nothing opens a window, so the module is safe in headless runs.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import FancyArrowPatch, FancyBboxPatch

from .analyses import CallGraph, Cfg

_BOX_STYLE = dict(boxstyle="round,pad=0.25", linewidth=1.2)


def render_cfg(cfg: Cfg, path: str | Path) -> Path:
    """Draw a control flow graph top-down, one row per depth level."""
    levels: dict[int, int] = {0: 0}
    order = [0]
    successors: dict[int, list[int]] = {}
    for edge in cfg.edges:
        successors.setdefault(edge.source, []).append(edge.target)
    frontier = [0]
    while frontier:
        block = frontier.pop(0)
        for target in successors.get(block, []):
            if target not in levels:
                levels[target] = levels[block] + 1
                order.append(target)
                frontier.append(target)
    orphan_row = max(levels.values(), default=0) + 1
    for block in cfg.blocks:
        if block.index not in levels:
            levels[block.index] = orphan_row

    rows: dict[int, list[int]] = {}
    for index in sorted(levels):
        rows.setdefault(levels[index], []).append(index)
    positions: dict[int, tuple[float, float]] = {}
    for row, members in rows.items():
        for column, index in enumerate(members):
            x = column - (len(members) - 1) / 2
            positions[index] = (x * 3.2, -row * 1.8)

    width = max(len(m) for m in rows.values())
    fig, ax = plt.subplots(figsize=(max(6, width * 3.4), max(4, len(rows) * 1.7)))
    ax.set_axis_off()
    for block in cfg.blocks:
        x, y = positions[block.index]
        lines = [block.name]
        for statement in block.statements[:2]:
            text = statement.text
            lines.append(text if len(text) <= 34 else text[:31] + "...")
        if len(block.statements) > 2:
            lines.append("...")
        color = "#f4d7d7" if block.unreachable else "#dbe9f6"
        ax.text(
            x,
            y,
            "\n".join(lines),
            ha="center",
            va="center",
            fontsize=8,
            bbox=dict(facecolor=color, **_BOX_STYLE),
            zorder=3,
        )
    for edge in cfg.edges:
        start = positions[edge.source]
        end = positions[edge.target]
        bend = 0.25 if edge.source >= edge.target else 0.0
        arrow = FancyArrowPatch(
            start,
            end,
            arrowstyle="-|>",
            mutation_scale=12,
            shrinkA=24,
            shrinkB=24,
            connectionstyle=f"arc3,rad={bend}",
            color="#5a5a5a",
            zorder=2,
        )
        ax.add_patch(arrow)
        if edge.label:
            mx = (start[0] + end[0]) / 2
            my = (start[1] + end[1]) / 2
            ax.text(mx, my, edge.label, fontsize=7, color="#333333", ha="center")
    ax.relim()
    ax.autoscale_view()
    fig.suptitle(cfg.function, fontsize=10)
    return _save(fig, path)


def render_call_graph(graph: CallGraph, path: str | Path) -> Path:
    """Draw a call graph with nodes arranged on a circle."""
    count = max(len(graph.nodes), 1)
    radius = 1.0 + 0.08 * count
    positions = {
        name: (
            radius * math.cos(2 * math.pi * index / count),
            radius * math.sin(2 * math.pi * index / count),
        )
        for index, name in enumerate(graph.nodes)
    }
    side = max(6, count * 1.1)
    fig, ax = plt.subplots(figsize=(side, side))
    ax.set_axis_off()
    for name, (x, y) in positions.items():
        ax.text(
            x,
            y,
            name,
            ha="center",
            va="center",
            fontsize=8,
            bbox=dict(facecolor="#e4efdb", **_BOX_STYLE),
            zorder=3,
        )
    for source, target in graph.edges:
        if source == target:
            x, y = positions[source]
            loop = FancyArrowPatch(
                (x - 0.12, y + 0.12),
                (x + 0.12, y + 0.12),
                arrowstyle="-|>",
                mutation_scale=10,
                connectionstyle="arc3,rad=2.2",
                color="#5a5a5a",
            )
            ax.add_patch(loop)
            continue
        arrow = FancyArrowPatch(
            positions[source],
            positions[target],
            arrowstyle="-|>",
            mutation_scale=12,
            shrinkA=28,
            shrinkB=28,
            connectionstyle="arc3,rad=0.08",
            color="#5a5a5a",
        )
        ax.add_patch(arrow)
    margin = radius + 0.8
    ax.set_xlim(-margin, margin)
    ax.set_ylim(-margin, margin)
    return _save(fig, path)


def render_corpus_times(
    fixtures: Sequence[str], milliseconds: Sequence[float], path: str | Path
) -> Path:
    """Horizontal bars of per-fixture round-trip time."""
    height = max(3.0, 0.32 * len(fixtures) + 1)
    fig, ax = plt.subplots(figsize=(8, height))
    spots = range(len(fixtures))
    ax.barh(spots, milliseconds, color="#6699cc")
    ax.set_yticks(list(spots))
    ax.set_yticklabels(fixtures, fontsize=7)
    ax.invert_yaxis()
    ax.set_xlabel("round trip (ms)")
    ax.set_title("corpus round-trip timing")
    fig.tight_layout()
    return _save(fig, path)


def render_corpus_status(passed: int, failed: int, path: str | Path) -> Path:
    fig, ax = plt.subplots(figsize=(4, 3.2))
    ax.bar(["pass", "fail"], [passed, failed], color=["#7cae7a", "#c66b6b"])
    ax.set_ylabel("fixtures")
    ax.set_title("corpus round-trip status")
    for index, value in enumerate((passed, failed)):
        ax.text(index, value, str(value), ha="center", va="bottom", fontsize=9)
    fig.tight_layout()
    return _save(fig, path)


def _save(fig: "plt.Figure", path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path
