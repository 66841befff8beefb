"""File outputs for enumeration and analysis reports.

The report path writes delimited/structured data (CSV, JSON) and can
render companion matplotlib figures next to them: a Cayley-table heatmap
for enumerated free objects and a growth curve of distinct rank-1 word
images for the analysis command.
"""

from __future__ import annotations

import json
from pathlib import Path as FsPath
from typing import Optional

from .analysis import CayleyTable
from .semirings import Semiring
from .variety import Identity, check_identity


def write_cayley_csv(table: CayleyTable, path: str) -> str:
    FsPath(path).write_text(table.csv())
    return path


def write_cayley_json(table: CayleyTable, path: str) -> str:
    FsPath(path).write_text(json.dumps(table.json(), indent=2) + "\n")
    return path


def write_json(payload: dict, path: str) -> str:
    FsPath(path).write_text(json.dumps(payload, indent=2) + "\n")
    return path


def _matplotlib():
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    return plt


def render_cayley_figure(table: CayleyTable, path: str) -> str:
    """Heatmap of the right-multiplication table: rows are elements,
    columns generators, colors the product's element index."""
    plt = _matplotlib()
    fig, ax = plt.subplots(
        figsize=(max(3.0, 0.6 * len(table.generators) + 2.0),
                 max(3.0, 0.3 * table.size + 1.5)))
    data = [[table.table[i][g] for g in range(len(table.generators))]
            for i in range(table.size)]
    im = ax.imshow(data, aspect="auto", cmap="viridis")
    ax.set_xticks(range(len(table.generators)))
    ax.set_xticklabels(list(table.generators))
    ax.set_yticks(range(table.size))
    ax.set_yticklabels(
        [w if w else "1" for w in table.words], fontsize=7)
    for i in range(table.size):
        for g in range(len(table.generators)):
            ax.text(g, i, str(data[i][g]), ha="center", va="center",
                    color="white", fontsize=7)
    ax.set_xlabel("generator")
    ax.set_ylabel("element")
    ax.set_title(f"free {table.mode}, {table.semiring}, n={table.n}, "
                 f"size {table.size}")
    fig.colorbar(im, ax=ax, label="product index")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def rank1_growth_series(semiring: Semiring, n: int, count: int) -> list[int]:
    """Cumulative number of distinct word images among a^0 .. a^m."""
    distinct = 1  # the empty word
    series = [1]
    reps: list[str] = [""]
    for m in range(1, count + 1):
        word = "a" * m
        if all(not check_identity(Identity(rep, word, kind="monoid"),
                                  n, semiring).holds for rep in reps):
            reps.append(word)
            distinct += 1
        series.append(distinct)
    return series


def render_growth_figure(semiring: Semiring, n: int, count: int,
                         path: str,
                         series: Optional[list[int]] = None) -> str:
    """Step plot of the rank-1 free-object growth; saturation certifies a
    finite monogenic free object, a diagonal line shows free growth."""
    if series is None:
        series = rank1_growth_series(semiring, n, count)
    plt = _matplotlib()
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    ax.step(range(len(series)), series, where="post")
    ax.set_xlabel("power m")
    ax.set_ylabel("distinct images of a^0..a^m")
    ax.set_title(f"rank-1 growth, {semiring.name}, n={n}")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
