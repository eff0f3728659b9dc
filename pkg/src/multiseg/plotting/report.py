from __future__ import annotations

import csv
from collections import Counter
from pathlib import Path
from typing import Iterable, Optional

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .. import oracle  # noqa: E402
from ..core import Multisegment, lengths  # noqa: E402
from ..notation import print_multisegment  # noqa: E402
from ..zposet import PosetGraph, lower_set  # noqa: E402

DEFAULT_FIXTURE = Multisegment.of((0, 2), (1, 3), (2, 4))


def _write_csv(path: Path, header: list[str], rows: Iterable[Iterable]) -> Path:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return path


def plot_suites(reports: list[oracle.Report], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 3.5))
    names = [r.suite for r in reports]
    colors = ["tab:green" if r.ok else "tab:red" for r in reports]
    ax.barh(names, [r.checked for r in reports], color=colors)
    ax.set_xscale("log")
    ax.set_xlabel("instances checked (red: violations found)")
    ax.invert_yaxis()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_lower_set_sizes(sizes: list[int], path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    counts = Counter(sizes)
    xs = sorted(counts)
    ax.bar(xs, [counts[x] for x in xs], color="tab:blue")
    ax.set_yscale("log")
    ax.set_xlabel("nodes in lower set")
    ax.set_ylabel("multisegments")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def longest_path_layers(g: PosetGraph) -> dict[Multisegment, int]:
    """Layer = length of the longest move sequence from the root, so every edge points down."""
    kids: dict = {}
    indeg = Counter()
    for e in g.edges:
        kids.setdefault(e.parent, set()).add(e.child)
    for children in kids.values():
        indeg.update(children)
    layer = {n: 0 for n in g.nodes}
    ready = [n for n in g.nodes if indeg[n] == 0]
    while ready:
        node = ready.pop()
        for c in kids.get(node, ()):
            layer[c] = max(layer[c], layer[node] + 1)
            indeg[c] -= 1
            if indeg[c] == 0:
                ready.append(c)
    return layer


def plot_hasse(g: PosetGraph, path: Path) -> Path:
    depth = longest_path_layers(g)
    layers: dict[int, list[Multisegment]] = {}
    for node in g.nodes:
        layers.setdefault(depth[node], []).append(node)
    pos = {}
    for d, nodes in layers.items():
        for k, node in enumerate(nodes):
            pos[node] = (k - (len(nodes) - 1) / 2, -d)
    width = max(len(v) for v in layers.values())
    fig, ax = plt.subplots(figsize=(max(4, 2.2 * width), 1.4 * (len(layers) + 1)))
    for e in g.edges:
        (x0, y0), (x1, y1) = pos[e.parent], pos[e.child]
        ax.annotate("", xy=(x1, y1 + 0.12), xytext=(x0, y0 - 0.12),
                    arrowprops=dict(arrowstyle="->", color="0.5"))
    for node, (x, y) in pos.items():
        face = "honeydew" if node.is_generic() else "white"
        ax.text(x, y, print_multisegment(node), ha="center", va="center", fontsize=8,
                bbox=dict(boxstyle="round", fc=face, ec="0.3"))
    ax.set_xlim(-width / 2 - 0.5, width / 2 + 0.5)
    ax.set_ylim(-len(layers), 0.6)
    ax.axis("off")
    ax.set_title(f"lower set of {print_multisegment(g.root)} (shaded: generic)", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_mx_divergence(rows: list[tuple[Multisegment, object]], path: Path) -> Path:
    by_len = Counter(lengths(d)[0] for _, d in rows)
    fig, ax = plt.subplots(figsize=(5, 3.5))
    xs = sorted(by_len)
    ax.bar(xs, [by_len[x] for x in xs], color="tab:orange")
    ax.set_xlabel("length of the target segment")
    ax.set_ylabel("instances where mx modes differ")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_report(out_dir, window: oracle.Window = oracle.DEFAULT_WINDOW,
                 fixture: Optional[Multisegment] = None,
                 suites: Optional[list[str]] = None) -> list[Path]:
    """Run the suites over ``window`` and write CSV tables plus PNG figures."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files: list[Path] = []

    reports = [oracle.run_suite(name, window) for name in (suites or sorted(oracle.SUITES))]
    files.append(_write_csv(out / "suites.csv", ["suite", "window", "checked", "violations", "wall_time_ms"],
                            ([r.suite, r.window, r.checked, len(r.violations), f"{r.wall_time_ms:.1f}"]
                             for r in reports)))
    files.append(_write_csv(out / "violations.csv", ["suite", "input", "detail", "original"],
                            ([r.suite, v.input, v.detail, v.original or ""] for r in reports for v in r.violations)))
    files.append(plot_suites(reports, out / "suites.png"))

    ms = list(oracle.enumerate_multisegments(window))
    sizes = [len(lower_set(m).nodes) for m in ms]
    files.append(_write_csv(out / "lower_sets.csv", ["multisegment", "nodes"],
                            ((print_multisegment(m), s) for m, s in zip(ms, sizes))))
    files.append(plot_lower_set_sizes(sizes, out / "lower_set_sizes.png"))

    g = lower_set(fixture if fixture is not None else DEFAULT_FIXTURE)
    files.append(plot_hasse(g, out / "hasse.png"))

    div = oracle.mx_divergence(window)
    from ..derive import mx_generic

    files.append(_write_csv(out / "mx_divergence.csv", ["n", "segment", "filtered", "unfiltered"],
                            ((print_multisegment(n), str(d), print_multisegment(mx_generic(n, d, True)),
                              print_multisegment(mx_generic(n, d, False))) for n, d in div)))
    files.append(plot_mx_divergence(div, out / "mx_divergence.png"))

    stats = oracle.fastpath_crosscheck(window)
    files.append(_write_csv(out / "fastpath.csv", ["criterion", "instances", "agree"],
                            ((k, s.instances, s.agree) for k, s in stats.items())))
    return files
