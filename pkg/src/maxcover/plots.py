"""Chart rendering for evaluation reports and benchmark sweeps."""

from __future__ import annotations

from typing import List, Mapping, Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import BenchRow

__all__ = ["save_metrics_chart", "save_bench_charts"]

METRIC_LABELS = [
    ("hiding_failure", "HF"),
    ("misses_cost", "MC"),
    ("sanitization_rate", "SR"),
    ("artifactual_patterns", "AP"),
    ("dissimilarity", "dif"),
]


def save_metrics_chart(doc: Mapping, path) -> None:
    """Bar chart of the five measures from an evaluation report document."""
    metrics = doc["metrics"]
    labels = [short for key, short in METRIC_LABELS]
    values = [metrics[key] for key, _ in METRIC_LABELS]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(labels, values, color="#4878b0")
    ax.set_ylabel("fraction")
    ax.set_ylim(0, max(1.0, max(values) * 1.1))
    ax.set_title("Sanitization measures")
    for pos, value in enumerate(values):
        ax.annotate(f"{value:.3f}", (pos, value), ha="center",
                    xytext=(0, 3), textcoords="offset points", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _sweep_figure(groups, x_label: str, path) -> None:
    fig, (left, right) = plt.subplots(1, 2, figsize=(11, 4))
    for label, xs, rows in groups:
        suffix = f" ({label})" if label else ""
        for key, short in METRIC_LABELS[:4]:
            left.plot(xs, [getattr(r, key) for r in rows],
                      marker="o", label=short + suffix)
        right.plot(xs, [r.dissimilarity for r in rows],
                   marker="o", label="dif" + suffix)
    left.set_xlabel(x_label)
    left.set_ylabel("fraction")
    left.set_title("Effectiveness")
    left.legend(fontsize=8)
    twin = right.twinx()
    for label, xs, rows in groups:
        suffix = f" ({label})" if label else ""
        twin.plot(xs, [r.elapsed_ms for r in rows], marker="s",
                  linestyle="--", color="#a05050", label="time" + suffix)
    right.set_xlabel(x_label)
    right.set_ylabel("dif")
    twin.set_ylabel("core time (ms)")
    right.set_title("Side effects and cost")
    lines, labels = right.get_legend_handles_labels()
    more, more_labels = twin.get_legend_handles_labels()
    right.legend(lines + more, labels + more_labels, fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def save_bench_charts(rows: Sequence[BenchRow], base_path: str) -> List[str]:
    """Render one figure per sweep direction next to the delimited output.

    ``base_path`` is the output stem; returns the paths written.
    """
    written: List[str] = []
    by_count = {}
    for r in rows:
        by_count.setdefault(r.patterns, []).append(r)
    groups = []
    for count, group in sorted(by_count.items()):
        group = sorted(group, key=lambda r: r.size)
        if len({r.size for r in group}) >= 2:
            label = f"n={count}" if len(by_count) > 1 else ""
            groups.append((label, [r.size for r in group], group))
    if groups:
        path = f"{base_path}_vs_size.png"
        _sweep_figure(groups, "transactions", path)
        written.append(path)

    by_size = {}
    for r in rows:
        by_size.setdefault(r.size, []).append(r)
    groups = []
    for size, group in sorted(by_size.items()):
        group = sorted(group, key=lambda r: r.patterns)
        if len({r.patterns for r in group}) >= 2:
            label = f"N={size}" if len(by_size) > 1 else ""
            groups.append((label, [r.patterns for r in group], group))
    if groups:
        path = f"{base_path}_vs_patterns.png"
        _sweep_figure(groups, "restrictive patterns", path)
        written.append(path)
    return written
