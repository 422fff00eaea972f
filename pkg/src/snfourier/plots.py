"""Matplotlib figures rendered alongside the delimited report output.

Figures are written to files only (Agg backend); nothing here opens a window.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_structure_figure(report: dict, path: str) -> None:
    """Bar chart of coefficient norms by partition, with numeric ranks annotated.

    Expects the dict form of a structure report extended with a
    ``coefficient_norms`` map (partition string -> norm).
    """
    norms = report["coefficient_norms"]
    labels = list(norms)
    values = np.array([norms[k] for k in labels])
    ranks = report.get("ranks", {})
    fig, ax = plt.subplots(figsize=(1.2 * max(6, len(labels)), 4))
    bars = ax.bar(range(len(labels)), values, color="steelblue")
    floor = max(values.max(), 1.0) * 1e-18
    ax.set_yscale("log")
    ax.set_ylim(bottom=max(values[values > 0].min() / 10 if np.any(values > 0) else floor, floor))
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.set_ylabel("coefficient norm")
    ax.set_title(f"{report['kind']} coefficient structure, n={report['n']}")
    for bar, label in zip(bars, labels):
        if label in ranks:
            ax.annotate(
                f"rank {ranks[label]}",
                (bar.get_x() + bar.get_width() / 2, bar.get_height()),
                ha="center",
                va="bottom",
                fontsize=8,
            )
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_pattern_figure(pattern_counts: dict[str, int], path: str) -> None:
    """Bar chart of signature-pattern frequencies from a sampling experiment."""
    labels = sorted(pattern_counts, key=pattern_counts.get, reverse=True)
    values = [pattern_counts[k] for k in labels]
    fig, ax = plt.subplots(figsize=(max(6, 0.8 * len(labels)), 4))
    ax.bar(range(len(labels)), values, color="darkorange")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=45, ha="right", family="monospace", fontsize=8)
    ax.set_ylabel("observed count")
    ax.set_title("signature pattern frequencies")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def ensure_plot_dir(path: str) -> str:
    os.makedirs(path, exist_ok=True)
    return path
