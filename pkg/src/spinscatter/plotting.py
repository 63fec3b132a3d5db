"""Matplotlib rendering of sweep tables, written next to the CSV output."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLES = [
    dict(color="tab:red", linestyle="-"),
    dict(color="tab:blue", linestyle="--"),
    dict(color="tab:green", linestyle="-."),
    dict(color="tab:purple", linestyle=":"),
]

YLABELS = {
    "T": "Transmission probability",
    "R": "Reflection probability",
    "neg_total": "Negativity",
    "neg_T": "Negativity (transmitted)",
    "neg_R": "Negativity (reflected)",
}

# preset -> (quantity, panel key, legend key)
FIGURE_LAYOUT = {
    "fig4": ("T", "m", "initial"),
    "fig5": ("T", "m", "initial"),
    "fig6": ("T", None, "model"),
    "fig7": ("neg_total", "m", "model"),
    "fig8": ("neg_total", None, "u_prime"),
}


def _setup_axis(ax, quantity):
    ax.set_xlabel(r"$k_0$")
    ax.set_ylabel(YLABELS.get(quantity, quantity))
    ax.set_xlim(0, 3.1416)
    ax.tick_params(direction="in", top=True, right=True)


def plot_table(table, path, quantities=("T", "neg_total"), title=None):
    """One panel per quantity against k0; saved to ``path``."""
    fig, axes = plt.subplots(1, len(quantities), figsize=(4.5 * len(quantities), 3.6), squeeze=False)
    for ax, q in zip(axes[0], quantities):
        ax.plot(table.k0, getattr(table, q), **STYLES[0])
        _setup_axis(ax, q)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=150)
    plt.close(fig)


def plot_figure(preset, results, path):
    """Render a preset's curves in its panel layout.

    ``results`` maps curve name to ``(config, table)``.
    """
    quantity, panel_key, legend_key = FIGURE_LAYOUT[preset]
    panels = {}
    for name, (cfg, table) in results.items():
        key = getattr(cfg, panel_key) if panel_key else None
        panels.setdefault(key, []).append((cfg, table))

    fig, axes = plt.subplots(1, len(panels), figsize=(4.5 * len(panels), 3.6), squeeze=False)
    for ax, (key, curves) in zip(axes[0], panels.items()):
        for style, (cfg, table) in zip(STYLES, curves):
            label = getattr(cfg, legend_key)
            if legend_key == "u_prime":
                label = f"U'={label:g}"
            ax.plot(table.k0, getattr(table, quantity), label=str(label), **style)
        _setup_axis(ax, quantity)
        if panel_key:
            ax.set_title(f"{panel_key}={key}")
        ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(Path(path), dpi=150)
    plt.close(fig)
