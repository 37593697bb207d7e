"""Render heatmap, constraint-series, and log-log indicator figures."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import FigureInputError
from .io import read_constraints_csv, read_field_csv, read_sweep_csv

__all__ = [
    "render_heatmap",
    "render_series",
    "render_loglog",
    "loglog_figure",
    "save_figure",
]

# PNG text chunks that would otherwise record the library version; pinned so
# re-rendering the same inputs yields the same bytes.
_PNG_METADATA = {"Software": "nls-figures"}


def save_figure(fig, output):
    fig.savefig(output, dpi=120, metadata=_PNG_METADATA)
    plt.close(fig)


def render_heatmap(inputs, output, vmin=None, vmax=None):
    """One panel per field CSV, sharing a row; axes from the grid header."""
    fields = [read_field_csv(p) for p in inputs]
    fig, axes = plt.subplots(
        1, len(fields), figsize=(4.6 * len(fields), 4.0), squeeze=False
    )
    for ax, field in zip(axes[0], fields):
        lo = field.values.min() if vmin is None else vmin
        hi = field.values.max() if vmax is None else vmax
        if lo == hi:  # constant field: widen to a non-degenerate color range
            lo, hi = lo - 0.5, hi + 0.5
        im = ax.imshow(
            field.values,
            origin="lower",
            extent=(0.0, field.L, 0.0, field.L),
            vmin=lo,
            vmax=hi,
            cmap="viridis",
        )
        ax.set_title(f"{field.name} at t={field.t:g}")
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        fig.colorbar(im, ax=ax, fraction=0.046)
    fig.tight_layout()
    save_figure(fig, output)


def render_series(inputs, output):
    """Three panels (J1, J2, J3x+J3y) with one curve per eps."""
    series = sorted((read_constraints_csv(p) for p in inputs), key=lambda s: s.eps)
    fig, axes = plt.subplots(1, 3, figsize=(13.5, 4.0))
    panels = (
        ("mass ratio J1", lambda s: s.j1),
        ("energy ratio J2", lambda s: s.j2),
        ("momentum ratio J3x + J3y", lambda s: s.j3x + s.j3y),
    )
    for ax, (title, pick) in zip(axes, panels):
        for s in series:
            ax.plot(s.t, pick(s), label=f"eps={s.eps:g}")
        ax.set_title(title)
        ax.set_xlabel("t")
        ax.grid(True, alpha=0.3)
    axes[0].legend()
    fig.suptitle(f"constraint evolution ({series[0].case})")
    fig.tight_layout()
    save_figure(fig, output)


def render_loglog(inputs, output):
    """Indicator-vs-eps lines; the slope annotation repeats the CSV footer."""
    if len(inputs) != 1:
        raise FigureInputError(inputs[0] if inputs else "<none>",
                               "loglog takes exactly one sweep CSV")
    save_figure(loglog_figure(read_sweep_csv(inputs[0])), output)


def loglog_figure(sweep):
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    ax.loglog(sweep.eps, sweep.indicator_l1, "o-", label="L1 indicator")
    ax.loglog(sweep.eps, sweep.indicator_l2, "s-", label="L2 indicator")
    ax.set_xlabel("eps")
    ax.set_ylabel("distance to eps=0 reference")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    ax.set_title(
        f"slope_l1={sweep.slope_l1_text} slope_l2={sweep.slope_l2_text}"
    )
    fig.tight_layout()
    return fig
