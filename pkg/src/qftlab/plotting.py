"""Matplotlib figures for experiment reports and leakage scans."""

from __future__ import annotations

import io
import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

golden_mean = (math.sqrt(5) - 1.0) / 2.0
fig_width = 6.4

params = {
    "axes.labelsize": 10,
    "font.size": 9,
    "font.family": "sans-serif",
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "legend.fontsize": 8,
    "figure.figsize": [fig_width, fig_width * golden_mean],
    "figure.dpi": 100,
    "savefig.dpi": 150,
    "lines.linewidth": 1,
    "axes.spines.top": False,
}


def _save(fig, path=None) -> bytes:
    buf = io.BytesIO()
    fig.savefig(buf, format="png", bbox_inches="tight", metadata={"Software": None})
    plt.close(fig)
    data = buf.getvalue()
    if path is not None:
        with open(path, "wb") as fh:
            fh.write(data)
    return data


def plot_histogram(report, path=None) -> bytes:
    """Bar chart of outcome probabilities, binary labels on the x axis."""
    dist = report.distribution
    N = dist.probs.size
    with plt.rc_context(params):
        fig, ax = plt.subplots()
        ax.bar(np.arange(N), dist.probs, color="#2b8cbe", width=0.8)
        if N <= 32:
            ax.set_xticks(np.arange(N))
            ax.set_xticklabels([dist.label(m) for m in range(N)], rotation=60)
        ax.set_xlabel("measured outcome")
        ax.set_ylabel("probability")
        ax.set_ylim(0, max(1e-12, float(dist.probs.max())) * 1.08)
        ax.set_title(f"{report.config.label}: {report.config.signal.to_text()}")
        return _save(fig, path)


def plot_leakage(rows, path=None) -> bytes:
    """Discrete |X_jk| / sqrt(N), continuous |integral| and its bound against nu."""
    nu = np.array([r.nu for r in rows])
    with plt.rc_context(params):
        fig, ax = plt.subplots()
        ax.plot(nu, [r.integral_magnitude for r in rows], label="|integral|")
        ax.plot(nu, [r.bound for r in rows], "--", label="|a| t_jk")
        ax2 = ax.twinx()
        ax2.plot(nu, [r.magnitude for r in rows], color="C3", label="|X_jk|")
        ax2.set_ylabel("|X_jk|")
        ax.set_xlabel("signal frequency nu")
        ax.set_ylabel("continuous magnitude")
        h1, l1 = ax.get_legend_handles_labels()
        h2, l2 = ax2.get_legend_handles_labels()
        ax.legend(h1 + h2, l1 + l2, loc="upper right")
        return _save(fig, path)
