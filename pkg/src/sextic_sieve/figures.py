"""Matplotlib renderings of the bench ladder and the bound audit."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

matplotlib.rcParams["savefig.dpi"] = 120

_COLORS = {"wheel6": "#1f77b4", "eratosthenes": "#d62728"}


def _figure(width=7.0, height=None):
    golden = (math.sqrt(5) - 1.0) / 2.0
    fig, ax = plt.subplots(figsize=(width, height or width * golden))
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    return fig, ax


def plot_bench(comparisons, path):
    """Mark writes per algorithm against the upper end of each range."""
    fig, ax = _figure()
    his = [c.range.hi for c in comparisons]
    for name, pick in (("wheel6", lambda c: c.wheel),
                       ("eratosthenes", lambda c: c.eratosthenes)):
        ax.plot(his, [pick(c).mark_operations for c in comparisons], "o-",
                color=_COLORS[name], label=name)
    if len(his) > 1:
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.set_xlabel("upper end of range")
    ax.set_ylabel("mark operations")
    ax.legend(frameon=False)
    for c in comparisons:
        if c.ratio is not None:
            ax.annotate(f"{c.ratio:.3f}", (c.range.hi, c.wheel.mark_operations),
                        textcoords="offset points", xytext=(4, -12), fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_audit(rows, path):
    """Smallest witness i against N for every N the small-i scan misses."""
    fig, ax = _figure()
    ns = [r.N for r in rows]
    ax.scatter(ns, [r.sound_witness.i for r in rows], s=10, label="smallest witness i")
    ax.scatter(ns, [r.literal_i_range for r in rows], s=6, marker="_",
               color="gray", label="small-i reach, (N-2)//6")
    for r in rows:
        if r.N == 6:
            ax.annotate(f"N=6: {r.P} = {r.sound_witness.cofactor}*{r.sound_witness.divisor}",
                        (r.N, r.sound_witness.i), textcoords="offset points",
                        xytext=(6, 6), fontsize=8)
    ax.set_xlabel("N")
    ax.set_ylabel("i")
    ax.legend(frameon=False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
