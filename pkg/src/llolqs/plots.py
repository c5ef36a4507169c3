"""Figures rendered next to the CSV outputs.

Everything uses the Agg backend and writes PNG files; nothing opens a window.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .game import GameTrace, SweepCell


def render_trace_figure(trace: GameTrace, path: str | Path) -> Path:
    """Per-round losses, cumulative loss, and the progress measure pi."""
    path = Path(path)
    ts = [r.t for r in trace.rounds]
    losses = [r.loss for r in trace.rounds]
    cum = np.cumsum(losses)
    pis = [r.pi for r in trace.rounds]
    gains = [r.gain for r in trace.rounds]
    misses = [r.miss for r in trace.rounds]

    fig, axes = plt.subplots(3, 1, figsize=(7.0, 8.5), sharex=True)
    axes[0].plot(ts, losses, marker=".", lw=1.0, label="per-round loss")
    axes[0].set_ylabel("loss")
    axes[0].legend(loc="best", fontsize=8)
    axes[0].set_title(
        f"{trace.learner} vs {trace.reality}  (d={trace.d}, T={trace.T}, "
        f"lambda={trace.lam:g}, mu={trace.mu:g}, seed={trace.seed})"
    )
    ax1 = axes[1]
    ax1.plot(ts, cum, lw=1.2, label="cumulative loss")
    if np.isfinite(trace.hindsight_value):
        ax1.axhline(trace.hindsight_value, color="tab:red", ls="--", lw=1.0,
                    label=f"hindsight optimum ({trace.hindsight_value:.3f})")
    ax1.set_ylabel("cumulative loss")
    ax1.legend(loc="best", fontsize=8)
    ax2 = axes[2]
    ax2.semilogy(ts, pis, marker=".", lw=1.0, label="pi")
    ax2.axhline(1.0 / (trace.lam + 1.0), color="tab:red", ls="--", lw=1.0,
                label="1/(lambda+1) bound")
    ax2.semilogy(ts, np.abs(gains), lw=0.8, alpha=0.7, label="|gain|")
    finite_miss = [m if np.isfinite(m) else np.nan for m in misses]
    ax2.semilogy(ts, np.abs(finite_miss), lw=0.8, alpha=0.7, label="|miss|")
    ax2.set_xlabel("round")
    ax2.set_ylabel("certificates")
    ax2.legend(loc="best", fontsize=8)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_sweep_figure(cells: list[SweepCell], path: str | Path) -> Path:
    """Mean regret vs T per (d, learner), plus the normalized ratio panel."""
    path = Path(path)
    groups: dict[tuple[int, str, str], dict[int, list[float]]] = {}
    for c in cells:
        groups.setdefault((c.d, c.learner, c.reality), {}).setdefault(c.T, []).append(c.regret)

    fig, (ax_r, ax_n) = plt.subplots(1, 2, figsize=(10.0, 4.2))
    for (d, learner, reality), by_T in sorted(groups.items()):
        Ts = sorted(by_T)
        means = [float(np.mean(by_T[T])) for T in Ts]
        label = f"d={d} {learner} ({reality})"
        ax_r.plot(Ts, means, marker="o", label=label)
        ax_n.plot(Ts, [m / (d * d * np.log(d + T)) for m, T in zip(means, Ts)],
                  marker="o", label=label)
    ax_r.set_xscale("log")
    ax_r.set_xlabel("T")
    ax_r.set_ylabel("mean regret")
    ax_r.set_title("regret growth")
    ax_r.legend(fontsize=8)
    ax_n.set_xscale("log")
    ax_n.set_xlabel("T")
    ax_n.set_ylabel("regret / (d^2 log(d+T))")
    ax_n.set_title("normalized by the target rate")
    ax_n.legend(fontsize=8)
    fig.tight_layout()
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
