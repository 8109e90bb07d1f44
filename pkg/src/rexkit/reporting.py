"""Figure rendering for experiment reports.

The distinguishing experiment's primary artifact is the key=value text block;
these helpers optionally render companion figures (validation error
distributions and verdict rates) to PNG files next to it.  matplotlib is
imported lazily so the library works without a plotting backend.
"""

from __future__ import annotations

import os

from .harness import ExperimentResult, decision_threshold

__all__ = ["save_experiment_figures"]


def save_experiment_figures(result: ExperimentResult,
                            directory: str) -> list[str]:
    """Write the experiment figures into ``directory`` and return the paths:
    a histogram of per-trial validation errors for both challenge modes with
    the decision threshold marked, and a bar chart of verdict-1 rates."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(directory, exist_ok=True)
    threshold = float(decision_threshold(result.cfg))
    pseudo = [float(r.pseudo_error) for r in result.records]
    randoms = [float(r.random_error) for r in result.records]
    paths = []

    fig, ax = plt.subplots(figsize=(6.0, 3.6))
    bins = [i / 40 for i in range(41)]
    ax.hist(pseudo, bins=bins, alpha=0.6, label="pseudorandom", color="#1f77b4")
    ax.hist(randoms, bins=bins, alpha=0.6, label="random", color="#d62728")
    ax.axvline(threshold, color="black", linestyle="--", linewidth=1,
               label=f"threshold {threshold:.3f}")
    ax.set_xlabel("validation error")
    ax.set_ylabel("trials")
    ax.set_title(f"{result.learner}: validation error by challenge mode")
    ax.legend()
    fig.tight_layout()
    path = os.path.join(directory, "validation_errors.png")
    fig.savefig(path, metadata={"Software": "rexkit"})
    plt.close(fig)
    paths.append(path)

    fig, ax = plt.subplots(figsize=(4.2, 3.6))
    rates = [result.ones_pseudo / result.trials,
             result.ones_random / result.trials]
    ax.bar(["pseudorandom", "random"], rates, color=["#1f77b4", "#d62728"])
    ax.set_ylim(0, 1)
    ax.set_ylabel("fraction of trials answered 1")
    ax.set_title(f"{result.learner}: advantage "
                 f"{float(result.advantage):+.3f}")
    fig.tight_layout()
    path = os.path.join(directory, "verdict_rates.png")
    fig.savefig(path, metadata={"Software": "rexkit"})
    plt.close(fig)
    paths.append(path)
    return paths
