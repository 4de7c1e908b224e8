"""Bar charts of score reports, written straight to image files."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .scorer import ScoreReport  # noqa: E402

_LABELS = ("Lab. P", "Lab. R", "Lab. F1", "Unlab. P", "Unlab. R", "Unlab. F1")


def plot_scores(reports, path, title=None, width=8.0):
    """Grouped bars of the six metrics, one group per system.

    ``reports`` maps a system name to its ScoreReport (a bare report is
    plotted under the name "system"). The file type follows the suffix of
    ``path``.
    """
    if isinstance(reports, ScoreReport):
        reports = {"system": reports}
    names = list(reports)
    golden = (np.sqrt(5) - 1) / 2
    fig, ax = plt.subplots(figsize=(width, width * golden))
    x = np.arange(len(_LABELS))
    bar = 0.8 / max(len(names), 1)
    for k, name in enumerate(names):
        values = [100 * getattr(reports[name], m) for m in ScoreReport.METRICS]
        bars = ax.bar(x + (k - (len(names) - 1) / 2) * bar, values, bar, label=name)
        ax.bar_label(bars, fmt="%.1f", fontsize=7, padding=2)
    ax.set_xticks(x)
    ax.set_xticklabels(_LABELS)
    ax.set_ylim(0, 110)
    ax.set_ylabel("%")
    if title:
        ax.set_title(title)
    if len(names) > 1:
        ax.legend(frameon=False, fontsize=8)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
