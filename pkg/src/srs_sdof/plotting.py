"""Static SVG line charts from a results CSV."""

from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

__all__ = ("plot_results",)

_STYLE = {"SRS": "-", "ZF": "--", "UB": ":"}


def _curves(rows):
    """Group rows into curves keyed by (scheme, alpha); x is K when present, else M/N."""
    curves = defaultdict(list)
    by_k = any(r.K is not None for r in rows)
    for r in rows:
        x = r.K if by_k else r.M / r.N
        curves[(r.scheme, r.alpha)].append((x, r.formula, r.slope))
    for pts in curves.values():
        pts.sort()
    return by_k, dict(sorted(curves.items()))


def plot_results(rows, out_path, title=None):
    """Write one curve per (scheme, alpha) to `out_path` as standalone SVG.

    Formula values are drawn as lines; measured slopes, when present, as
    markers in the same color. Returns the number of curves drawn.
    """
    if not rows:
        raise ValueError("no result rows to plot")
    by_k, curves = _curves(rows)
    plt.rcParams["svg.hashsalt"] = "srs-sdof"
    plt.rcParams["svg.fonttype"] = "path"
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for n, ((scheme, alpha), pts) in enumerate(curves.items()):
        xs = [p[0] for p in pts]
        color = f"C{n % 10}"
        ax.plot(
            xs, [p[1] for p in pts], _STYLE.get(scheme, "-."), color=color,
            marker="o" if by_k else None, label=f"{scheme}, α={alpha:g}",
        )
        meas = [(p[0], p[2]) for p in pts if p[2] is not None]
        if meas:
            ax.plot(*zip(*meas), "x", color=color, markersize=7)
    ax.set_xlabel("number of receivers K" if by_k else "M/N")
    ax.set_ylabel("sum-SDoF")
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=7, ncol=2)
    fig.tight_layout()
    fig.savefig(out_path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return len(curves)
