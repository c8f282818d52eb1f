"""Figure rendering for the command-line reports.

Each command gets one PNG next to its JSON/CSV output summarizing the same
numbers the checks pin down. Rendering is optional and never feeds back
into the reported values.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _check_bars(ax, report):
    names = [c.name for c in report.checks]
    values = [max(abs(c.value - c.reference), 1e-18) for c in report.checks]
    colors = ["#2a7e43" if c.passed else "#b03a2e" for c in report.checks]
    ax.barh(range(len(names)), values, color=colors)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=7)
    ax.set_xscale("log")
    ax.set_xlabel("|value - reference|")
    ax.invert_yaxis()


def _render_dims(report, artifacts, fig):
    table = artifacts["table"]
    ax = fig.subplots()
    ks = np.arange(len(table.dims))
    ax.bar(ks, table.dims, color="#33527a")
    ax.set_xlabel("degree k")
    ax.set_ylabel("d(k)")
    forms = " * ".join(f"({s})" for s in table.factor_strings()) or "1, 2, 2, ..."
    ax.set_title(f"harmonic space dimensions on S^{table.n}: {forms}")


def _render_roundtrip(report, artifacts, fig):
    results = artifacts["results"]
    left, right = fig.subplots(1, 2)
    for name, rec in results:
        left.scatter(rec.truth, rec.reconstructed, s=8, alpha=0.6, label=name)
        right.semilogy(
            np.maximum(np.abs(rec.truth - rec.reconstructed), 1e-18),
            lw=0.8, label=name,
        )
    lo = min(rec.truth.min() for _, rec in results)
    hi = max(rec.truth.max() for _, rec in results)
    left.plot([lo, hi], [lo, hi], "k--", lw=0.8)
    left.set_xlabel("truth")
    left.set_ylabel("reconstructed")
    left.legend(fontsize=6)
    right.set_xlabel("grid point")
    right.set_ylabel("abs error")


def _render_zonal(report, artifacts, fig):
    ax = fig.subplots()
    for k, ts, averaged, reference in artifacts["curves"]:
        order = np.argsort(ts)
        ax.plot(ts[order], reference[order], lw=0.8, color="#999999")
        ax.plot(ts[order], averaged[order], "o", ms=2, label=f"k={k}")
    ax.set_xlabel("t = x . y")
    ax.set_ylabel("zonal value")
    ax.legend(fontsize=6, ncol=2)
    ax.set_title("fiber averages (dots) on recurrence curves (grey)")


def _render_plancherel(report, artifacts, fig):
    ax = fig.subplots()
    a = np.array([p[1] for p in artifacts["pairs"]])
    b = np.array([p[2] for p in artifacts["pairs"]])
    ax.scatter(a, b, s=10, color="#33527a")
    lo, hi = min(a.min(), b.min()), max(a.max(), b.max())
    ax.plot([lo, hi], [lo, hi], "k--", lw=0.8)
    ax.set_xlabel("operator-form inversion")
    ax.set_ylabel("summed-form inversion")


def _render_series(report, artifacts, fig):
    ax = fig.subplots()
    for name, residuals in artifacts["ledger"]:
        ax.semilogy(np.maximum(residuals, 1e-18), marker="o", ms=3, label=name)
    ax.set_xlabel("series truncation degree")
    ax.set_ylabel("|fhat - partial sum|")
    ax.legend(fontsize=6)


def _render_forward(report, artifacts, fig):
    _check_bars(fig.subplots(), report)


_RENDERERS = {
    "dims": _render_dims,
    "forward": _render_forward,
    "roundtrip": _render_roundtrip,
    "zonal": _render_zonal,
    "plancherel": _render_plancherel,
    "series": _render_series,
}


def render(command, report, artifacts, path):
    """Write the PNG for one command's report; returns the path."""
    fig = plt.figure(figsize=(8, 4.5), constrained_layout=True)
    try:
        _RENDERERS[command](report, artifacts, fig)
        fig.savefig(path, dpi=150)
    finally:
        plt.close(fig)
    return path
