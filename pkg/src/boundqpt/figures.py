"""Static figure rendering for scan reports.

PNG output is kept byte-deterministic: fixed size, fixed dpi, and the
encoder's date chunk suppressed, so repeated runs with identical flags
produce identical files.
"""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

_SAVE = dict(dpi=120, metadata={"Date": None})


def _new_axes(xlabel, ylabel):
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    ax.grid(True, alpha=0.3)
    return fig, ax


def render_scan_figures(records, out_path: str):
    """Write fidelity, susceptibility, and measure curves next to out_path.

    Returns the list of files written.
    """
    stem = os.path.splitext(out_path)[0]
    a = [r.a for r in records]
    written = []

    fig, ax = _new_axes("a", "F")
    ax.plot(a, [r.F for r in records], lw=1.2)
    path = f"{stem}_fidelity.png"
    fig.savefig(path, **_SAVE)
    plt.close(fig)
    written.append(path)

    fig, ax = _new_axes("a", "|S|/N")
    ax.plot(a, [r.S_over_N for r in records], lw=1.2, color="tab:red")
    path = f"{stem}_susceptibility.png"
    fig.savefig(path, **_SAVE)
    plt.close(fig)
    written.append(path)

    fig, ax = _new_axes("a", "measure")
    ax.plot(a, [r.negativity for r in records], lw=1.2, label="negativity")
    ax.plot(a, [r.n_r for r in records], lw=1.2, label="realignment")
    ax.plot(a, [r.n_sr for r in records], lw=1.2, label="shifted realignment")
    ax.legend(loc="best")
    path = f"{stem}_measures.png"
    fig.savefig(path, **_SAVE)
    plt.close(fig)
    written.append(path)

    return written
