"""Figure rendering for the report path.

Everything draws into files through the Agg backend; nothing here opens
a window.  Each function takes already-computed report data, so the
plots cannot drift from the emitted numbers.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def render_newton_polygon(points, segments, path: str):
    """Coefficient valuation points and the lower hull.

    ``points`` is a list of (index, valuation) pairs with infinite
    valuations omitted; ``segments`` is the hull as a list of
    (x0, y0, x1, y1) tuples.
    """
    fig, ax = plt.subplots(figsize=(5, 4))
    xs = [float(i) for i, _ in points]
    ys = [float(v) for _, v in points]
    ax.scatter(xs, ys, zorder=3, label="coefficient valuations")
    for x0, y0, x1, y1 in segments:
        ax.plot([float(x0), float(x1)], [float(y0), float(y1)],
                color="tab:red", zorder=2)
    ax.set_xlabel("coefficient index")
    ax.set_ylabel("valuation")
    ax.set_title("Newton polygon")
    ax.legend(loc="best")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_scale_bars(exponents, path: str):
    """Per-prime scale exponents as a bar chart."""
    fig, ax = plt.subplots(figsize=(5, 4))
    primes = sorted(exponents)
    values = [exponents[p] for p in primes]
    ax.bar([str(p) for p in primes], values, color="tab:blue")
    ax.set_xlabel("prime")
    ax.set_ylabel("scale exponent")
    ax.set_title("factored scale")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def render_piece_dims(labels, dims, title: str, path: str):
    """Dimension counts of named pieces (contraction parts, tidy ranks)."""
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.bar(labels, dims, color="tab:green")
    ax.set_ylabel("dimension")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
