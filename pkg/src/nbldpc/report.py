"""Figure rendering for command-line reports.

Each function takes the in-memory result a command just wrote as CSV or
JSON and renders a PNG next to it.  Rendering is strictly additive: the
delimited output is the artifact of record and never depends on these
functions.
"""

from __future__ import annotations

from math import comb

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .bounds import BoundReport  # noqa: E402
from .channel import EnumerationResult, MonteCarloResult  # noqa: E402
from .channel import p_block_conditional  # noqa: E402

_FLOOR = 1e-16


def _conditional(count: float, n: int, nu: int) -> float:
    """Clamp a pattern-count bound to a conditional probability."""
    return max(min(count / comb(n, nu), 1.0), _FLOOR)


def render_bound_curves(report: BoundReport, path: str,
                        exact: EnumerationResult | None = None) -> None:
    """Plot the three ensemble bounds as conditional block-error curves.

    When an exhaustive enumeration for a specific labeled code is given,
    its exact conditional probabilities are overlaid as points.
    """
    n = report.n
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    curves = [
        ("new bound", report.new_bound, "o-"),
        ("spectral", report.spectral, "s--"),
        ("liva", report.liva, "d:"),
    ]
    for label, values, style in curves:
        ys = [_conditional(v, n, nu)
              for nu, v in zip(report.nu_values, values)]
        ax.semilogy(report.nu_values, ys, style, label=label, markersize=4)
    if exact is not None:
        nus = [nu for nu in report.nu_values if exact.covers(nu)]
        ys = [max(p_block_conditional(exact, nu), _FLOOR) for nu in nus]
        ax.semilogy(nus, ys, "k*", label="exhaustive", markersize=9)
    ax.set_xlabel("erasures $\\nu$")
    ax.set_ylabel("conditional block error probability")
    ax.set_title(f"n={n}, M={report.M}, J={report.J}, "
                 f"K={report.K}, q={report.q}")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_enumeration(res: EnumerationResult, path: str) -> None:
    """Plot exact conditional block-error probability against nu."""
    nus = [nu for nu in range(1, res.n + 1) if res.covers(nu)]
    exhaustive = [nu for nu in nus if not res.is_analytic(nu)]
    analytic = [nu for nu in nus if res.is_analytic(nu)]
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    ax.semilogy(exhaustive,
                [max(p_block_conditional(res, nu), _FLOOR)
                 for nu in exhaustive],
                "ko-", label="exhaustive", markersize=4)
    if analytic:
        ax.semilogy(analytic,
                    [p_block_conditional(res, nu) for nu in analytic],
                    "r^--", label="rank bound (all patterns fail)",
                    markersize=4)
    ax.set_xlabel("erasures $\\nu$")
    ax.set_ylabel("conditional block error probability")
    ax.set_title(f"[{res.n}, {res.n - res.r}] code, "
                 f"exhaustive to $\\nu\\leq{res.nu_max}$")
    ax.grid(True, which="both", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_simulation(results: dict[str, MonteCarloResult],
                      path: str) -> None:
    """Bar chart of mean operation counts for one or more decoders."""
    kinds = ("additions", "multiplications", "inversions", "total")
    labels = list(results)
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    width = 0.8 / len(kinds)
    for k, kind in enumerate(kinds):
        xs = [i + (k - (len(kinds) - 1) / 2) * width
              for i in range(len(labels))]
        ys = [results[name].mean_ops[kind] for name in labels]
        ax.bar(xs, ys, width=width, label=kind)
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels)
    ax.set_ylabel("mean operations per decoded word")
    parts = []
    for name in labels:
        r = results[name]
        where = (f"$\\delta$={r.delta}" if r.delta is not None
                 else f"$\\nu$={r.nu}")
        parts.append(f"{name}: {r.failures}/{r.trials} failures ({where})")
    ax.set_title("; ".join(parts), fontsize=9)
    ax.grid(True, axis="y", alpha=0.3)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
