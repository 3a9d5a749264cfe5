"""Per-node degree, strength and disparity, and disparity-vs-degree scaling.

Every node carries three partner counts: the full degree k and the export
and import degrees, which count partners with a strictly positive flow in
that direction.  Strength is the sum of the selected flow's weights and the
disparity Y is the sum of squared weight shares, so Y ranges from 1/k
(evenly spread trade) to 1 (one dominant partner).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .distributions import geometric_edges, linear_fit
from .errors import DomainError, InsufficientDataError
from .graph import AnnualTradeNetwork

FLOWS = ("total", "export", "import")


@dataclass(frozen=True)
class NodeMetrics:
    """Degrees, strength and disparity of one node.

    ``k``, ``k_exp`` and ``k_imp`` are always the total/export/import
    partner counts.  ``s`` and ``Y`` refer to the flow kind the metrics
    were computed for; ``Y`` is None when that flow has zero strength
    (degenerate node).
    """

    k: int
    k_exp: int
    k_imp: int
    s: float
    Y: float | None


@dataclass(frozen=True)
class LogBinSpec:
    """Logarithmic degree binning: bin count per decade and the minimum
    occupancy a bin needs to enter the exponent regression."""

    bins_per_decade: int = 8
    min_count: int = 3


@dataclass(frozen=True)
class DisparityCurve:
    """Binned mean of k*Y(k) against degree with its log-log slope."""

    points: list[tuple[float, float, int]]
    exponent: float
    exponent_stderr: float
    flow: str


def directed_weights(country: str, partner: str, ew) -> tuple[float, float]:
    """(outgoing, incoming) flow weights of ``country`` along one edge.

    Canonical edges store w_exp as the flow from the smaller country code.
    """
    if country < partner:
        return ew.w_exp, ew.w_imp
    return ew.w_imp, ew.w_exp


def node_metrics(net: AnnualTradeNetwork, country: str, flow: str = "total") -> NodeMetrics:
    """Compute degrees, strength and disparity for one node.

    Degree and strength for the selected flow count only partners with a
    strictly positive weight of that kind.
    """
    if flow not in FLOWS:
        raise DomainError(f"unknown flow kind {flow!r}; expected one of {FLOWS}")
    neigh = net.neighbors(country)
    k = len(neigh)
    k_exp = 0
    k_imp = 0
    selected = []
    for partner, ew in neigh.items():
        out, inc = directed_weights(country, partner, ew)
        if out > 0.0:
            k_exp += 1
        if inc > 0.0:
            k_imp += 1
        if flow == "total":
            w_sel = ew.w
        elif flow == "export":
            w_sel = out
        else:
            w_sel = inc
        if w_sel > 0.0:
            selected.append(w_sel)
    s = sum(selected)
    y = sum((w / s) ** 2 for w in selected) if s > 0.0 else None
    return NodeMetrics(k=k, k_exp=k_exp, k_imp=k_imp, s=s, Y=y)


def all_node_metrics(net: AnnualTradeNetwork, flow: str = "total") -> dict[str, NodeMetrics]:
    """node_metrics for every node, keyed by country code."""
    return {c: node_metrics(net, c, flow) for c in net.nodes}


def disparity_samples(net: AnnualTradeNetwork, flow: str = "total") -> list[tuple[int, float]]:
    """(degree, k*Y) samples for the selected flow, one per non-degenerate node."""
    samples = []
    for country in net.nodes:
        nm = node_metrics(net, country, flow)
        if nm.Y is None:
            continue
        k_kind = {"total": nm.k, "export": nm.k_exp, "import": nm.k_imp}[flow]
        samples.append((k_kind, k_kind * nm.Y))
    return samples


def disparity_curve(nets, flow: str = "total",
                    binning: LogBinSpec = LogBinSpec()) -> DisparityCurve:
    """Pool (k, kY) samples over networks, log-bin by degree and fit the
    slope of log(mean kY) against log(bin center).

    Points cover every occupied bin; the regression uses only bins with at
    least ``binning.min_count`` samples.
    """
    if flow not in FLOWS:
        raise DomainError(f"unknown flow kind {flow!r}; expected one of {FLOWS}")
    if binning.bins_per_decade < 1 or binning.min_count < 1:
        raise DomainError("invalid bin spec")
    samples = [s for net in nets for s in disparity_samples(net, flow)]
    if not samples:
        raise InsufficientDataError("no disparity samples in the given networks")
    ks = np.array([k for k, _ in samples], dtype=float)
    kys = np.array([ky for _, ky in samples])
    edges = geometric_edges(float(ks.min()), float(ks.max()), binning.bins_per_decade)
    idx = np.searchsorted(edges, ks, side="right") - 1
    counts = np.bincount(idx, minlength=len(edges) - 1)
    sums = np.bincount(idx, weights=kys, minlength=len(edges) - 1)
    centers = np.sqrt(edges[:-1] * edges[1:])
    occupied = counts > 0
    if int(occupied.sum()) < 3:
        raise InsufficientDataError(
            f"only {int(occupied.sum())} occupied degree bins; need 3")
    points = [(float(c), float(s / n), int(n))
              for c, s, n in zip(centers[occupied], sums[occupied], counts[occupied])]
    eligible = [(c, m) for c, m, n in points if n >= binning.min_count]
    if len(eligible) < 3:
        raise InsufficientDataError(
            f"only {len(eligible)} bins with >= {binning.min_count} samples; need 3")
    slope, _, stderr, _ = linear_fit(np.log([c for c, _ in eligible]),
                                     np.log([m for _, m in eligible]))
    return DisparityCurve(points=points, exponent=slope,
                          exponent_stderr=stderr, flow=flow)
