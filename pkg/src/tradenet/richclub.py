"""Strength-ordered rich-club analysis.

The club at strength threshold s is the set of countries whose strength is
at least s.  Walking the thresholds through the sorted strength sequence
gives the curve of f_w (the fraction of world trade the club keeps among
its members) against the weakest member's fractional strength, and the
rich-club size at a trade threshold is the smallest such club whose
internal trade reaches that fraction of the total.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, ValidationError
from .graph import AnnualTradeNetwork
from .metrics import node_metrics


@dataclass(frozen=True)
class RichClubCurve:
    """Points are (s/s_max of the weakest member, f_w, club size), from the
    full node set down to the single strongest node."""

    points: list[tuple[float, float, int]]
    s_max: float


@dataclass(frozen=True)
class RichClubSeries:
    """(year, S_RC) entries, ordered by year."""

    entries: list[tuple[int, float]]


def rich_club_curve(net: AnnualTradeNetwork) -> RichClubCurve:
    """Compute f_w for every strength-threshold club.

    Nodes are ranked by ascending strength (ties by country code).  The
    internal trade of each suffix is accumulated from the strongest node
    downwards, adding each edge when its second endpoint joins; the first
    point (full set) is exactly 1 and the last (single node) exactly 0,
    and the sequence is non-increasing.
    """
    strength = {c: node_metrics(net, c, "total").s for c in net.nodes}
    seq = sorted(net.nodes, key=lambda c: (strength[c], c))
    s_max = strength[seq[-1]]
    suffix_internal = [0.0] * len(seq)
    internal = 0.0
    added = set()
    for i in range(len(seq) - 1, -1, -1):
        country = seq[i]
        for partner, ew in net.neighbors(country).items():
            if partner in added:
                internal += ew.w
        added.add(country)
        suffix_internal[i] = internal
    total = suffix_internal[0]
    points = [(strength[c] / s_max, suffix_internal[i] / total, len(seq) - i)
              for i, c in enumerate(seq)]
    return RichClubCurve(points=points, s_max=s_max)


def rich_club_size(curve: RichClubCurve, net: AnnualTradeNetwork,
                   threshold: float = 0.5) -> tuple[int, float]:
    """Smallest strength-ordered club whose internal trade is at least
    ``threshold`` of the total; returns (club size, club size / N)."""
    if not 0.0 < threshold < 1.0:
        raise DomainError("threshold must lie strictly between 0 and 1")
    club_size = net.n_nodes
    for _, f_w, size in curve.points:
        if f_w >= threshold:
            club_size = size
        else:
            break
    return club_size, club_size / net.n_nodes


def rich_club_series(nets, threshold: float = 0.5) -> RichClubSeries:
    """Fractional rich-club size per year over a panel of networks."""
    nets = list(nets)
    years = [net.year for net in nets]
    if len(set(years)) != len(years):
        raise ValidationError("duplicate years in rich-club series input")
    entries = []
    for net in sorted(nets, key=lambda n: n.year):
        _, s_rc = rich_club_size(rich_club_curve(net), net, threshold)
        entries.append((net.year, s_rc))
    return RichClubSeries(entries=entries)
