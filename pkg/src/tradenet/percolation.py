"""Weight-ordered link insertion and giant-component growth.

Starting from all nodes isolated, links are inserted one at a time in
descending (or ascending) weight order, ties broken by canonical pair
order, and the fractional size of the largest component is recorded after
every insertion.  Component tracking uses a disjoint-set forest.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, InsufficientDataError
from .graph import AnnualTradeNetwork
from .distributions import linear_fit

ORDERS = ("descending", "ascending")


class UnionFind:
    """Disjoint sets over range(n) with union by size and path compression."""

    def __init__(self, n: int):
        self._parent = list(range(n))
        self._size = [1] * n

    def find(self, x: int) -> int:
        parent = self._parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> int:
        """Merge the sets of a and b; returns the resulting set size."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return self._size[ra]
        if self._size[ra] < self._size[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        self._size[ra] += self._size[rb]
        return self._size[ra]

    def size(self, x: int) -> int:
        return self._size[self.find(x)]


@dataclass(frozen=True)
class PercolationCurve:
    """(f, S_g/N) trajectory of ordered link insertion."""

    order: str
    points: list[tuple[float, float]]


@dataclass(frozen=True)
class ExponentialFit:
    """Decay rate of 1 - S_g/N against f on a semi-log scale."""

    rate: float
    fit_range: tuple[float, float]
    r_squared: float


def percolate(net: AnnualTradeNetwork, order: str = "descending") -> PercolationCurve:
    """Insert links in weight order and track the giant component.

    Records (fraction of links inserted, giant fraction) after every
    insertion; the curve is deterministic because weight ties break on the
    canonical pair order.
    """
    if order not in ORDERS:
        raise DomainError(f"unknown order {order!r}; expected one of {ORDERS}")
    if order == "descending":
        ranked = sorted(net.edges.items(), key=lambda item: (-item[1].w, item[0]))
    else:
        ranked = sorted(net.edges.items(), key=lambda item: (item[1].w, item[0]))
    index = {c: i for i, c in enumerate(net.nodes)}
    uf = UnionFind(net.n_nodes)
    n = net.n_nodes
    n_links = net.n_links
    giant = 1
    points = []
    for m, ((a, b), _) in enumerate(ranked, start=1):
        merged = uf.union(index[a], index[b])
        if merged > giant:
            giant = merged
        points.append((m / n_links, giant / n))
    return PercolationCurve(order=order, points=points)


def fit_exponential_approach(curve: PercolationCurve,
                             fit_range: tuple[float, float]) -> ExponentialFit:
    """Fit ``1 - S_g/N ~ exp(-rate * f)`` over in-range points.

    Uses least squares on (f, ln(1 - S_g/N)); points already at the fully
    connected value are excluded because the gap is zero there.
    """
    f_lo, f_hi = fit_range
    if not (f_lo < f_hi):
        raise DomainError("fit range must satisfy f_lo < f_hi")
    xs = []
    ys = []
    for f, giant_fraction in curve.points:
        if f_lo <= f <= f_hi and giant_fraction < 1.0:
            xs.append(f)
            ys.append(math.log(1.0 - giant_fraction))
    if len(xs) < 3:
        raise InsufficientDataError(
            f"only {len(xs)} usable points inside ({f_lo:g}, {f_hi:g}); need 3")
    slope, _, _, r_squared = linear_fit(xs, ys)
    return ExponentialFit(rate=-slope, fit_range=(f_lo, f_hi), r_squared=r_squared)
