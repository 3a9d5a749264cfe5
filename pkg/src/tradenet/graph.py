"""Symmetrized annual trade networks and whole-network summary statistics.

Each unordered country pair (a, b) with a < b carries an export weight
(the averaged reports of the flow a -> b), an import weight (the averaged
reports of the flow b -> a), and their sum as the undirected link weight.
Weights are million USD stored as 64-bit floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (DomainError, EmptyNetworkError, NodeNotFoundError,
                     ParseError, ValidationError)
from .ingest import PairedFlows

MISSING_FLOW_POLICIES = ("zero", "copy")

SNAPSHOT_FORMAT = "trade-network-snapshot"
SNAPSHOT_VERSION = 1


@dataclass(frozen=True)
class EdgeWeights:
    """Link weights of one edge; ``w`` is always ``w_exp + w_imp``."""

    w_exp: float
    w_imp: float
    w: float


@dataclass(frozen=True)
class NetworkSummary:
    year: int
    n_nodes: int
    n_links: int
    rho: float
    total_trade: float
    mean_weight: float
    max_weight: float
    max_weight_share: float


def symmetrize(pf: PairedFlows, missing: str = "zero") -> EdgeWeights | None:
    """Average the two reports of each directed flow into link weights.

    The export weight along (a, b) averages a's reported export to b with
    b's reported import from a; the import weight averages the two reports
    of the opposite flow.  Under the default ``zero`` policy a missing
    report enters the average as 0, so a one-sided report is halved; under
    ``copy`` the present report stands in for the missing one.  Returns
    None when both weights come out zero (no edge).
    """
    if missing not in MISSING_FLOW_POLICIES:
        raise DomainError(
            f"unknown missing-flow policy {missing!r}; expected one of {MISSING_FLOW_POLICIES}")
    w_exp = _average_flow(pf.exp_ab, pf.imp_ba, missing)
    w_imp = _average_flow(pf.exp_ba, pf.imp_ab, missing)
    w = w_exp + w_imp
    if w == 0.0:
        return None
    return EdgeWeights(w_exp, w_imp, w)


def _average_flow(reported, mirrored, policy) -> float:
    if policy == "zero":
        return ((reported or 0.0) + (mirrored or 0.0)) / 2.0
    present = [v for v in (reported, mirrored) if v]
    if not present:
        return 0.0
    return sum(present) / len(present)


class AnnualTradeNetwork:
    """Immutable weighted undirected network for one year.

    ``edges`` maps canonical (a, b) pairs with a < b to EdgeWeights, in
    sorted key order; ``nodes`` is the sorted tuple of edge endpoints, so
    every node has degree >= 1.  Instances are treated as read-only.
    """

    __slots__ = ("year", "nodes", "edges", "_adj")

    def __init__(self, year: int, edges: Mapping[tuple[str, str], EdgeWeights]):
        if not edges:
            raise EmptyNetworkError(f"no edges for year {year}")
        canonical: dict[tuple[str, str], EdgeWeights] = {}
        adj: dict[str, dict[str, EdgeWeights]] = {}
        for (a, b), ew in sorted(edges.items()):
            if not a or not b or a >= b:
                raise ValidationError(f"edge key ({a!r}, {b!r}) is not a canonical pair")
            if not ew.w > 0.0:
                raise ValidationError(f"edge ({a}, {b}) has non-positive total weight")
            if ew.w_exp < 0.0 or ew.w_imp < 0.0:
                raise ValidationError(f"edge ({a}, {b}) has a negative flow weight")
            canonical[(a, b)] = ew
            adj.setdefault(a, {})[b] = ew
            adj.setdefault(b, {})[a] = ew
        self.year = year
        self.edges = canonical
        self.nodes = tuple(sorted(adj))
        self._adj = {c: dict(sorted(neigh.items())) for c, neigh in adj.items()}

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_links(self) -> int:
        return len(self.edges)

    def neighbors(self, country: str) -> dict[str, EdgeWeights]:
        """Partners of ``country`` mapped to edge weights, sorted by code."""
        try:
            return self._adj[country]
        except KeyError:
            raise NodeNotFoundError(f"{country!r} is not a node of the {self.year} network") from None

    def __eq__(self, other):
        if not isinstance(other, AnnualTradeNetwork):
            return NotImplemented
        return self.year == other.year and self.edges == other.edges

    def __hash__(self):
        return hash((self.year, tuple(self.edges.items())))

    def __repr__(self):
        return f"AnnualTradeNetwork(year={self.year}, N={self.n_nodes}, L={self.n_links})"


def build_network(pairs: Iterable[PairedFlows], year: int,
                  missing: str = "zero") -> AnnualTradeNetwork:
    """Build the annual network from one PairedFlows per unordered pair.

    Pairs whose symmetrized weight is zero contribute no edge; a country
    left with no edges is absent from the node set.
    """
    edges: dict[tuple[str, str], EdgeWeights] = {}
    seen: set[tuple[str, str]] = set()
    for pf in pairs:
        if pf.year != year:
            raise ValidationError(f"pair for year {pf.year} passed to build for {year}")
        key = (pf.country_a, pf.country_b)
        if key in seen:
            raise ValidationError(f"duplicate pair {key} for year {year}")
        seen.add(key)
        ew = symmetrize(pf, missing)
        if ew is not None:
            edges[key] = ew
    return AnnualTradeNetwork(year, edges)


def summarize(net: AnnualTradeNetwork) -> NetworkSummary:
    """Whole-network statistics: N, L, link density, trade volume figures."""
    weights = [ew.w for ew in net.edges.values()]
    n = net.n_nodes
    n_links = len(weights)
    total = sum(weights)
    w_max = max(weights)
    return NetworkSummary(
        year=net.year,
        n_nodes=n,
        n_links=n_links,
        rho=n_links / (n * (n - 1) / 2),
        total_trade=total,
        mean_weight=total / n_links,
        max_weight=w_max,
        max_weight_share=w_max / total,
    )


def network_to_pairs(net: AnnualTradeNetwork) -> list[PairedFlows]:
    """Consistent double-reported PairedFlows that rebuild ``net`` exactly.

    Both countries report each flow identically, so symmetrization averages
    two equal values and reproduces every weight bit for bit.  Zero flow
    weights become missing reports, matching the zero-as-missing convention.
    """
    pairs = []
    for (a, b), ew in net.edges.items():
        exp_ab = ew.w_exp or None
        imp_ab = ew.w_imp or None
        pairs.append(PairedFlows(net.year, a, b,
                                 exp_ab=exp_ab, imp_ab=imp_ab,
                                 exp_ba=imp_ab, imp_ba=exp_ab))
    return pairs


def snapshot_dumps(net: AnnualTradeNetwork) -> str:
    """Serialize a network to the canonical snapshot document.

    Edge weights use the shortest round-trip decimal form, so
    ``snapshot_loads(snapshot_dumps(net)) == net`` holds bit for bit and
    equal networks serialize to identical bytes.
    """
    doc = {
        "format": SNAPSHOT_FORMAT,
        "version": SNAPSHOT_VERSION,
        "year": net.year,
        "nodes": list(net.nodes),
        "edges": [[a, b, ew.w_exp, ew.w_imp] for (a, b), ew in net.edges.items()],
    }
    return json.dumps(doc, separators=(",", ":")) + "\n"


def snapshot_loads(text: str) -> AnnualTradeNetwork:
    """Parse a snapshot document back into a network."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid snapshot JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(doc, dict) or doc.get("format") != SNAPSHOT_FORMAT:
        raise ValidationError("not a trade-network snapshot document")
    if doc.get("version") != SNAPSHOT_VERSION:
        raise ValidationError(f"unsupported snapshot version {doc.get('version')!r}")
    try:
        year = int(doc["year"])
        edges = {}
        for entry in doc["edges"]:
            a, b, w_exp, w_imp = entry
            w_exp = float(w_exp)
            w_imp = float(w_imp)
            edges[(str(a), str(b))] = EdgeWeights(w_exp, w_imp, w_exp + w_imp)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed snapshot document: {exc}") from None
    net = AnnualTradeNetwork(year, edges)
    if list(net.nodes) != list(doc["nodes"]):
        raise ValidationError("snapshot node list does not match edge endpoints")
    return net


def save_snapshot(net: AnnualTradeNetwork, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(snapshot_dumps(net))


def load_snapshot(path) -> AnnualTradeNetwork:
    with open(path, "r", encoding="utf-8") as fh:
        return snapshot_loads(fh.read())
