"""Shared test helpers."""

import numpy as np
import pytest

from tradenet.graph import AnnualTradeNetwork, EdgeWeights


def make_network(year, edge_list):
    """Build a network from (a, b, w_exp, w_imp) tuples."""
    edges = {}
    for a, b, w_exp, w_imp in edge_list:
        if a > b:
            a, b = b, a
            w_exp, w_imp = w_imp, w_exp
        edges[(a, b)] = EdgeWeights(w_exp, w_imp, w_exp + w_imp)
    return AnnualTradeNetwork(year, edges)


def random_network(rng: np.random.Generator, n_nodes, edge_prob=0.4, year=2000,
                   max_weight=100.0):
    """Random weighted network with at least one edge; weights uniform."""
    codes = [f"N{i:03d}" for i in range(n_nodes)]
    edges = []
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            if rng.random() < edge_prob:
                w_exp = float(rng.random() * max_weight)
                w_imp = float(rng.random() * max_weight)
                if w_exp + w_imp > 0:
                    edges.append((codes[i], codes[j], w_exp, w_imp))
    if not edges:
        edges.append((codes[0], codes[1], 1.0, 2.0))
    return make_network(year, edges)


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)
