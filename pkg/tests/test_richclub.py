import itertools

import pytest

from conftest import make_network, random_network
from tradenet.errors import DomainError, ValidationError
from tradenet.graph import AnnualTradeNetwork, EdgeWeights
from tradenet.metrics import node_metrics
from tradenet.richclub import (rich_club_curve, rich_club_series, rich_club_size)


def brute_force_club_size(net, threshold):
    """Exhaustive scan over all strength-ordered suffixes, sums from scratch."""
    strength = {c: node_metrics(net, c).s for c in net.nodes}
    seq = sorted(net.nodes, key=lambda c: (strength[c], c))
    total = sum(ew.w for ew in net.edges.values())
    best = len(seq)
    for start in range(len(seq)):
        club = set(seq[start:])
        internal = sum(ew.w for (a, b), ew in net.edges.items()
                       if a in club and b in club)
        if internal >= threshold * total:
            best = len(seq) - start
        else:
            break
    return best


class TestRichClubCurve:
    def test_triangle_equal_weights(self):
        net = make_network(2000, [("A", "B", 1.0, 0.0), ("A", "C", 1.0, 0.0),
                                  ("B", "C", 1.0, 0.0)])
        curve = rich_club_curve(net)
        assert curve.s_max == 2.0
        assert [p[1] for p in curve.points] == [1.0, pytest.approx(1 / 3), 0.0]
        assert [p[2] for p in curve.points] == [3, 2, 1]

    def test_star_leaf_removals(self):
        net = make_network(2000, [("X", f"L{i}", 1.0, 0.0) for i in range(3)])
        curve = rich_club_curve(net)
        # full set, then one leaf gone, two leaves gone, hub alone
        assert [p[1] for p in curve.points] == [
            1.0, pytest.approx(2 / 3), pytest.approx(1 / 3), 0.0]

    def test_endpoints_exact(self, rng):
        for _ in range(20):
            net = random_network(rng, int(rng.integers(2, 20)))
            points = rich_club_curve(net).points
            assert points[0][1] == 1.0
            assert points[-1][1] == 0.0
            assert points[-1][2] == 1

    def test_monotone_non_increasing(self, rng):
        for _ in range(20):
            net = random_network(rng, int(rng.integers(3, 25)))
            fws = [f_w for _, f_w, _ in rich_club_curve(net).points]
            assert all(a >= b for a, b in zip(fws, fws[1:]))

    def test_incremental_matches_recomputation(self, rng):
        # the accumulated internal trade must agree with summing each
        # suffix's edges from scratch
        for _ in range(15):
            net = random_network(rng, int(rng.integers(3, 20)))
            strength = {c: node_metrics(net, c).s for c in net.nodes}
            seq = sorted(net.nodes, key=lambda c: (strength[c], c))
            total = sum(ew.w for ew in net.edges.values())
            for (_, f_w, size) in rich_club_curve(net).points:
                club = set(seq[len(seq) - size:])
                scratch = sum(ew.w for (a, b), ew in net.edges.items()
                              if a in club and b in club)
                assert f_w == pytest.approx(scratch / total, abs=1e-12)

    def test_x_axis_is_weakest_member_share(self):
        net = make_network(2000, [("A", "B", 4.0, 0.0), ("B", "C", 1.0, 0.0)])
        # strengths: A=4, B=5, C=1 -> order C, A, B
        curve = rich_club_curve(net)
        assert [p[0] for p in curve.points] == [
            pytest.approx(1 / 5), pytest.approx(4 / 5), 1.0]


class TestRichClubSize:
    def test_two_node_network(self):
        net = make_network(2000, [("A", "B", 1.0, 1.0)])
        curve = rich_club_curve(net)
        assert rich_club_size(curve, net, 0.5) == (2, 1.0)

    def test_three_hubs_carry_eighty_percent(self):
        edges = [("H1", "H2", 8.0, 0.0), ("H1", "H3", 8.0, 0.0), ("H2", "H3", 8.0, 0.0)]
        leaves = [f"P{i}" for i in range(7)]
        hubs = itertools.cycle(["H1", "H2", "H3"])
        for leaf, hub in zip(leaves, hubs):
            edges.append((hub, leaf, 6.0 / 7.0, 0.0))
        net = make_network(2000, edges)
        curve = rich_club_curve(net)
        club_size, s_rc = rich_club_size(curve, net, 0.5)
        assert club_size == 3
        assert s_rc == pytest.approx(0.3)

    def test_matches_exhaustive_search(self, rng):
        for _ in range(60):
            net = random_network(rng, int(rng.integers(2, 15)))
            curve = rich_club_curve(net)
            for threshold in (0.25, 0.5, 0.75):
                club_size, s_rc = rich_club_size(curve, net, threshold)
                assert club_size == brute_force_club_size(net, threshold)
                assert s_rc == club_size / net.n_nodes

    def test_threshold_domain(self, rng):
        net = random_network(rng, 5)
        curve = rich_club_curve(net)
        for bad in (0.0, 1.0, -0.1, 2.0):
            with pytest.raises(DomainError):
                rich_club_size(curve, net, bad)

    def test_power_of_two_rescale_invariance(self, rng):
        net = random_network(rng, 12)
        scaled = AnnualTradeNetwork(net.year, {
            key: EdgeWeights(4.0 * ew.w_exp, 4.0 * ew.w_imp, 4.0 * ew.w)
            for key, ew in net.edges.items()})
        base_curve = rich_club_curve(net)
        big_curve = rich_club_curve(scaled)
        assert [p[1] for p in base_curve.points] == [p[1] for p in big_curve.points]
        assert rich_club_size(base_curve, net) == rich_club_size(big_curve, scaled)


class TestRichClubSeries:
    def test_single_network(self, rng):
        net = random_network(rng, 10, year=1995)
        series = rich_club_series([net])
        (year, s_rc) = series.entries[0]
        assert year == 1995
        assert s_rc == rich_club_size(rich_club_curve(net), net)[1]

    def test_identical_networks_identical_values(self, rng):
        net1 = random_network(rng, 10, year=1990)
        net2 = AnnualTradeNetwork(1991, dict(net1.edges))
        series = rich_club_series([net2, net1])
        assert series.entries[0][0] == 1990
        assert series.entries[0][1] == series.entries[1][1]

    def test_duplicate_years_rejected(self, rng):
        net = random_network(rng, 5, year=1990)
        with pytest.raises(ValidationError):
            rich_club_series([net, net])

    def test_gravity_shapes_show_shrinking_club(self):
        # wider GDP spread on a larger network concentrates trade, so the
        # half-of-trade club is a smaller fraction of countries
        from tradenet.synth import GravityParams, generate_network

        def s_rc(n, gdp_logsd, seed, year):
            params = GravityParams(n_countries=n, gdp_logsd=gdp_logsd,
                                   link_density_target=0.52, noise_logsd=1.0,
                                   seed=seed)
            net = generate_network(params, year)
            return rich_club_size(rich_club_curve(net), net, 0.5)[1]

        early = [s_rc(76, 0.5, seed, 1948) for seed in range(5)]
        late = [s_rc(187, 2.0, seed, 2000) for seed in range(5)]
        assert min(early) > max(late)

    def test_hub_concentration_panel_non_increasing(self):
        # year t: a clique of (10 - t) dominant countries plus a weak ring;
        # concentration grows with t, so S_RC cannot grow.
        nets = []
        n = 20
        for t in range(9):
            h = 10 - t
            edges = {}
            hubs = [f"C{i:02d}" for i in range(h)]
            for i in range(h):
                for j in range(i + 1, h):
                    edges[(hubs[i], hubs[j])] = EdgeWeights(500.0, 500.0, 1000.0)
            for i in range(n):
                a, b = f"C{i:02d}", f"C{(i + 1) % n:02d}"
                if a > b:
                    a, b = b, a
                edges.setdefault((a, b), EdgeWeights(0.5, 0.5, 1.0))
            nets.append(AnnualTradeNetwork(1990 + t, edges))
        series = rich_club_series(nets)
        values = [s for _, s in series.entries]
        assert all(a >= b for a, b in zip(values, values[1:]))
        assert values[0] > values[-1]
