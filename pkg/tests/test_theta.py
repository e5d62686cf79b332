import math

import numpy as np
import pytest
from hypothesis import given, settings

from ctxgraph.errors import InvalidParameter, ResourceCapError
from ctxgraph.graph import (Graph, anticycle, circulant, complement, complete, cycle, empty,
                            johnson, shrikhande)
from ctxgraph.theta import (ContextualityClass, ThetaValue, classify, recognize_basic,
                            sandwich_check, theta, theta_anticycle, theta_cycle, theta_sdp,
                            verdict_for)

import oracles
from test_graph import graphs


class TestClosedForms:
    def test_pentagon_is_root_five(self):
        assert abs(theta_cycle(5).value - math.sqrt(5)) <= 1e-12
        assert abs(theta_anticycle(5).value - math.sqrt(5)) <= 1e-12

    def test_printed_anticycle_value(self):
        assert abs(theta_anticycle(7).value - 2.1099) <= 5e-4

    @pytest.mark.parametrize("n", range(5, 102, 2))
    def test_product_with_complement_is_n(self, n):
        assert abs(theta_cycle(n).value * theta_anticycle(n).value - n) <= 1e-12

    @pytest.mark.parametrize("n", [5, 7, 9, 11, 13])
    def test_strictly_above_alpha(self, n):
        assert theta_cycle(n).value > (n - 1) / 2
        assert theta_anticycle(n).value > 2

    def test_anticycle_decreases_to_two(self):
        vals = [theta_anticycle(n).value for n in range(5, 41, 2)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[-1] - 2 < 0.01

    @pytest.mark.parametrize("n", [3, 4, 8, 1])
    def test_rejects_bad_n(self, n):
        with pytest.raises(InvalidParameter):
            theta_cycle(n)
        with pytest.raises(InvalidParameter):
            theta_anticycle(n)


class TestSDP:
    @pytest.mark.parametrize("n", [5, 7, 9, 11])
    def test_cycles_match_closed_form(self, n):
        t = theta_sdp(cycle(n))
        assert t.converged
        assert t.lower - 1e-12 <= theta_cycle(n).value <= t.upper + 1e-12
        assert abs(t.value - theta_cycle(n).value) <= 1e-4

    @pytest.mark.parametrize("n", [5, 7, 9, 11, 13, 15])
    def test_anticycles_match_closed_form(self, n):
        assert abs(theta_sdp(anticycle(n)).value - theta_anticycle(n).value) <= 1e-4

    def test_chsh_graph(self):
        t = theta_sdp(circulant(8, {1, 4}))
        assert abs(t.value - (2 + math.sqrt(2))) <= 1e-4

    def test_petersen_family(self):
        # theta(Petersen) = 4 and Petersen is J(5,2)-complement
        assert abs(theta_sdp(complement(johnson(5, 2))).value - 4) <= 1e-4
        assert abs(theta_sdp(johnson(5, 2)).value - 2.5) <= 1e-4

    def test_shrikhande(self):
        # srg(16,6,2,2) with eigenvalues 6, 2, -2: theta = n * (-s) / (k - s) = 4
        assert abs(theta_sdp(shrikhande()).value - 4) <= 1e-4

    def test_trivial_graphs(self):
        assert theta_sdp(empty(5)).value == 5
        assert theta_sdp(complete(5)).value == 1
        assert theta_sdp(Graph.from_edges(0, [])).value == 0

    def test_cap(self):
        with pytest.raises(ResourceCapError):
            theta_sdp(cycle(65))

    def test_iteration_cap_reports_unconverged(self):
        t = theta_sdp(anticycle(11), max_iter=20)
        assert not t.converged
        assert t.lower <= theta_anticycle(11).value <= t.upper

    @given(graphs(max_n=8))
    @settings(max_examples=30)
    def test_complement_product_at_least_n(self, g):
        if g.n == 0:
            return
        assert theta_sdp(g).value * theta_sdp(complement(g)).value >= g.n - 1e-3

    @given(graphs(max_n=8))
    @settings(max_examples=30)
    def test_between_alpha_and_clique_cover(self, g):
        t = theta_sdp(g).value
        assert oracles.brute_alpha(g) - 1e-4 <= t
        if g.n:
            assert t <= oracles.brute_chi(complement(g)) + 1e-4

    def test_relabelling_invariance(self):
        g = circulant(8, {1, 4})
        perm = np.random.default_rng(5).permutation(8)
        h = Graph.from_edges(8, [(int(perm[u]), int(perm[v])) for u, v in g.edges()])
        assert abs(theta_sdp(g).value - theta_sdp(h).value) <= 1e-5


class TestClassification:
    def test_recognize(self):
        assert recognize_basic(cycle(7)) == ("cycle", 7)
        assert recognize_basic(anticycle(9)) == ("anticycle", 9)
        assert recognize_basic(cycle(6)) is None

    def test_dispatch_uses_closed_form(self):
        assert theta(cycle(9)).method == "closed-form"
        assert theta(circulant(8, {1, 4})).method == "sdp"

    @pytest.mark.parametrize("g", [cycle(5), cycle(7), anticycle(7), circulant(8, {1, 4}),
                                   johnson(5, 2), complement(shrikhande())],
                             ids=lambda g: g.label)
    def test_contextual_graphs(self, g):
        assert classify(g).verdict == "QCG"

    @pytest.mark.parametrize("g", [cycle(5), cycle(7), cycle(9), cycle(11), anticycle(7),
                                   anticycle(9), anticycle(11)], ids=lambda g: g.label)
    def test_basic_graph_margins(self, g):
        c = classify(g)
        assert c.verdict == "QCG"
        if g.label == "anticycle:11":
            # (1 + cos(pi/11)) / cos(pi/11) - 2, below 0.05 but far above the decision tolerance
            c11 = math.cos(math.pi / 11)
            assert abs(c.margin - ((1 + c11) / c11 - 2)) <= 1e-12
            assert 0.042 < c.margin < 0.05
        else:
            assert c.margin > 0.05

    @pytest.mark.parametrize("g", [cycle(6), complete(5), empty(4), shrikhande(),
                                   complement(cycle(8))], ids=lambda g: g.label or "g")
    def test_noncontextual_graphs(self, g):
        c = classify(g)
        assert c.verdict == "QNCG"
        assert abs(c.margin) <= 1e-4

    def test_verdict_rules(self):
        assert verdict_for(2, ThetaValue(2.5, "x", 1e-6)) == "QCG"
        assert verdict_for(2, ThetaValue(2.00001, "x", 1e-6)) == "QNCG"
        assert verdict_for(2, ThetaValue(2.001, "x", 0.01)) == "undecided"

    def test_json_round_trip(self):
        c = classify(cycle(5))
        again = ContextualityClass.from_dict(c.to_dict())
        assert again.verdict == "QCG" and again.alpha == 2
        assert again.theta.value == c.theta.value

    @given(graphs(max_n=7))
    @settings(max_examples=25)
    def test_sandwich(self, g):
        if g.n:
            assert sandwich_check(g)
