import math

import pytest
from hypothesis import given, strategies as st

from ctxgraph.errors import InvalidInput, InvalidParameter
from ctxgraph.graph import anticycle, circulant, cycle, is_isomorphic
from ctxgraph.events import (Event, InequalityInstance, build_chsh_events, build_s_anticycle,
                             build_s_cycle, chsh_events, compatibility_graph, exclusive,
                             exclusivity_graph, quantum_value, s_anticycle_events)
from ctxgraph.orthorep import build_or_anticycle, build_or_cycle

import oracles

events_st = st.builds(
    lambda ms, data: Event(tuple(ms), tuple(data[:len(ms)])),
    st.lists(st.integers(0, 9), min_size=1, max_size=4, unique=True),
    st.lists(st.integers(-1, 3), min_size=4, max_size=4),
)


class TestEvent:
    @given(events_st)
    def test_text_round_trip(self, e):
        assert Event.parse(str(e)) == e
        assert Event.from_dict(e.to_dict()) == e

    def test_order_of_pairs_is_irrelevant(self):
        assert Event((1, 2), (0, 1)) == Event((2, 1), (1, 0))

    @pytest.mark.parametrize("text", ["1,0|1", "1|", "x|1", "1,0|1,2|3", "0,1|4,4"])
    def test_bad_text(self, text):
        with pytest.raises(InvalidInput):
            Event.parse(text)

    def test_exclusivity(self):
        e, f = Event.parse("1,0|1,3"), Event.parse("1,1|2,3")
        assert exclusive(e, f) and exclusive(f, e)
        assert not exclusive(e, Event.parse("0|2"))

    @given(events_st, events_st)
    def test_exclusivity_symmetric(self, e, f):
        assert exclusive(e, f) == exclusive(f, e)

    def test_duplicate_events_rejected(self):
        with pytest.raises(InvalidInput):
            exclusivity_graph([Event.parse("1,0|1,2"), Event.parse("0,1|2,1")])


class TestFamilies:
    @pytest.mark.parametrize("n", range(5, 14, 2))
    def test_s_cycle_graph(self, n):
        inst = build_s_cycle(n)
        assert is_isomorphic(inst.exclusivity_graph, cycle(n))
        assert inst.nchv_bound == (n - 1) // 2

    @pytest.mark.parametrize("n", range(5, 14, 2))
    def test_s_anticycle_graph(self, n):
        inst = build_s_anticycle(n)
        assert is_isomorphic(inst.exclusivity_graph, anticycle(n))
        assert inst.nchv_bound == 2

    @pytest.mark.parametrize("n", range(7, 14, 2))
    def test_contiguous_contexts_give_the_same_graph(self, n):
        g = exclusivity_graph(s_anticycle_events(n, stride=1))
        assert is_isomorphic(g, anticycle(n))

    @pytest.mark.parametrize("n", range(5, 12, 2))
    def test_compatibility_matches_exclusivity(self, n):
        for inst in (build_s_cycle(n), build_s_anticycle(n)):
            assert is_isomorphic(compatibility_graph(inst.events), inst.exclusivity_graph)

    def test_rejects_even(self):
        with pytest.raises(InvalidParameter):
            build_s_cycle(6)
        with pytest.raises(InvalidParameter):
            build_s_anticycle(9, stride=3)

    def test_chsh_graph(self):
        inst = build_chsh_events()
        assert is_isomorphic(inst.exclusivity_graph, circulant(8, {1, 4}))
        assert inst.nchv_bound == 3
        assert abs(inst.quantum_bound.value - (2 + math.sqrt(2))) <= 1e-4

    def test_chsh_matches_variational_oracle(self):
        events = [(e.outcomes[0], e.outcomes[1], e.measurements[0], e.measurements[1] - 2)
                  for e in chsh_events()]
        best = oracles.chsh_seesaw(events)
        assert abs(best - build_chsh_events().quantum_bound.value) <= 1e-4

    def test_json_round_trip(self):
        inst = build_s_anticycle(9)
        again = InequalityInstance.from_dict(inst.to_dict())
        assert again.events == inst.events
        assert again.exclusivity_graph == inst.exclusivity_graph
        assert again.quantum_bound.value == inst.quantum_bound.value


class TestQuantumValue:
    @pytest.mark.parametrize("n", [5, 7, 9, 11])
    def test_s_cycle_violation(self, n):
        inst = build_s_cycle(n)
        q = quantum_value(inst, build_or_cycle(n))
        assert abs(q.value - inst.quantum_bound.value) <= 1e-9
        assert q.value > q.nchv_bound

    def test_s_anticycle_seven(self):
        q = quantum_value(build_s_anticycle(7), build_or_anticycle(7))
        assert abs(q.value - 2.1099) <= 1e-4
        assert q.value > 2

    def test_probabilities_respect_exclusivity(self):
        # pairwise exclusive events cannot carry total probability above 1
        inst = build_s_anticycle(9)
        q = quantum_value(inst, build_or_anticycle(9))
        g = inst.exclusivity_graph
        for u, v in g.edges():
            assert q.probabilities[u] + q.probabilities[v] <= 1 + 1e-12

    def test_mismatched_representation(self):
        with pytest.raises(InvalidInput):
            quantum_value(build_s_cycle(7), build_or_anticycle(7))
