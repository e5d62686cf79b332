import itertools
import random

import pytest
from hypothesis import given, strategies as st

from ctxgraph.errors import InvalidParameter, ResourceCapError
from ctxgraph.graph import Graph, anticycle, complete, cycle, disjunctive_product, power
from ctxgraph.invariants import clique_number
from ctxgraph.layered import (LayeredSearch, anticycle_product_clique, power_symmetries,
                              rest_table)

import oracles


def is_clique(g, vertices):
    return all(g.adj[u] >> v & 1 for u, v in itertools.combinations(vertices, 2))


def brute_layers(g, n):
    # every cyclic sequence of cliques with disjoint clique unions on consecutive pairs
    cliques = [c for k in range(g.n + 1) for c in itertools.combinations(range(g.n), k)
               if is_clique(g, c)]
    ok = {(a, b) for a in cliques for b in cliques
          if not set(a) & set(b) and is_clique(g, a + b)}
    best = 0

    def rec(seq, total):
        nonlocal best
        if len(seq) == n:
            if (seq[-1], seq[0]) in ok:
                best = max(best, total)
            return
        for c in cliques:
            if (seq[-1], c) in ok:
                rec(seq + [c], total + len(c))

    for c in cliques:
        rec([c], len(c))
    return best


def random_graph(seed, n):
    rng = random.Random(seed)
    return oracles.random_graph(rng, n, rng.random())


class TestAgainstOracles:
    @pytest.mark.parametrize("seed", range(6))
    def test_layer_brute_force(self, seed):
        g = random_graph(seed, 4)
        for n in (4, 5):
            assert len(anticycle_product_clique(g, n)) == brute_layers(g, n)

    @given(st.integers(0, 10 ** 6), st.integers(2, 8), st.sampled_from([4, 5, 6, 7]))
    def test_matches_branch_and_bound(self, seed, size, n):
        g = random_graph(seed, size)
        clique = anticycle_product_clique(g, n)
        prod = disjunctive_product(g, anticycle(n))
        assert is_clique(prod, clique)
        assert len(clique) == clique_number(prod)

    @pytest.mark.parametrize("base,k", [(5, 1), (5, 2), (7, 1), (9, 1)])
    def test_antihole_powers(self, base, k):
        b = anticycle(base)
        clique = anticycle_product_clique(power(b, k), base, power_symmetries(b, k))
        full = power(b, k + 1)
        assert is_clique(full, clique)
        assert len(clique) == clique_number(full)

    def test_known_values(self):
        assert len(anticycle_product_clique(cycle(5), 5)) == 5
        assert len(anticycle_product_clique(complete(3), 7)) == 9


class TestSymmetries:
    @pytest.mark.parametrize("base,k,size", [(5, 1, 10), (5, 2, 200), (7, 2, 392)])
    def test_group_of_automorphisms(self, base, k, size):
        g = power(anticycle(base), k)
        syms = power_symmetries(anticycle(base), k)
        assert len({tuple(p) for p in syms}) == size
        for perm in syms[:: max(1, len(syms) // 20)]:
            assert sorted(perm) == list(range(g.n))
            for u, v in g.edges():
                assert g.adj[perm[u]] >> int(perm[v]) & 1

    def test_orbits_do_not_change_the_answer(self):
        b = anticycle(5)
        g = power(b, 2)
        plain = LayeredSearch(g, 5)
        sym = LayeredSearch(g, 5, power_symmetries(b, 2))
        for T in (12, 13):
            assert (plain.feasible(T) is None) == (sym.feasible(T) is None)


class TestRestTable:
    @pytest.mark.parametrize("n,P,w", [(5, 3, 3), (7, 5, 4), (6, 2, 2)])
    def test_matches_enumeration(self, n, P, w):
        f = rest_table(n, P, w)
        for r in range(n):
            for s in range(min(w, P) + 1):
                for e in range(w + 1):
                    best = None
                    for sizes in itertools.product(range(w + 1), repeat=r):
                        seq = (s,) + sizes + (e,)
                        if all(a + b <= P for a, b in zip(seq, seq[1:])):
                            best = max(best or 0, sum(sizes))
                    if best is None:
                        assert f[r, s, e] < 0
                    else:
                        assert f[r, s, e] == best


class TestLimits:
    def test_word_size(self):
        with pytest.raises(ResourceCapError):
            anticycle_product_clique(power(anticycle(5), 3), 5)

    def test_short_cycle(self):
        with pytest.raises(InvalidParameter):
            anticycle_product_clique(cycle(5), 3)

    def test_budget_keeps_a_clique(self):
        b = anticycle(7)
        with pytest.raises(ResourceCapError) as info:
            anticycle_product_clique(power(b, 2), 7, power_symmetries(b, 2), budget_seconds=0.0)
        partial = info.value.partial
        assert len(partial) == 30
        assert is_clique(power(b, 3), partial)

    def test_empty_graph(self):
        g = Graph.from_edges(3, [])
        assert len(anticycle_product_clique(g, 5)) == 2
