"""Independence, clique and chromatic numbers, maximal cliques, fractional packing."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from . import config
from .errors import ResourceCapError
from .graph import Graph, complement, iter_bits
from .lp import LinearProgram, simplex_max

try:
    from . import _bbmc
except ImportError:  # numba missing: fall back to the pure-Python search
    _bbmc = None

CLIQUE_CAP = 500
CHROMATIC_CAP = 32
MAX_CLIQUES_OUTPUT = 10**6


class _Budget:
    def __init__(self, seconds):
        self.deadline = None if seconds is None else time.monotonic() + seconds
        self.ticks = 0

    def check(self, best):
        self.ticks += 1
        if self.deadline is not None and self.ticks & 1023 == 0 and time.monotonic() > self.deadline:
            raise ResourceCapError("clique search exceeded its time budget", partial=best)


def _greedy_clique(adj, order):
    best = []
    for start in order[:8]:
        clique = [start]
        cand = adj[start]
        while cand:
            v = max(iter_bits(cand), key=lambda w: (adj[w] & cand).bit_count())
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return best


def _color_classes(adj, P, need):
    """Greedy sequential colouring of candidate set ``P`` in index order.

    Returns (vertices, colours) listing only vertices whose colour is >= need;
    lower-coloured vertices can never extend the incumbent and are skipped.
    """
    verts = []
    cols = []
    k = 0
    U = P
    while U:
        k += 1
        Q = U
        while Q:
            low = Q & -Q
            v = low.bit_length() - 1
            U ^= low
            Q ^= low
            Q &= ~adj[v]
            if k >= need:
                verts.append(v)
                cols.append(k)
    return verts, cols


def max_clique(g: Graph, budget_seconds: float | None = None, use_symmetry: bool = True,
               compiled: bool = True) -> list:
    """Maximum clique by branch and bound with greedy-colouring bounds.

    Vertices are renumbered by non-increasing degree (ties by index) so that the
    lowest set bit is the highest-priority vertex. Branching takes the highest
    colour first. For a vertex-transitive graph some maximum clique contains
    vertex 0, so only those are searched.
    """
    if g.n > CLIQUE_CAP:
        raise ResourceCapError(f"clique search limited to {CLIQUE_CAP} vertices, got {g.n}")
    if g.n == 0:
        return []
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    pos = {v: k for k, v in enumerate(order)}
    adj = [0] * g.n
    for v in range(g.n):
        r = 0
        for w in iter_bits(g.adj[v]):
            r |= 1 << pos[w]
        adj[pos[v]] = r

    best = [pos[v] for v in _greedy_clique(g.adj, order)]
    if use_symmetry and g.vertex_transitive:
        prefix, cand = [pos[0]], adj[pos[0]]
    else:
        prefix, cand = [], (1 << g.n) - 1
    search = _compiled_search if _bbmc is not None and compiled else _python_search
    try:
        best = search(adj, prefix, cand, best, budget_seconds)
    except ResourceCapError as exc:
        exc.partial = sorted(order[v] for v in exc.partial)
        raise
    return sorted(order[v] for v in best)


def _compiled_search(adj, prefix, cand, best, budget_seconds):
    search = _bbmc.Search(adj, len(adj), prefix, cand, best)
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    chunk = 20000
    while not search.done:
        search.step(chunk)
        if deadline is not None and time.monotonic() > deadline and not search.done:
            raise ResourceCapError("clique search exceeded its time budget",
                                   partial=search.incumbent())
    return search.incumbent()


def _python_search(adj, prefix, cand, best, budget_seconds):
    budget = _Budget(budget_seconds)
    current = list(prefix)

    def expand(P):
        nonlocal best
        budget.check(best)
        need = len(best) - len(current) + 1
        verts, cols = _color_classes(adj, P, need)
        for idx in range(len(verts) - 1, -1, -1):
            if len(current) + cols[idx] <= len(best):
                return
            v = verts[idx]
            current.append(v)
            NP = P & adj[v]
            if NP:
                expand(NP)
            elif len(current) > len(best):
                best = list(current)
            current.pop()
            P &= ~(1 << v)

    if cand:
        expand(cand)
    elif len(current) > len(best):
        best = list(current)
    return best
    return sorted(order[v] for v in best)


def clique_number(g: Graph, budget_seconds: float | None = None) -> int:
    return len(max_clique(g, budget_seconds))


def independence_number(g: Graph, budget_seconds: float | None = None) -> int:
    return len(max_clique(complement(g), budget_seconds))


def max_independent_set(g: Graph, budget_seconds: float | None = None) -> list:
    return max_clique(complement(g), budget_seconds)


def _dsatur_coloring(g: Graph):
    color = [-1] * g.n
    for _ in range(g.n):
        best = None
        for v in range(g.n):
            if color[v] >= 0:
                continue
            sat = len({color[w] for w in iter_bits(g.adj[v]) if color[w] >= 0})
            key = (sat, g.degree(v), -v)
            if best is None or key > best[0]:
                best = (key, v)
        v = best[1]
        used = {color[w] for w in iter_bits(g.adj[v])}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number; DSATUR supplies the initial upper bound."""
    if g.n > CHROMATIC_CAP:
        raise ResourceCapError(f"chromatic number limited to {CHROMATIC_CAP} vertices, got {g.n}")
    if g.n == 0:
        return 0
    upper = max(_dsatur_coloring(g)) + 1
    lower = clique_number(g)
    if lower == upper:
        return upper
    # exact search over k-colourings, increasing k, vertices in DSATUR order
    for k in range(lower, upper):
        if _colorable(g, k):
            return k
    return upper


def _colorable(g: Graph, k: int) -> bool:
    n = g.n
    color = [-1] * n
    # forbidden[v] is a bitmask of colours used by coloured neighbours
    def pick():
        best, bkey = -1, None
        for v in range(n):
            if color[v] < 0:
                forb = 0
                for w in iter_bits(g.adj[v]):
                    if color[w] >= 0:
                        forb |= 1 << color[w]
                key = (forb.bit_count(), g.degree(v))
                if bkey is None or key > bkey:
                    best, bkey = v, key
        return best

    def solve(colored, max_used):
        if colored == n:
            return True
        v = pick()
        forb = 0
        for w in iter_bits(g.adj[v]):
            if color[w] >= 0:
                forb |= 1 << color[w]
        # colours above max_used + 1 are symmetric; try only one fresh colour
        for c in range(min(k, max_used + 2)):
            if not forb >> c & 1:
                color[v] = c
                if solve(colored + 1, max(max_used, c)):
                    return True
                color[v] = -1
        return False

    return solve(0, -1)


@dataclass(frozen=True)
class CliqueFamily:
    """A family of cliques of a host graph; ``maximal`` marks the full set of maximal cliques."""

    cliques: tuple
    maximal: bool = False

    def __len__(self):
        return len(self.cliques)

    def __iter__(self):
        return iter(self.cliques)


def maximal_cliques(g: Graph, limit: int = MAX_CLIQUES_OUTPUT) -> CliqueFamily:
    """All maximal cliques via Bron-Kerbosch with Tomita pivoting, sorted."""
    if g.n > CLIQUE_CAP:
        raise ResourceCapError(f"clique enumeration limited to {CLIQUE_CAP} vertices, got {g.n}")
    out = []
    adj = g.adj

    def bk(R, P, X):
        if not P and not X:
            out.append(tuple(sorted(R)))
            if len(out) > limit:
                raise ResourceCapError(f"more than {limit} maximal cliques")
            return
        PX = P | X
        pivot = max(iter_bits(PX), key=lambda u: (adj[u] & P).bit_count())
        for v in iter_bits(P & ~adj[pivot]):
            bk(R + [v], P & adj[v], X & adj[v])
            P &= ~(1 << v)
            X |= 1 << v

    if g.n:
        bk([], g.full_mask, 0)
    return CliqueFamily(tuple(sorted(out)), maximal=True)


def packing_lp(g: Graph, family: CliqueFamily | None = None) -> LinearProgram:
    """max sum w_i subject to sum_{i in C} w_i <= 1 for each clique C, 0 <= w_i <= 1."""
    fam = maximal_cliques(g) if family is None else family
    rows = []
    for c in fam:
        row = [Fraction(0)] * g.n
        for v in c:
            row[v] = Fraction(1)
        rows.append(row)
    return LinearProgram.packing(c=[Fraction(1)] * g.n, A=rows, b=[Fraction(1)] * len(rows))


def fractional_packing(g: Graph, use_transitivity: bool = True,
                       budget_seconds: float | None = None) -> Fraction:
    """Rosenfeld number p(G): fractional packing over all (maximal) cliques.

    For a vertex-transitive graph the uniform weighting is optimal, giving n/omega.
    """
    if g.n == 0:
        return Fraction(0)
    if use_transitivity and g.vertex_transitive:
        return Fraction(g.n, clique_number(g, budget_seconds))
    return simplex_max(packing_lp(g)).value


def default_budget():
    return config.clique_budget_seconds()
