"""Clique number of G * complement(C_n) by a search over the layers of the cycle factor.

A clique of G * complement(C_n) meets the fibre over cycle vertex z in a clique
K_z of G. Fibres over non-consecutive cycle vertices are joined completely, and
over consecutive ones (z, z+1) the two layers must be disjoint with a clique
union. So the clique number is the largest total size of a cyclic sequence
K_0, ..., K_{n-1} of such layers.

Each consecutive pair holds at most omega(G) vertices, which gives the bound
floor(n omega(G) / 2). Targets are tried downwards from there. For a target T,
rotating the cycle puts a largest pair P at positions (0, 1), so the pair
(K_0, K_1) runs over the P-cliques of G (one per orbit of a symmetry group,
|K_0| >= |K_1| by reflection). Later layers grow one vertex at a time, pruned
by an exact table of what the remaining layers can add and by colouring
bounds, and the last two layers are settled together by a single clique search.

Powers of an odd antihole are the main use: complement(C_n)^{*m} is
complement(C_n)^{*(m-1)} * complement(C_n) with the library's vertex numbering.
"""

from __future__ import annotations

import itertools
import time

import numpy as np
from numba import njit

from .errors import InvalidParameter, ResourceCapError
from .graph import Graph, automorphisms, iter_bits
from .invariants import max_clique

WORD_BITS = 64
NEG = -(10 ** 6)


@njit(cache=True)
def _pop(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True)
def _low(x):
    return _pop((x & (~x + np.uint64(1))) - np.uint64(1))


@njit(cache=True)
def _common(adj, K, full):
    c = full & ~K
    x = K
    while x:
        c &= adj[_low(x)]
        x &= x - np.uint64(1)
    return c


@njit(cache=True)
def _colour_bound(adj, cand):
    # greedy colour classes: an upper bound on the clique number inside cand
    q = cand
    colours = 0
    while q:
        colours += 1
        avail = q
        while avail:
            v = _low(avail)
            bit = np.uint64(1) << np.uint64(v)
            q ^= bit
            avail &= ~adj[v] & ~bit
    return colours


# The two searches below recurse; numba's on-disk cache is left off for them
# because cached recursive functions proved unreliable.


@njit
def _final(adj, cand, ca, cb, Q, q, qa, qb, need, need_a, need_b, out):
    # grow clique Q inside cand until it has ``need`` vertices, ``need_a`` in ca
    # and ``need_b`` in cb
    if q >= need and qa >= need_a and qb >= need_b:
        out[0] = Q
        return True
    if q + _colour_bound(adj, cand) < need:
        return False
    if qa + _colour_bound(adj, cand & ca) < need_a:
        return False
    if qb + _colour_bound(adj, cand & cb) < need_b:
        return False
    c = cand
    while c:
        v = _low(c)
        bit = np.uint64(1) << np.uint64(v)
        c ^= bit
        cand &= ~bit
        ia = 1 if (ca & bit) else 0
        ib = 1 if (cb & bit) else 0
        if _final(adj, cand & adj[v], ca, cb, Q | bit, q + 1, qa + ia, qb + ib,
                  need, need_a, need_b, out):
            return True
    return False


@njit
def _grow(adj, full, n, P, T, f, k0, c0, z, Kz, k, candz, nxtz, total, limit, layers, counter):
    """Layer z holds Kz (k vertices) and may still take vertices of candz, up to
    ``limit`` in all; nxtz is the common neighbourhood of Kz, where layer z+1 lives."""
    counter[0] += 1
    if z == n - 2 and k == 0:
        # layers n-2 and n-1 form one clique Q: the first part inside candz,
        # the second inside c0; a split exists iff Q meets each side enough
        need = T - total
        a_max = limit
        b_max = P - k0
        if need > a_max + b_max:
            return False
        out = np.zeros(1, dtype=np.uint64)
        if not _final(adj, candz | c0, candz, c0, np.uint64(0), 0, 0, 0, need,
                      max(need - b_max, 0), max(need - a_max, 0), out):
            return False
        Q = out[0]
        A = Q & candz & ~c0
        B = Q & c0 & ~candz
        both = Q & candz & c0
        while both:
            bit = both & (~both + np.uint64(1))
            both ^= bit
            if _pop(B) < b_max:
                B |= bit
            else:
                A |= bit
        layers[n - 2] = A
        layers[n - 1] = B
        return True

    r = n - 1 - z
    hi = min(k + _colour_bound(adj, candz), limit)
    nxt_cap = _colour_bound(adj, nxtz & c0 if z + 1 == n - 1 else nxtz)
    ok = False
    for s in range(k, hi + 1):
        for s2 in range(min(nxt_cap, P - s) + 1):
            if total + s + s2 + f[r - 1, s2, k0] >= T:
                ok = True
                break
        if ok:
            break
    if not ok:
        return False
    if total + k + f[r, k, k0] >= T:
        layers[z] = Kz
        if _grow(adj, full, n, P, T, f, k0, c0, z + 1, np.uint64(0), 0, nxtz, full,
                 total + k, P - k, layers, counter):
            return True
    c = candz
    while c:
        v = _low(c)
        bit = np.uint64(1) << np.uint64(v)
        c ^= bit
        if _grow(adj, full, n, P, T, f, k0, c0, z, Kz | bit, k + 1, c & adj[v],
                 nxtz & adj[v] & ~bit, total, limit, layers, counter):
            return True
    return False


def rest_table(n: int, P: int, w: int) -> np.ndarray:
    """f[r, s, e]: the most r free layer sizes can add between fixed neighbours of
    sizes s and e, with every layer <= w and every consecutive pair <= P."""
    f = np.full((n, w + 1, w + 1), NEG, dtype=np.int64)
    for s in range(w + 1):
        for e in range(w + 1):
            if s + e <= P:
                f[0, s, e] = 0
    for r in range(1, n):
        for s in range(min(w, P) + 1):
            for e in range(w + 1):
                f[r, s, e] = max(v + f[r - 1, v, e] for v in range(min(w, P - s) + 1))
    return f


def cliques_of_size(adj, cand: int, k: int) -> list:
    out = []

    def rec(cur, size, cand):
        if size == k:
            out.append(cur)
            return
        while cand:
            if size + cand.bit_count() < k:
                return
            v = cand.bit_length() - 1
            cand &= ~(1 << v)
            rec(cur | (1 << v), size + 1, cand & adj[v])

    rec(0, 0, cand)
    return out


def power_symmetries(base: Graph, k: int) -> np.ndarray:
    """Automorphisms of power(base, k) built from automorphisms of the factors
    and permutations of the coordinates, one row per map."""
    auts = automorphisms(base, cap=base.n)
    nb = base.n
    digits = np.array([[(v // nb ** (k - 1 - i)) % nb for i in range(k)] for v in range(nb ** k)])
    weights = nb ** np.arange(k - 1, -1, -1)
    rows = []
    for perm in itertools.permutations(range(k)):
        for phis in itertools.product(auts, repeat=k):
            new = np.column_stack([np.asarray(phis[i])[digits[:, perm[i]]] for i in range(k)])
            rows.append(new @ weights)
    return np.array(rows, dtype=np.int64)


def _orbit_representatives(cliques, symmetries):
    # keep a clique only when no symmetry maps it to a smaller bitmask
    if symmetries is None or len(cliques) == 0:
        return cliques
    members = np.array([[v for v in iter_bits(u)] for u in cliques], dtype=np.int64)
    masks = np.array(cliques, dtype=np.uint64)
    keep = np.ones(len(cliques), dtype=bool)
    one = np.uint64(1)
    for perm in symmetries:
        img = np.bitwise_or.reduce(one << perm[members].astype(np.uint64), axis=1)
        keep &= img >= masks
    return [u for u, k in zip(cliques, keep) if k]


class LayeredSearch:
    """State shared by the feasibility tests for one graph G and cycle length n."""

    def __init__(self, g: Graph, n: int, symmetries=None, omega=None, deadline=None):
        if g.n > WORD_BITS:
            raise ResourceCapError(f"layered search needs |V(G)| <= {WORD_BITS}, got {g.n}")
        if n < 4:
            raise InvalidParameter("the cycle factor needs n >= 4")
        self.g, self.n, self.symmetries, self.deadline = g, n, symmetries, deadline
        self.adj = np.array(g.adj, dtype=np.uint64)
        self.full = np.uint64(g.full_mask)
        self.omega_clique = max_clique(g) if omega is None else omega
        self.w = len(self.omega_clique)
        self.nodes = 0

    def upper_bound(self) -> int:
        return (self.n * self.w) // 2

    def trivial_layers(self) -> list:
        # a maximum clique of G on every other layer
        K = sum(1 << v for v in self.omega_clique)
        return [K if z % 2 == 0 and z < self.n - 1 else 0 for z in range(self.n)]

    def _check_deadline(self):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise ResourceCapError("layered clique search exceeded its time budget")

    def feasible(self, T: int):
        """Layers of total size >= T, or None when no such sequence exists."""
        n, w, adj, full = self.n, self.w, self.adj, self.full
        counter = np.zeros(1, dtype=np.int64)
        layers = np.zeros(n, dtype=np.uint64)
        try:
            for P in range(w, -(-2 * T // n) - 1, -1):
                f = rest_table(n, P, w)
                reps = _orbit_representatives(cliques_of_size(self.g.adj, self.g.full_mask, P),
                                              self.symmetries)
                for u in reps:
                    members = list(iter_bits(u))
                    for k0 in range(P, (P - 1) // 2, -1):
                        k1 = P - k0
                        if P + f[n - 2, k1, k0] < T:
                            continue
                        for comb in itertools.combinations(members, k0):
                            self._check_deadline()
                            K0 = np.uint64(sum(1 << v for v in comb))
                            K1 = np.uint64(u) & ~K0
                            c0 = np.uint64(_common(adj, K0, full))
                            start = np.uint64(_common(adj, K1, full))
                            layers[:] = 0
                            layers[0], layers[1] = K0, K1
                            if _grow(adj, full, n, P, T, f, k0, c0, 2, np.uint64(0), 0, start,
                                     full, P, P - k1, layers, counter):
                                return [int(x) for x in layers]
        finally:
            self.nodes += int(counter[0])
        return None


def layers_to_clique(layers, n: int) -> list:
    """Vertices a*n + z of G * complement(C_n) for a in layer z."""
    return sorted(a * n + z for z, K in enumerate(layers) for a in iter_bits(K))


def anticycle_product_clique(g: Graph, n: int, symmetries=None,
                             budget_seconds: float | None = None) -> list:
    """A maximum clique of G * complement(C_n), as product vertices a*n + z.

    ``symmetries`` is an optional array of automorphisms of G (a group), used to
    skip equivalent starting pairs. When the budget runs out the exception's
    ``partial`` holds the best clique found so far.
    """
    deadline = None if budget_seconds is None else time.monotonic() + budget_seconds
    search = LayeredSearch(g, n, symmetries, deadline=deadline)
    best = search.trivial_layers()
    lower = sum(int(K).bit_count() for K in best)
    try:
        for T in range(search.upper_bound(), lower, -1):
            found = search.feasible(T)
            if found is not None:
                best = found
                break
    except ResourceCapError as exc:
        exc.partial = layers_to_clique(best, n)
        raise
    return layers_to_clique(best, n)
