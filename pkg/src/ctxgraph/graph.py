"""Immutable simple graphs stored as adjacency bitrows, plus the named constructors.

Vertex ``i`` is bit ``i`` of each row. All constructors are pure; a ``Graph``
is hashable and safe to share.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import config
from .errors import InvalidInput, InvalidParameter, ResourceCapError


def iter_bits(x: int):
    """Yield the indices of the set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def bits_of(vertices) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``vertex_transitive`` is tri-state: True/False when known, None when
    unknown. Equality compares only the vertex count and adjacency.
    """

    n: int
    adj: tuple
    label: str | None = None
    vertex_transitive: bool | None = None

    def __post_init__(self):
        if self.n < 0:
            raise InvalidParameter("vertex count must be non-negative")
        adj = tuple(int(r) for r in self.adj)
        object.__setattr__(self, "adj", adj)
        if len(adj) != self.n:
            raise InvalidInput(f"expected {self.n} adjacency rows, got {len(adj)}")
        full = (1 << self.n) - 1
        for i, row in enumerate(adj):
            if row & ~full or row < 0:
                raise InvalidInput(f"row {i} references a vertex outside 0..{self.n - 1}")
            if row >> i & 1:
                raise InvalidInput(f"self-loop at vertex {i}")
            for j in iter_bits(row):
                if not adj[j] >> i & 1:
                    raise InvalidInput(f"adjacency not symmetric at ({i}, {j})")

    @classmethod
    def from_edges(cls, n, edges, label=None, vertex_transitive=None):
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidInput(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InvalidInput(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), label, vertex_transitive)

    @classmethod
    def from_matrix(cls, matrix, label=None):
        m = np.asarray(matrix)
        n = m.shape[0]
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if m[i, j]]
        return cls.from_edges(n, edges, label=label)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        name = f" {self.label!r}" if self.label else ""
        return f"<Graph{name} n={self.n} m={self.num_edges}>"

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def has_edge(self, u, v) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list:
        return [r.bit_count() for r in self.adj]

    def neighbors(self, v) -> list:
        return list(iter_bits(self.adj[v]))

    def edges(self):
        for i, row in enumerate(self.adj):
            for j in iter_bits(row >> (i + 1)):
                yield i, i + 1 + j

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.n, self.n), dtype=np.int8)
        for i, j in self.edges():
            a[i, j] = a[j, i] = 1
        return a

    def induced(self, vertices, label=None) -> Graph:
        """Subgraph induced by ``vertices``, relabelled ``0..k-1`` in the given order."""
        vs = list(vertices)
        pos = {v: k for k, v in enumerate(vs)}
        if len(pos) != len(vs):
            raise InvalidInput("duplicate vertex in induced subgraph request")
        rows = []
        for v in vs:
            r = 0
            for w in iter_bits(self.adj[v]):
                k = pos.get(w)
                if k is not None:
                    r |= 1 << k
            rows.append(r)
        return Graph(len(vs), tuple(rows), label)

    def induced_edge_count(self, mask: int) -> int:
        return sum((self.adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2

    def delete_vertex(self, v) -> Graph:
        return self.induced([u for u in range(self.n) if u != v])

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == self.full_mask

    def is_cycle(self) -> bool:
        """True iff the graph is a single cycle through every vertex (n >= 3)."""
        return self.n >= 3 and all(r.bit_count() == 2 for r in self.adj) and self.is_connected()


# -- constructors -------------------------------------------------------------


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameter(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)],
                            label=f"cycle:{n}", vertex_transitive=True)


def anticycle(n: int) -> Graph:
    g = complement(cycle(n))
    return Graph(g.n, g.adj, f"anticycle:{n}", True)


def complete(n: int) -> Graph:
    if n < 0:
        raise InvalidParameter("complete graph needs n >= 0")
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << i) for i in range(n)), f"complete:{n}", True)


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n, f"empty:{n}", True)


def complete_minus_matching(d: int) -> Graph:
    """K_d with the disjoint edges (0,1), (2,3), ... removed."""
    if d < 1:
        raise InvalidParameter("complete_minus_matching needs d >= 1")
    edges = [(i, j) for i in range(d) for j in range(i + 1, d)
             if not (i % 2 == 0 and j == i + 1)]
    return Graph.from_edges(d, edges, label=f"complete_minus_matching:{d}")


def circulant(n: int, connections) -> Graph:
    conns = sorted(set(int(c) for c in connections))
    if n < 3:
        raise InvalidParameter(f"circulant needs n >= 3, got {n}")
    if not conns:
        raise InvalidParameter("circulant needs at least one connection")
    for c in conns:
        if not 1 <= c <= n // 2:
            raise InvalidParameter(f"connection {c} outside 1..{n // 2}")
    edges = {(min(i, (i + c) % n), max(i, (i + c) % n)) for i in range(n) for c in conns}
    label = f"circulant:{n}:{','.join(map(str, conns))}"
    return Graph.from_edges(n, sorted(edges), label=label, vertex_transitive=True)


def johnson(n: int, k: int) -> Graph:
    if not 1 <= k <= n:
        raise InvalidParameter(f"johnson needs 1 <= k <= n, got n={n}, k={k}")
    subsets = [frozenset(s) for s in itertools.combinations(range(1, n + 1), k)]
    edges = [(a, b) for a, b in itertools.combinations(range(len(subsets)), 2)
             if len(subsets[a] & subsets[b]) == k - 1]
    return Graph.from_edges(len(subsets), edges, label=f"johnson:{n}:{k}", vertex_transitive=True)


def shrikhande() -> Graph:
    conn = {(1, 0), (3, 0), (0, 1), (0, 3), (1, 1), (3, 3)}
    edges = []
    for a, b, c, d in itertools.product(range(4), repeat=4):
        u, v = 4 * a + b, 4 * c + d
        if u < v and ((a - c) % 4, (b - d) % 4) in conn:
            edges.append((u, v))
    return Graph.from_edges(16, edges, label="shrikhande", vertex_transitive=True)


def complement(g: Graph) -> Graph:
    full = g.full_mask
    rows = tuple(full & ~r & ~(1 << i) for i, r in enumerate(g.adj))
    label = f"complement({g.label})" if g.label else None
    return Graph(g.n, rows, label, g.vertex_transitive)


def _conjunction(a, b):
    if a is False or b is False:
        return False
    if a is True and b is True:
        return True
    return None


def disjunctive_product(g: Graph, h: Graph, max_vertices: int | None = None) -> Graph:
    """Co-normal product: (g,h) ~ (g',h') iff g ~ g' or h ~ h'.

    Vertex (a, b) is numbered ``a * h.n + b``.
    """
    cap = config.max_product_vertices() if max_vertices is None else max_vertices
    n = g.n * h.n
    if n > cap:
        raise ResourceCapError(f"product has {n} vertices, cap is {cap}")
    m = h.n
    block = (1 << m) - 1
    # repeat pattern places one copy of an H-row in every G-block
    repeat = sum(1 << (a * m) for a in range(g.n))
    expanded = [sum(block << (b * m) for b in iter_bits(row)) for row in g.adj]
    tiled = [row * repeat for row in h.adj]
    rows = tuple(expanded[a] | tiled[b] for a in range(g.n) for b in range(m))
    label = f"product({g.label},{h.label})" if g.label and h.label else None
    return Graph(n, rows, label, _conjunction(g.vertex_transitive, h.vertex_transitive))


def power(g: Graph, m: int, max_vertices: int | None = None) -> Graph:
    """Disjunctive power G^{*m}."""
    if m < 1:
        raise InvalidParameter("power needs m >= 1")
    cap = config.max_product_vertices() if max_vertices is None else max_vertices
    if g.n ** m > cap:
        raise ResourceCapError(f"power has {g.n ** m} vertices, cap is {cap}")
    out = g
    for _ in range(m - 1):
        out = disjunctive_product(out, g, max_vertices=cap)
    label = f"power({g.label},{m})" if g.label else None
    return Graph(out.n, out.adj, label, out.vertex_transitive)


# -- isomorphism --------------------------------------------------------------


def _joint_colors(graphs, rounds=2):
    """Colour refinement run on several graphs with one shared colour table."""
    colors = [g.degrees() for g in graphs]
    for _ in range(rounds):
        sigs = [[(c[v], tuple(sorted(c[w] for w in iter_bits(g.adj[v])))) for v in range(g.n)]
                for g, c in zip(graphs, colors)]
        table = {sig: k for k, sig in enumerate(sorted({x for s in sigs for x in s}))}
        colors = [[table[x] for x in s] for s in sigs]
    return colors


def _isomorphisms(g: Graph, h: Graph, fixed=None, cap: int | None = None):
    """Yield every ``phi`` with g.u -> h.phi[u] preserving adjacency.

    ``fixed`` optionally pins one pair ``(u, v)``. Candidate images are pruned by
    degree and by the sorted degrees of the neighbourhood (two refinement rounds).
    """
    cap = config.isomorphism_cap() if cap is None else cap
    if g.n != h.n:
        return
    if g.n > cap:
        raise ResourceCapError(f"isomorphism test limited to {cap} vertices, got {g.n}")
    if g.num_edges != h.num_edges or sorted(g.degrees()) != sorted(h.degrees()):
        return
    n = g.n
    if n == 0:
        yield []
        return
    # refine both graphs in one shared signature table so colours are comparable
    sg, sh = _joint_colors([g, h])
    if sorted(sg) != sorted(sh):
        return
    by_sig = {}
    for v in range(n):
        by_sig.setdefault(sh[v], []).append(v)
    cands = [by_sig.get(sg[u], []) for u in range(n)]

    # order g's vertices: most constrained first, then stay connected to placed ones
    order = []
    placed = 0
    remaining = set(range(n))
    while remaining:
        u = min(remaining, key=lambda x: (-(g.adj[x] & placed).bit_count(), len(cands[x]), x))
        order.append(u)
        placed |= 1 << u
        remaining.discard(u)

    phi = [-1] * n
    used = [False] * n
    if fixed is not None:
        fu, fv = fixed
        if fv not in cands[fu]:
            return
        order.remove(fu)
        order.insert(0, fu)

    def consistent(u, v, depth):
        gu, hv = g.adj[u], h.adj[v]
        for k in range(depth):
            w = order[k]
            if (gu >> w & 1) != (hv >> phi[w] & 1):
                return False
        return True

    def extend(depth):
        if depth == n:
            yield list(phi)
            return
        u = order[depth]
        options = cands[u]
        if depth == 0 and fixed is not None:
            options = [fixed[1]]
        for v in options:
            if used[v] or not consistent(u, v, depth):
                continue
            phi[u] = v
            used[v] = True
            yield from extend(depth + 1)
            used[v] = False
            phi[u] = -1

    yield from extend(0)


def find_isomorphism(g: Graph, h: Graph, fixed=None, cap: int | None = None):
    """Return a list ``phi`` with g.u -> h.phi[u] preserving adjacency, or None.

    ``fixed`` optionally pins one pair ``(u, v)``.
    """
    return next(_isomorphisms(g, h, fixed, cap), None)


def automorphisms(g: Graph, limit: int = 100000, cap: int | None = None) -> list:
    """All automorphisms of ``g`` as image lists; ResourceCapError past ``limit``."""
    out = []
    for phi in _isomorphisms(g, g, cap=cap):
        out.append(phi)
        if len(out) > limit:
            raise ResourceCapError(f"automorphism group has more than {limit} elements")
    return out


def is_isomorphic(g: Graph, h: Graph, cap: int | None = None) -> bool:
    return find_isomorphism(g, h, cap=cap) is not None


def detect_vertex_transitive(g: Graph, cap: int | None = None) -> bool | None:
    """Search automorphisms mapping vertex 0 to every other vertex; None above the cap."""
    cap = config.isomorphism_cap() if cap is None else cap
    if g.n > cap:
        return None
    if g.n <= 1:
        return True
    return all(find_isomorphism(g, g, fixed=(0, v), cap=cap) is not None for v in range(g.n))


# -- spec strings and files ---------------------------------------------------


def load_edge_list(path) -> Graph:
    """Read the ``n`` / ``u v`` edge-list format; ``#`` starts a comment line."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise InvalidInput(f"{path}: missing vertex count")
    try:
        n = int(lines[0])
    except ValueError:
        raise InvalidInput(f"{path}: first line must be the vertex count") from None
    seen = set()
    for k, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise InvalidInput(f"{path}: line {k}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise InvalidInput(f"{path}: line {k}: non-integer vertex") from None
        if not 0 <= u < v < n:
            raise InvalidInput(f"{path}: line {k}: need 0 <= u < v < n, got {u} {v}")
        if (u, v) in seen:
            raise InvalidInput(f"{path}: line {k}: duplicate edge {u} {v}")
        seen.add((u, v))
    return Graph.from_edges(n, sorted(seen), label=f"file:{path}")


def dump_edge_list(g: Graph, path):
    out = [f"# {g.label or 'graph'}", str(g.n)]
    out += [f"{u} {v}" for u, v in g.edges()]
    Path(path).write_text("\n".join(out) + "\n")


class _SpecParser:
    def __init__(self, text, max_vertices):
        self.s = text.strip()
        self.i = 0
        self.max_vertices = max_vertices

    def error(self, msg):
        raise InvalidInput(f"bad graph spec {self.s!r} at offset {self.i}: {msg}")

    def eat(self, token):
        if not self.s.startswith(token, self.i):
            self.error(f"expected {token!r}")
        self.i += len(token)

    def integer(self):
        j = self.i
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        if j == self.i:
            self.error("expected integer")
        value = int(self.s[self.i:j])
        self.i = j
        return value

    def int_list(self):
        values = [self.integer()]
        while self.s.startswith(",", self.i) and self.i + 1 < len(self.s) and self.s[self.i + 1].isdigit():
            self.i += 1
            values.append(self.integer())
        return values

    def path(self):
        # runs to end of input or to the first unbalanced ',' or ')'
        j = self.i
        while j < len(self.s) and self.s[j] not in ",)":
            j += 1
        if j == self.i:
            self.error("expected a path")
        p = self.s[self.i:j]
        self.i = j
        return p

    def spec(self) -> Graph:
        s = self.s
        if s.startswith("cycle:", self.i):
            self.eat("cycle:")
            return cycle(self.integer())
        if s.startswith("anticycle:", self.i):
            self.eat("anticycle:")
            return anticycle(self.integer())
        if s.startswith("circulant:", self.i):
            self.eat("circulant:")
            n = self.integer()
            self.eat(":")
            return circulant(n, self.int_list())
        if s.startswith("johnson:", self.i):
            self.eat("johnson:")
            n = self.integer()
            self.eat(":")
            return johnson(n, self.integer())
        if s.startswith("shrikhande", self.i):
            self.eat("shrikhande")
            return shrikhande()
        if s.startswith("complete:", self.i):
            self.eat("complete:")
            return complete(self.integer())
        if s.startswith("complement(", self.i):
            self.eat("complement(")
            inner = self.spec()
            self.eat(")")
            return complement(inner)
        if s.startswith("product(", self.i):
            self.eat("product(")
            a = self.spec()
            self.eat(",")
            b = self.spec()
            self.eat(")")
            return disjunctive_product(a, b, max_vertices=self.max_vertices)
        if s.startswith("power(", self.i):
            self.eat("power(")
            a = self.spec()
            self.eat(",")
            m = self.integer()
            self.eat(")")
            return power(a, m, max_vertices=self.max_vertices)
        if s.startswith("file:", self.i):
            self.eat("file:")
            return load_edge_list(self.path())
        self.error("unknown graph name")


def parse_graph_spec(text: str, max_vertices: int | None = None) -> Graph:
    """Resolve a textual graph descriptor such as ``complement(cycle:7)``."""
    p = _SpecParser(text, max_vertices)
    g = p.spec()
    if p.i != len(p.s):
        p.error("trailing characters")
    return Graph(g.n, g.adj, p.s, g.vertex_transitive)
