"""Induced-subgraph counting, odd hole / antihole search and perfectness tests.

Perfectness is decided through the strong perfect graph theorem: a graph is
perfect iff neither it nor its complement has an induced odd cycle of length
at least five.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import config
from .errors import InvalidInput, ResourceCapError
from .graph import (Graph, anticycle, circulant, complement, cycle, find_isomorphism,
                    iter_bits, johnson, shrikhande)

TARGET_CAP = 12
MINIMAL_IMPERFECT_CAP = 16


@dataclass(frozen=True)
class HoleWitness:
    """Induced odd cycle in the graph (``hole``) or in its complement (``antihole``).

    ``vertices`` lists the cycle in traversal order, 0-based; the JSON form
    adds 1-based ``labels`` for display.
    """

    kind: str
    vertices: tuple

    @property
    def length(self):
        return len(self.vertices)

    def one_based(self):
        return [v + 1 for v in self.vertices]

    def to_dict(self):
        return {"kind": self.kind, "vertices": list(self.vertices), "labels": self.one_based()}

    @classmethod
    def from_dict(cls, d):
        return cls(d["kind"], tuple(d["vertices"]))


# -- counting -----------------------------------------------------------------


def _count_with_leaders(g: Graph, h: Graph, leaders) -> int:
    k = h.n
    target_edges = h.num_edges
    target_degrees = sorted(h.degrees())
    adj = g.adj
    n = g.n
    count = 0

    def rec(mask, last, size, edges):
        nonlocal count
        if size == k:
            if edges != target_edges:
                return
            degs = sorted((adj[v] & mask).bit_count() for v in iter_bits(mask))
            if degs != target_degrees:
                return
            sub = g.induced(list(iter_bits(mask)))
            if find_isomorphism(sub, h, cap=max(k, TARGET_CAP)) is not None:
                count += 1
            return
        # not enough vertices left to fill the subset
        for v in range(last + 1, n - (k - size) + 1):
            e = edges + (adj[v] & mask).bit_count()
            if e > target_edges:
                continue
            rec(mask | 1 << v, v, size + 1, e)

    for s in leaders:
        rec(1 << s, s, 1, 0)
    return count


def count_induced(g: Graph, h: Graph, threads: int = 1) -> int:
    """Number of vertex subsets of ``g`` whose induced subgraph is isomorphic to ``h``.

    Subsets are enumerated lexicographically; partial subsets whose edge count
    already exceeds that of ``h`` are abandoned, and complete ones must match
    the degree multiset of ``h`` before the isomorphism test runs.
    """
    if h.n > TARGET_CAP:
        raise ResourceCapError(f"census targets are limited to {TARGET_CAP} vertices, got {h.n}")
    if h.n == 0:
        return 1
    if h.n > g.n:
        return 0
    leaders = list(range(g.n - h.n + 1))
    if threads <= 1 or len(leaders) < 2:
        return _count_with_leaders(g, h, leaders)
    # partition by leading (smallest) vertex; the sum is schedule-independent
    parts = [leaders[i::threads] for i in range(threads)]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return sum(pool.map(_count_with_leaders, [g] * threads, [h] * threads, parts))


# -- odd holes ----------------------------------------------------------------


def _holes(adj, n, length, start):
    """Yield induced cycles of ``length`` whose smallest vertex is ``start``.

    Chordless paths are grown from ``start`` using larger vertices only; each
    new vertex must avoid the neighbourhoods of all interior path vertices,
    and must touch ``start`` exactly when it closes the cycle.
    """
    above = ~((1 << (start + 1)) - 1)
    path = [start]

    def grow(inpath, forbid):
        k = len(path) - 1
        last = path[-1]
        cand = adj[last] & above & ~inpath & ~forbid
        if k >= 1:
            if k + 1 < length - 1:
                cand &= ~adj[start]
            else:
                cand &= adj[start]
        for v in iter_bits(cand):
            path.append(v)
            if len(path) == length:
                yield tuple(path)
            else:
                # interior vertices: everything except start and the new tip
                yield from grow(inpath | 1 << v, forbid | (adj[last] if k >= 1 else 0))
            path.pop()

    yield from grow(1 << start, 0)


def _oriented(cycle_path):
    # traverse so the second vertex is smaller than the last one
    if cycle_path[1] > cycle_path[-1]:
        return (cycle_path[0],) + tuple(reversed(cycle_path[1:]))
    return tuple(cycle_path)


def _find_hole_of_length(g: Graph, length: int):
    for s in range(g.n - length + 1):
        best = None
        for c in _holes(g.adj, g.n, length, s):
            key = tuple(sorted(c))
            if best is None or key < best[0]:
                best = (key, c)
        if best is not None:
            return _oriented(best[1])
    return None


def find_odd_hole(g: Graph, min_len: int = 5, max_len: int | None = None, kind: str = "hole"):
    """Shortest induced odd cycle of length >= ``min_len``, or None.

    Within one length the witness with the lexicographically smallest vertex
    set is returned.
    """
    top = g.n if max_len is None else min(max_len, g.n)
    length = max(min_len, 3)
    if length % 2 == 0:
        length += 1
    while length <= top:
        c = _find_hole_of_length(g, length)
        if c is not None:
            return HoleWitness(kind, c)
        length += 2
    return None


def find_odd_antihole(g: Graph, min_len: int = 5):
    return find_odd_hole(complement(g), min_len, kind="antihole")


def largest_odd_hole(g: Graph, min_len: int = 5, kind: str = "hole"):
    """Longest induced odd cycle of length >= ``min_len``, or None."""
    length = g.n if g.n % 2 else g.n - 1
    while length >= min_len:
        c = _find_hole_of_length(g, length)
        if c is not None:
            return HoleWitness(kind, c)
        length -= 2
    return None


def has_odd_hole(g: Graph) -> bool:
    return find_odd_hole(g) is not None


def has_odd_antihole(g: Graph) -> bool:
    """True iff the complement has an odd hole; C_5 counts as both hole and antihole."""
    return find_odd_hole(complement(g)) is not None


def is_perfect(g: Graph) -> bool:
    return not has_odd_hole(g) and not has_odd_antihole(g)


def is_minimally_imperfect(g: Graph) -> bool:
    if g.n > MINIMAL_IMPERFECT_CAP:
        raise ResourceCapError(f"minimal imperfection limited to {MINIMAL_IMPERFECT_CAP} vertices")
    if is_perfect(g):
        return False
    return all(is_perfect(g.delete_vertex(v)) for v in range(g.n))


# -- census reports -----------------------------------------------------------


def parse_target(name: str) -> Graph:
    """``C7`` is the 7-cycle, ``C7bar`` its complement."""
    text = name.strip()
    bar = text.endswith("bar")
    core = text[:-3] if bar else text
    if not core.startswith("C") or not core[1:].isdigit():
        raise InvalidInput(f"unknown census target {name!r}; expected e.g. C5 or C7bar")
    n = int(core[1:])
    if n < 3:
        raise InvalidInput(f"census target {name!r} too small")
    return anticycle(n) if bar else cycle(n)


DEFAULT_TARGETS = ("C5", "C7", "C7bar", "C9", "C9bar")


@dataclass
class CensusReport:
    graph: str
    counts: dict = field(default_factory=dict)
    elapsed_ms: dict = field(default_factory=dict)

    def row(self):
        return tuple(self.counts.values())

    def to_dict(self):
        return {"graph": self.graph, "counts": dict(self.counts), "elapsed_ms": dict(self.elapsed_ms)}

    @classmethod
    def from_dict(cls, d):
        return cls(d["graph"], dict(d["counts"]), dict(d["elapsed_ms"]))


def census(g: Graph, targets=DEFAULT_TARGETS, threads: int = 1) -> CensusReport:
    report = CensusReport(g.label or f"graph[{g.n}]")
    for name in targets:
        h = parse_target(name)
        t0 = time.perf_counter()
        report.counts[name] = count_induced(g, h, threads=threads)
        report.elapsed_ms[name] = round((time.perf_counter() - t0) * 1000.0, 3)
    return report


def table1_graphs():
    """(row name, graph) for the rows of the census table that are defined by a graph."""
    mermin = complement(shrikhande())
    return [
        ("KCBS", cycle(5)),
        ("CHSH", circulant(8, [1, 4])),
        ("KCBS-twin", johnson(5, 2)),
        ("Mermin", mermin),
    ]


def table1_census(threads: int | None = None) -> list:
    threads = 1 if threads is None else threads
    return [census(g, DEFAULT_TARGETS, threads=threads) for _, g in table1_graphs()]


def default_threads():
    return config.threads()
