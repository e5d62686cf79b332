"""Lovász-optimum orthonormal representations of odd cycles and antiholes,
faithfulness checks, and lower bounds on the dimension of a faithful representation.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .census import largest_odd_hole, find_odd_hole
from .errors import InvalidParameter
from .graph import (Graph, anticycle, complement, complete_minus_matching, cycle,
                    find_isomorphism, is_isomorphic)
from .invariants import clique_number
from .theta import theta_anticycle, theta_cycle

ADJ_TOL = 1e-9
NONADJ_TOL = 1e-6
NORM_TOL = 1e-12
DISTINCT_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class OrthonormalRepresentation:
    """Unit vectors (rows of ``vectors``) plus a handle, meant to realise ``target``.

    ``labeling[t]`` is the row holding the vector of target vertex ``t``; when
    it is None the orthogonality pattern is matched to ``target`` up to
    isomorphism.
    """

    vectors: np.ndarray
    handle: np.ndarray
    target: Graph
    labeling: tuple | None = None

    @property
    def dimension(self):
        return self.vectors.shape[1]

    def gram(self):
        return self.vectors @ self.vectors.T

    def orthogonality_graph(self, tol=ADJ_TOL) -> Graph:
        G = np.abs(self.gram())
        n = len(self.vectors)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if G[i, j] <= tol]
        return Graph.from_edges(n, edges)

    def to_json(self) -> str:
        doc = {
            "dimension": int(self.dimension),
            "handle": [float(x) for x in self.handle],
            "vectors": [[float(x) for x in v] for v in self.vectors],
            "graph": self.target.label,
        }
        # repr of a float is the shortest string that round-trips exactly
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text, target: Graph):
        doc = json.loads(text)
        return cls(np.array(doc["vectors"], dtype=float), np.array(doc["handle"], dtype=float), target)


def _check_odd(n, smallest):
    if n < smallest or n % 2 == 0:
        raise InvalidParameter(f"need an odd n >= {smallest}, got {n}")


def build_or_cycle(n: int) -> OrthonormalRepresentation:
    """Three-dimensional representation of C_n (n odd >= 5) with handle (1, 0, 0).

    Vector j is (cos p, sin p cos(2 pi j/n), sin p sin(2 pi j/n)) with
    cos^2 p = theta(C_n)/n; vectors j and j +- (n-1)/2 are orthogonal, so target
    vertex t (cycle order) is row t*(n-1)/2 mod n.
    """
    _check_odd(n, 5)
    c2 = theta_cycle(n).value / n
    cp, sp = math.sqrt(c2), math.sqrt(1.0 - c2)
    j = np.arange(n)
    ang = 2 * math.pi * j / n
    vectors = np.column_stack([np.full(n, cp), sp * np.cos(ang), sp * np.sin(ang)])
    step = (n - 1) // 2
    labeling = tuple((t * step) % n for t in range(n))
    return OrthonormalRepresentation(vectors, np.array([1.0, 0.0, 0.0]), cycle(n), labeling)


def build_or_anticycle(n: int) -> OrthonormalRepresentation:
    """(n-2)-dimensional representation of the antihole on n vertices with handle e_0.

    Row j is orthogonal to row k exactly when j, k are not consecutive mod n.
    n = 5 uses the cycle construction, the two graphs being isomorphic.
    """
    _check_odd(n, 5)
    if n == 5:
        rep = build_or_cycle(5)
        phi = find_isomorphism(anticycle(5), rep.orthogonality_graph())
        return OrthonormalRepresentation(rep.vectors, rep.handle, anticycle(5), tuple(phi))
    th = theta_anticycle(n).value
    cpi = math.cos(math.pi / n)
    d = n - 2
    V = np.zeros((n, d))
    V[:, 0] = math.sqrt(th / n)
    j = np.arange(n)
    for m in range(1, (n - 3) // 2 + 1):
        amp = math.sqrt(2 * (cpi + (-1) ** (m + 1) * math.cos((m + 1) * math.pi / n)) / (n * cpi))
        T = np.where((j * (m + 1)) % 2 == 0, 1.0, -1.0) * amp
        R = j * (m + 1) * math.pi / n
        V[:, 2 * m - 1] = T * np.cos(R)
        V[:, 2 * m] = T * np.sin(R)
    handle = np.zeros(d)
    handle[0] = 1.0
    return OrthonormalRepresentation(V, handle, anticycle(n), tuple(range(n)))


@dataclass(frozen=True)
class FaithfulnessReport:
    ok: bool
    max_adjacent_residual: float
    min_nonadjacent_magnitude: float
    max_norm_error: float
    min_distinct_distance: float
    pattern_matches: bool
    message: str = ""

    def to_dict(self):
        return dict(self.__dict__)


def verify_faithful(rep: OrthonormalRepresentation, adj_tol=ADJ_TOL, nonadj_tol=NONADJ_TOL,
                    norm_tol=NORM_TOL, distinct_tol=DISTINCT_TOL) -> FaithfulnessReport:
    """Check unit norms, distinct vectors, and orthogonality exactly on the target's edges."""
    V = np.asarray(rep.vectors, dtype=float)
    n = len(V)
    target = rep.target
    if n != target.n:
        return FaithfulnessReport(False, math.inf, 0.0, math.inf, 0.0, False,
                                  f"{n} vectors for a {target.n}-vertex graph")
    norm_err = float(np.max(np.abs(np.linalg.norm(V, axis=1) - 1.0))) if n else 0.0
    diff = V[:, None, :] - V[None, :, :]
    dist = np.linalg.norm(diff, axis=2)
    iu = np.triu_indices(n, 1)
    min_dist = float(dist[iu].min()) if n > 1 else math.inf

    pattern = rep.orthogonality_graph(adj_tol)
    if rep.labeling is not None:
        lab = rep.labeling
        phi = [0] * n
        for t, row in enumerate(lab):
            phi[t] = row
        matches = sorted(lab) == list(range(n)) and all(
            pattern.has_edge(phi[a], phi[b]) == target.has_edge(a, b)
            for a in range(n) for b in range(a + 1, n))
    else:
        phi = find_isomorphism(target, pattern)
        matches = phi is not None

    G = rep.gram()
    adj_res, nonadj_min = 0.0, math.inf
    if matches:
        for a in range(n):
            for b in range(a + 1, n):
                val = abs(G[phi[a], phi[b]])
                if target.has_edge(a, b):
                    adj_res = max(adj_res, val)
                else:
                    nonadj_min = min(nonadj_min, val)
    else:
        adj_res = math.inf
        nonadj_min = 0.0

    ok = (matches and adj_res <= adj_tol and nonadj_min >= nonadj_tol
          and norm_err <= norm_tol and min_dist >= distinct_tol)
    msg = "" if matches else "orthogonality pattern does not match the target graph"
    return FaithfulnessReport(ok, adj_res, nonadj_min, norm_err, min_dist, matches, msg)


def handle_value(rep: OrthonormalRepresentation) -> float:
    """Sum over vertices of <v_j, handle>^2."""
    return float(np.sum((rep.vectors @ rep.handle) ** 2))


def event_probabilities(rep: OrthonormalRepresentation) -> np.ndarray:
    return (rep.vectors @ rep.handle) ** 2


# -- dimension bounds ---------------------------------------------------------


@dataclass(frozen=True)
class DimensionWitness:
    """Vertex set (1-based, cycle numbering) of an antihole that no faithful
    representation can realise below ``bound`` dimensions."""

    n: int
    case: str
    vertex_set: tuple
    bound: int
    verified: bool

    def to_dict(self):
        return {"n": self.n, "case": self.case, "vertex_set": list(self.vertex_set),
                "bound": self.bound, "verified": self.verified}


def dimension_witness(n: int) -> DimensionWitness:
    """Vertices {1,2, 4,5, ..., 3i+1,3i+2, ...} of the antihole on n vertices (plus 3m+1
    when n = 3m+2) induce K_k minus floor(k/2) disjoint edges, k = floor(2n/3).
    """
    _check_odd(n, 5)
    m, r = divmod(n, 3)
    case = {0: "C1", 1: "C2", 2: "C3"}[r]
    verts = []
    for i in range(m):
        verts += [3 * i + 1, 3 * i + 2]
    if r == 2:
        verts.append(3 * m + 1)
    k = len(verts)
    sub = anticycle(n).induced([v - 1 for v in verts])
    verified = is_isomorphic(sub, complete_minus_matching(k))
    return DimensionWitness(n, case, tuple(verts), (2 * n) // 3, verified)


@dataclass(frozen=True)
class DimensionBound:
    bound: int
    provenance: tuple

    def to_dict(self):
        return {"bound": self.bound, "provenance": [dict(p) for p in self.provenance]}

    @classmethod
    def from_dict(cls, d):
        return cls(d["bound"], tuple(d["provenance"]))


def dimension_lower_bound(g: Graph, omega: int | None = None) -> DimensionBound:
    """Largest of: the clique number; 3 when an odd hole is present; floor(2n/3)
    for the largest induced odd antihole on n vertices.
    """
    w = clique_number(g) if omega is None else omega
    terms = [{"term": "clique", "value": w, "source": "plumbing",
              "detail": "k mutually orthogonal vectors need k dimensions"}]
    if find_odd_hole(g) is not None:
        terms.append({"term": "odd_hole", "value": 3, "source": "an induced odd hole has no faithful representation in 2 dimensions"})
    anti = largest_odd_hole(complement(g), kind="antihole")
    if anti is not None:
        terms.append({"term": "odd_antihole", "value": (2 * anti.length) // 3,
                      "source": f"antihole on {anti.length} vertices",
                      "vertices": [v + 1 for v in anti.vertices]})
    best = max(t["value"] for t in terms) if terms else 0
    for t in terms:
        t["winner"] = t["value"] == best
    return DimensionBound(best, tuple(terms))
