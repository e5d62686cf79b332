"""Exclusivity-principle bounds from Rosenfeld numbers of disjunctive powers.

For a vertex-transitive exclusivity graph G, applying the principle to m
independent copies bounds the sum of probabilities by p(G^{*m})^{1/m}, and
p(G^{*m}) = n^m / omega(G^{*m}).

The clique number of a power of an odd antihole comes from the layered search
in ``layered`` whenever G^{*(m-1)} fits in a machine word. Other powers use
branch and bound on the full product.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import config
from .errors import InvalidParameter, ResourceCapError
from .graph import Graph, anticycle, power
from .invariants import clique_number, fractional_packing, independence_number
from .lp import fmt
from .theta import recognize_basic, theta

try:
    from . import layered
except ImportError:  # numba missing: every power goes through branch and bound
    layered = None

# default tier: powers up to this many vertices, each clique search under the budget
DEFAULT_TIER_VERTICES = 343
DEFAULT_TIER_BUDGET = 600.0
EXTENDED_TIER_VERTICES = 2401
EXTENDED_TIER_BUDGET = 3600.0


@dataclass(frozen=True)
class EBound:
    m: int
    p: Fraction
    value: float
    omega: int | None = None
    method: str | None = None

    def to_dict(self):
        return {"m": self.m, "value": self.value, "p": fmt(self.p)}


def largest_feasible_power(n: int, cap: int) -> int:
    m = 0
    while n > 1 and n ** (m + 1) <= cap:
        m += 1
    return m


def _power_clique_number(g: Graph, m: int, cap: int, budget_seconds):
    """omega(G^{*m}) and the method used to find it."""
    kind = recognize_basic(g)
    if (layered is not None and m >= 2 and kind is not None and kind[0] == "anticycle"
            and g.n ** (m - 1) <= layered.WORD_BITS):
        # the clique number is invariant under relabelling, so use the standard one
        base = anticycle(g.n)
        lower = power(base, m - 1, max_vertices=cap)
        clique = layered.anticycle_product_clique(lower, g.n, layered.power_symmetries(base, m - 1),
                                                  budget_seconds=budget_seconds)
        return len(clique), "layered"
    return clique_number(power(g, m, max_vertices=cap), budget_seconds), "branch-and-bound"


def e_bound(g: Graph, m: int, max_vertices: int | None = None,
            budget_seconds: float | None = None) -> EBound:
    """p(G^{*m}) exactly and its m-th root.

    Vertex-transitive graphs use n^m / omega; otherwise only m = 1 is allowed,
    solved as a linear program over the maximal cliques.
    """
    if m < 1:
        raise InvalidParameter("m must be >= 1")
    cap = config.max_product_vertices() if max_vertices is None else max_vertices
    if not g.vertex_transitive:
        if m > 1:
            raise InvalidParameter("multi-copy bounds need a vertex-transitive graph")
        p = fractional_packing(g, use_transitivity=False)
        return EBound(1, p, float(p))
    if g.n ** m > cap:
        best = largest_feasible_power(g.n, cap)
        raise ResourceCapError(
            f"G^{{*{m}}} has {g.n ** m} vertices, over the cap {cap}; largest feasible m is {best}",
            partial={"largest_feasible_m": best})
    omega, method = _power_clique_number(g, m, cap, budget_seconds)
    p = Fraction(g.n ** m, omega)
    return EBound(m, p, float(p) ** (1.0 / m), omega, method)


@dataclass
class EChain:
    graph: str
    nchv: int
    quantum: float
    e_series: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    def values(self):
        return [e.value for e in self.e_series]

    def to_dict(self):
        return {"graph": self.graph, "nchv": self.nchv, "quantum": self.quantum,
                "e": [e.to_dict() for e in self.e_series], "skipped": list(self.skipped)}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        series = []
        for e in d["e"]:
            p = Fraction(e["p"])
            series.append(EBound(e["m"], p, e["value"]))
        return cls(d["graph"], d["nchv"], d["quantum"], series, list(d["skipped"]))


def chain_report(g: Graph, max_m: int, extended: bool = False,
                 max_vertices: int | None = None, budget_seconds: float | None = None) -> EChain:
    """NCHV bound, quantum bound and the E_m series for m = 1..max_m.

    Entries over the tier's vertex cap or clique budget are skipped with a note.
    """
    if max_vertices is None:
        max_vertices = EXTENDED_TIER_VERTICES if extended else DEFAULT_TIER_VERTICES
    if budget_seconds is None:
        budget_seconds = EXTENDED_TIER_BUDGET if extended else DEFAULT_TIER_BUDGET
    th = theta(g)
    chain = EChain(g.label or f"graph[{g.n}]", independence_number(g), th.value)
    for m in range(1, max_m + 1):
        if m > 1 and not g.vertex_transitive:
            chain.skipped.append({"m": m, "reason": "graph not known to be vertex-transitive"})
            continue
        try:
            chain.e_series.append(e_bound(g, m, max_vertices=max_vertices,
                                          budget_seconds=budget_seconds))
        except ResourceCapError as exc:
            chain.skipped.append({"m": m, "reason": str(exc)})
    return chain


def is_catalog_basic(g: Graph) -> bool:
    return recognize_basic(g) is not None
