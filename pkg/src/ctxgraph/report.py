"""Full invariant report for one graph."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from .census import (HoleWitness, MINIMAL_IMPERFECT_CAP, find_odd_antihole, find_odd_hole,
                     is_minimally_imperfect)
from .errors import ResourceCapError
from .graph import Graph
from .invariants import CHROMATIC_CAP, chromatic_number, clique_number, independence_number
from .orthorep import DimensionBound, dimension_lower_bound
from .theta import SDP_CAP, ContextualityClass, ThetaValue, classify, theta


@dataclass
class AnalysisReport:
    label: str
    n: int
    edges: int
    alpha: int | None = None
    omega: int | None = None
    chi: int | None = None
    theta: ThetaValue | None = None
    perfect: bool | None = None
    minimal_imperfect: bool | None = None
    hole: HoleWitness | None = None
    antihole: HoleWitness | None = None
    classification: ContextualityClass | None = None
    dimension: DimensionBound | None = None
    timings_ms: dict = field(default_factory=dict)

    def to_dict(self):
        def opt(x):
            return None if x is None else x.to_dict()

        return {
            "label": self.label, "n": self.n, "edges": self.edges,
            "alpha": self.alpha, "omega": self.omega, "chi": self.chi,
            "theta": opt(self.theta), "perfect": self.perfect,
            "minimal_imperfect": self.minimal_imperfect,
            "hole": opt(self.hole), "antihole": opt(self.antihole),
            "classification": opt(self.classification),
            "dimension": opt(self.dimension), "timings_ms": dict(self.timings_ms),
        }

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        def opt(kind, x):
            return None if x is None else kind.from_dict(x)

        return cls(
            d["label"], d["n"], d["edges"], d["alpha"], d["omega"], d["chi"],
            opt(ThetaValue, d["theta"]), d["perfect"], d["minimal_imperfect"],
            opt(HoleWitness, d["hole"]), opt(HoleWitness, d["antihole"]),
            opt(ContextualityClass, d["classification"]),
            opt(DimensionBound, d["dimension"]), dict(d["timings_ms"]),
        )

    def consistency_problems(self) -> list:
        """Violations of: perfect => QNCG, and QCG => some odd hole or antihole."""
        problems = []
        verdict = self.classification.verdict if self.classification else None
        if self.perfect and verdict == "QCG":
            problems.append("perfect graph classified QCG")
        if verdict == "QCG" and self.hole is None and self.antihole is None:
            problems.append("QCG without an odd hole or antihole witness")
        if self.perfect is not None and self.perfect == (self.hole is not None or self.antihole is not None):
            problems.append("perfectness disagrees with hole/antihole witnesses")
        return problems


def analyze(g: Graph, budget_seconds: float | None = None, report: AnalysisReport | None = None) -> AnalysisReport:
    """Compute every invariant that is within its cap.

    ``report`` may be passed in to collect partial results if a cap is hit.
    """
    r = report if report is not None else AnalysisReport(g.label or f"graph[{g.n}]", g.n, g.num_edges)

    def timed(name, fn):
        t0 = time.perf_counter()
        out = fn()
        r.timings_ms[name] = round((time.perf_counter() - t0) * 1000.0, 3)
        return out

    r.alpha = timed("alpha", lambda: independence_number(g, budget_seconds))
    r.omega = timed("omega", lambda: clique_number(g, budget_seconds))
    if g.n <= CHROMATIC_CAP:
        r.chi = timed("chi", lambda: chromatic_number(g))
    r.hole = timed("hole", lambda: find_odd_hole(g))
    r.antihole = timed("antihole", lambda: find_odd_antihole(g))
    r.perfect = r.hole is None and r.antihole is None
    if g.n <= MINIMAL_IMPERFECT_CAP:
        r.minimal_imperfect = timed("minimal_imperfect", lambda: is_minimally_imperfect(g))
    if g.n <= SDP_CAP:
        r.theta = timed("theta", lambda: theta(g))
        r.classification = classify(g, alpha=r.alpha, th=r.theta)
    r.dimension = timed("dimension", lambda: dimension_lower_bound(g, omega=r.omega))
    return r


def analyze_or_partial(g: Graph, budget_seconds=None):
    r = AnalysisReport(g.label or f"graph[{g.n}]", g.n, g.num_edges)
    try:
        analyze(g, budget_seconds, r)
    except ResourceCapError as exc:
        exc.partial = r
        raise
    return r
