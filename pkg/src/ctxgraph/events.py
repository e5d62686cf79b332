"""Events, the exclusivity relation, and the event sets of three inequality families.

An event ``a1,...,ak|m1,...,mk`` reads "measurement m_i gave outcome a_i for
every i". Two events are exclusive when they give different outcomes to a
shared measurement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import InvalidInput, InvalidParameter
from .graph import Graph, find_isomorphism, is_isomorphic
from .invariants import independence_number
from .orthorep import OrthonormalRepresentation, event_probabilities
from .theta import ThetaValue, theta_anticycle, theta_cycle, theta_sdp

# measurement identifiers of the two-party CHSH scenario
A0, A1, B0, B1 = 0, 1, 2, 3


@dataclass(frozen=True, eq=False)
class Event:
    measurements: tuple
    outcomes: tuple

    def __post_init__(self):
        ms = tuple(int(m) for m in self.measurements)
        os_ = tuple(int(a) for a in self.outcomes)
        object.__setattr__(self, "measurements", ms)
        object.__setattr__(self, "outcomes", os_)
        if len(ms) != len(os_):
            raise InvalidInput("an event needs one outcome per measurement")
        if len(set(ms)) != len(ms):
            raise InvalidInput(f"repeated measurement in event {self}")

    def key(self):
        return tuple(sorted(zip(self.measurements, self.outcomes)))

    def __eq__(self, other):
        return isinstance(other, Event) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def assignment(self) -> dict:
        return dict(zip(self.measurements, self.outcomes))

    def __str__(self):
        return f"{','.join(map(str, self.outcomes))}|{','.join(map(str, self.measurements))}"

    @classmethod
    def parse(cls, text: str) -> Event:
        try:
            left, right = text.split("|")
            outcomes = [int(x) for x in left.split(",")]
            measurements = [int(x) for x in right.split(",")]
        except ValueError:
            raise InvalidInput(f"cannot parse event {text!r}; expected 'a1,a2|m1,m2'") from None
        return cls(tuple(measurements), tuple(outcomes))

    def to_dict(self):
        return {"measurements": list(self.measurements), "outcomes": list(self.outcomes)}

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(d["measurements"]), tuple(d["outcomes"]))


def exclusive(e: Event, f: Event) -> bool:
    fa = f.assignment()
    return any(m in fa and fa[m] != a for m, a in zip(e.measurements, e.outcomes))


def exclusivity_graph(events, label=None) -> Graph:
    evs = list(events)
    if len(set(evs)) != len(evs):
        raise InvalidInput("duplicate events")
    edges = [(i, j) for i in range(len(evs)) for j in range(i + 1, len(evs))
             if exclusive(evs[i], evs[j])]
    return Graph.from_edges(len(evs), edges, label=label)


def compatibility_graph(events) -> Graph:
    """Measurements as vertices; two are joined when some event measures both.

    Vertices are the sorted distinct measurement identifiers.
    """
    ids = sorted({m for e in events for m in e.measurements})
    pos = {m: k for k, m in enumerate(ids)}
    edges = set()
    for e in events:
        ms = sorted(pos[m] for m in e.measurements)
        for a in range(len(ms)):
            for b in range(a + 1, len(ms)):
                edges.add((ms[a], ms[b]))
    return Graph.from_edges(len(ids), sorted(edges))


@dataclass(frozen=True, eq=False)
class InequalityInstance:
    family: str
    events: tuple
    exclusivity_graph: Graph
    nchv_bound: int
    quantum_bound: ThetaValue

    def to_dict(self):
        g = self.exclusivity_graph
        return {
            "family": self.family,
            "events": [str(e) for e in self.events],
            "graph": {"n": g.n, "edges": [list(e) for e in g.edges()]},
            "nchv": self.nchv_bound,
            "quantum": self.quantum_bound.to_dict(),
        }

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d):
        events = tuple(Event.parse(s) for s in d["events"])
        g = Graph.from_edges(d["graph"]["n"], [tuple(e) for e in d["graph"]["edges"]])
        return cls(d["family"], events, g, d["nchv"], ThetaValue.from_dict(d["quantum"]))


def _residue(i, n):
    # measurements are numbered 1..n
    return (i - 1) % n + 1


def _check_odd(n, smallest):
    if n < smallest or n % 2 == 0:
        raise InvalidParameter(f"need an odd n >= {smallest}, got {n}")


def chsh_events() -> list:
    """The eight events of the CHSH sum, as (a, b | x, y) with x in {A0, A1}, y in {B0, B1}."""
    table = [(1, 1, 0, 0), (-1, -1, 0, 0), (1, 1, 0, 1), (-1, -1, 0, 1),
             (1, 1, 1, 0), (-1, -1, 1, 0), (1, -1, 1, 1), (-1, 1, 1, 1)]
    return [Event((A0 + x, B0 + y), (a, b)) for a, b, x, y in table]


def build_chsh_events(tol: float = 1e-6) -> InequalityInstance:
    evs = chsh_events()
    g = exclusivity_graph(evs, label="chsh")
    return InequalityInstance("chsh", tuple(evs), g, independence_number(g), theta_sdp(g, tol=tol))


def s_cycle_events(n: int) -> list:
    _check_odd(n, 5)
    h = n // 2
    return [Event((i, _residue(i + h, n)), (1, 0)) for i in range(1, n + 1)]


def build_s_cycle(n: int) -> InequalityInstance:
    """Event i gives outcome 1 to measurement i and 0 to measurement i + floor(n/2) (mod n)."""
    evs = s_cycle_events(n)
    g = exclusivity_graph(evs, label=f"s_cycle:{n}")
    return InequalityInstance(f"s_cycle({n})", tuple(evs), g, (n - 1) // 2, theta_cycle(n))


def s_anticycle_events(n: int, stride: int = 2) -> list:
    """Event i gives 1 to measurement i and 0 to i+2, i+2+stride, ... up to i+n-3 (mod n).

    With ``stride=2`` every pair of measurements in one context is at odd or even
    distance >= 2, i.e. non-consecutive, so each context consists of mutually
    compatible observables. ``stride=1`` (contiguous contexts) gives the same
    exclusivity graph but places consecutive, incompatible measurements together.
    """
    _check_odd(n, 7)
    if stride not in (1, 2):
        raise InvalidParameter("stride must be 1 or 2")
    offsets = list(range(2, n - 2, stride))
    return [Event((i,) + tuple(_residue(i + d, n) for d in offsets), (1,) + (0,) * len(offsets))
            for i in range(1, n + 1)]


def build_s_anticycle(n: int, stride: int = 2) -> InequalityInstance:
    _check_odd(n, 5)
    if n == 5:
        inst = build_s_cycle(5)
        return InequalityInstance("s_anticycle(5)", inst.events, inst.exclusivity_graph,
                                  2, theta_anticycle(5))
    evs = s_anticycle_events(n, stride)
    g = exclusivity_graph(evs, label=f"s_anticycle:{n}")
    return InequalityInstance(f"s_anticycle({n})", tuple(evs), g, 2, theta_anticycle(n))


@dataclass(frozen=True)
class QuantumValue:
    value: float
    probabilities: tuple
    nchv_bound: int
    quantum_bound: float

    def to_dict(self):
        return {"value": self.value, "probabilities": list(self.probabilities),
                "nchv": self.nchv_bound, "quantum_bound": self.quantum_bound}


def quantum_value(inst: InequalityInstance, rep: OrthonormalRepresentation) -> QuantumValue:
    """Sum of event probabilities <v_j, psi>^2 for the state ``rep.handle``.

    The representation's target must be isomorphic to the exclusivity graph.
    """
    g = inst.exclusivity_graph
    if not is_isomorphic(rep.target, g):
        raise InvalidInput("representation target does not match the exclusivity graph")
    probs = event_probabilities(rep)
    # event k is assigned the vector of the target vertex it corresponds to
    phi = find_isomorphism(g, rep.orthogonality_graph())
    if phi is not None:
        probs = probs[list(phi)]
    return QuantumValue(float(probs.sum()), tuple(float(p) for p in probs),
                        inst.nchv_bound, inst.quantum_bound.value)
