"""Lovász number: closed forms for odd cycles/anticycles and a numerical SDP.

The SDP is

    maximize  sum(X)  subject to  trace(X) = 1,  X_ij = 0 for every edge ij,  X psd,

solved by an alternating-direction augmented Lagrangian method on its dual,
where each step is a linear solve (diagonal here) followed by a projection onto
the psd cone via an eigendecomposition. The returned value is certified by a
feasible point of each problem:

* lower bound: the iterate X with edge entries zeroed, shifted by a multiple of
  the identity until psd, and renormalised to unit trace;
* upper bound: lambda_max(J + Y) for the edge-supported dual matrix Y.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, ResourceCapError
from .graph import Graph, complement

SDP_CAP = 64
DECISION_TOL = 1e-4
MAX_ITER = 200000


@dataclass(frozen=True)
class ThetaValue:
    value: float
    method: str
    certified_gap: float = 0.0
    lower: float | None = None
    upper: float | None = None
    converged: bool = True

    def to_dict(self):
        return {"value": self.value, "method": self.method, "gap": self.certified_gap}

    @classmethod
    def from_dict(cls, d):
        return cls(d["value"], d["method"], d["gap"])


def _check_odd(n, smallest=5):
    if n < smallest or n % 2 == 0:
        raise InvalidParameter(f"need an odd n >= {smallest}, got {n}")


def theta_cycle(n: int) -> ThetaValue:
    _check_odd(n)
    c = math.cos(math.pi / n)
    return ThetaValue(n * c / (1 + c), "closed-form")


def theta_anticycle(n: int) -> ThetaValue:
    _check_odd(n)
    c = math.cos(math.pi / n)
    return ThetaValue((1 + c) / c, "closed-form")


def _is_circulant(g: Graph) -> bool:
    n = g.n
    if n < 3:
        return False
    full = g.full_mask

    def rot(x):
        return ((x << 1) | (x >> (n - 1))) & full

    return all(g.adj[(i + 1) % n] == rot(g.adj[i]) for i in range(n))


def _circulant_average(M, idx):
    # average along wrapped diagonals: the projection onto circulant matrices
    n = M.shape[0]
    d = np.bincount(idx.ravel(), weights=M.ravel(), minlength=n) / n
    return d[idx]


def _psd_split(V):
    w, Q = np.linalg.eigh(V)
    pos = np.clip(w, 0.0, None)
    return (Q * pos) @ Q.T


def _certify(n, X, edge_i, edge_j, y_edges):
    # primal: make X exactly feasible
    Xf = (X + X.T) / 2
    Xf[edge_i, edge_j] = 0.0
    Xf[edge_j, edge_i] = 0.0
    lam_min = np.linalg.eigvalsh(Xf)[0]
    if lam_min < 0:
        Xf = Xf - lam_min * np.eye(n)
    tr = np.trace(Xf)
    lower = float(Xf.sum() / tr) if tr > 0 else 1.0
    # dual: any edge-supported Y gives theta <= lambda_max(J + Y)
    M = np.ones((n, n))
    M[edge_i, edge_j] += y_edges
    M[edge_j, edge_i] += y_edges
    upper = float(np.linalg.eigvalsh(M)[-1])
    return lower, upper


def theta_sdp(g: Graph, tol: float = 1e-6, max_iter: int = MAX_ITER,
              mu: float = 1.0, check_every: int = 20) -> ThetaValue:
    """Lovász number by ADMM with a certified primal-dual gap.

    ``value`` is the midpoint of the certified interval and ``certified_gap``
    its width. If the iteration cap is hit first the result has
    ``converged=False``.
    """
    n = g.n
    if n > SDP_CAP:
        raise ResourceCapError(f"SDP limited to {SDP_CAP} vertices, got {n}")
    if n == 0:
        return ThetaValue(0.0, "sdp")
    edges = list(g.edges())
    if not edges:
        return ThetaValue(float(n), "sdp", 0.0, float(n), float(n))
    if g.num_edges == n * (n - 1) // 2:
        return ThetaValue(1.0, "sdp", 0.0, 1.0, 1.0)
    ei = np.array([e[0] for e in edges])
    ej = np.array([e[1] for e in edges])
    r2 = math.sqrt(2.0)

    # min <C, X>, C = -J; constraints <I, X> = 1 and <E_e, X> = 0 with
    # E_e = (e_i e_j' + e_j e_i') / sqrt(2); A A* = diag(n, 1, ..., 1)
    C = -np.ones((n, n))
    X = np.eye(n) / n
    S = np.zeros((n, n))
    circ = _is_circulant(g)
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n if circ else None

    def A_of(M):
        return M.trace(), r2 * M[ei, ej]

    def A_star(y0, ye):
        M = y0 * np.eye(n)
        M[ei, ej] += ye / r2
        M[ej, ei] += ye / r2
        return M

    best_lo, best_hi = -math.inf, math.inf
    ye = np.zeros(len(edges))
    history = []
    it = 0
    for it in range(1, max_iter + 1):
        ax0, axe = A_of(X)
        sc0, sce = A_of(S - C)
        y0 = -(mu * (ax0 - 1.0) + sc0) / n
        ye = -(mu * axe + sce)
        V = C - A_star(y0, ye) - mu * X
        if circ:
            V = _circulant_average(V, idx)
        S = _psd_split(V)
        X = (S - V) / mu

        if it % check_every == 0:
            ax0, axe = A_of(X)
            pinf = math.hypot(ax0 - 1.0, np.linalg.norm(axe))
            dinf = np.linalg.norm(C - A_star(y0, ye) - S) / (1.0 + n)
            history.append(pinf / max(dinf, 1e-300))
            # penalty update keeps primal and dual residuals balanced
            if len(history) >= 5:
                ratio = float(np.median(history[-5:]))
                if ratio > 2.0:
                    mu = min(mu / 0.7, 1e4)
                    history.clear()
                elif ratio < 0.5:
                    mu = max(mu * 0.7, 1e-4)
                    history.clear()
            lo, hi = _certify(n, X, ei, ej, ye / r2)
            best_lo = max(best_lo, lo)
            best_hi = min(best_hi, hi)
            if best_hi - best_lo <= tol:
                break
    gap = max(best_hi - best_lo, 0.0)
    return ThetaValue((best_lo + best_hi) / 2, "sdp", gap, best_lo, best_hi,
                      converged=gap <= tol)


def recognize_basic(g: Graph):
    """('cycle', n) or ('anticycle', n) when ``g`` is an odd cycle or odd antihole (n >= 5)."""
    if g.n >= 5 and g.n % 2 == 1:
        if g.is_cycle():
            return "cycle", g.n
        if complement(g).is_cycle():
            return "anticycle", g.n
    return None


def theta(g: Graph, tol: float = 1e-6) -> ThetaValue:
    """Closed form when ``g`` is an odd cycle or its complement, SDP otherwise."""
    kind = recognize_basic(g)
    if kind == ("cycle", g.n):
        return theta_cycle(g.n)
    if kind == ("anticycle", g.n):
        return theta_anticycle(g.n)
    return theta_sdp(g, tol=tol)


@dataclass(frozen=True)
class ContextualityClass:
    alpha: int
    theta: ThetaValue
    verdict: str

    @property
    def margin(self):
        return self.theta.value - self.alpha

    def to_dict(self):
        return {"alpha": self.alpha, "theta": self.theta.to_dict(),
                "verdict": self.verdict, "margin": self.margin}

    @classmethod
    def from_dict(cls, d):
        return cls(d["alpha"], ThetaValue.from_dict(d["theta"]), d["verdict"])


def verdict_for(alpha: int, th: ThetaValue, tol: float = DECISION_TOL) -> str:
    margin = th.value - alpha
    gap = th.certified_gap
    if margin > tol and margin > gap:
        return "QCG"
    if abs(margin) <= tol and gap <= tol:
        return "QNCG"
    return "undecided"


def classify(g: Graph, tol: float = DECISION_TOL, alpha: int | None = None,
             th: ThetaValue | None = None) -> ContextualityClass:
    """Quantum contextual (alpha < theta) or noncontextual (alpha = theta) graph."""
    from .invariants import independence_number

    a = independence_number(g) if alpha is None else alpha
    t = theta(g) if th is None else th
    return ContextualityClass(a, t, verdict_for(a, t, tol))


def sandwich_check(g: Graph, tol: float = 1e-6) -> bool:
    """omega(G) <= theta(complement G) <= chi(G)."""
    from .invariants import chromatic_number, clique_number

    t = theta(complement(g)).value
    return clique_number(g) <= t + tol and t <= chromatic_number(g) + tol
