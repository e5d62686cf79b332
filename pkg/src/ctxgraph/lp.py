"""Exact primal simplex over the rationals (``fractions.Fraction``), Bland's rule.

Only the form needed for packing problems is supported:

    maximize c.x  subject to  A x <= b,  0 <= x <= u,  with b >= 0,

so the all-slack basis is feasible and no phase one is required.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CtxGraphError, InvalidInput


class UnboundedLP(CtxGraphError):
    pass


def fmt(q: Fraction) -> str:
    """Render a rational as ``p/q`` (or ``p`` when integral)."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text)


@dataclass(frozen=True)
class LinearProgram:
    c: tuple
    A: tuple
    b: tuple
    # per-variable upper bound; None means unbounded above
    upper: tuple = field(default=())

    def __post_init__(self):
        c = tuple(Fraction(x) for x in self.c)
        A = tuple(tuple(Fraction(x) for x in row) for row in self.A)
        b = tuple(Fraction(x) for x in self.b)
        upper = tuple(None if u is None else Fraction(u) for u in self.upper) or (None,) * len(c)
        for name, value in (("c", c), ("A", A), ("b", b), ("upper", upper)):
            object.__setattr__(self, name, value)
        if len(A) != len(b):
            raise InvalidInput("A and b have different row counts")
        if any(len(row) != len(c) for row in A):
            raise InvalidInput("every constraint row must have the width of c")
        if len(upper) != len(c):
            raise InvalidInput("upper bounds must match the number of variables")
        if any(x < 0 for x in b) or any(u is not None and u < 0 for u in upper):
            raise InvalidInput("right-hand sides and upper bounds must be non-negative")

    @classmethod
    def packing(cls, c, A, b, bound=1):
        return cls(c, A, b, (bound,) * len(c))

    @property
    def num_vars(self):
        return len(self.c)

    def rows(self):
        """Constraint rows with the upper bounds expanded into explicit rows."""
        A = [list(r) for r in self.A]
        b = list(self.b)
        for j, u in enumerate(self.upper):
            if u is not None:
                row = [Fraction(0)] * self.num_vars
                row[j] = Fraction(1)
                A.append(row)
                b.append(u)
        return A, b


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    solution: tuple
    # multipliers for the expanded rows (constraints then upper bounds)
    dual: tuple
    pivots: int


def simplex_max(lp: LinearProgram, max_pivots: int = 100000) -> LPResult:
    A, b = lp.rows()
    m, n = len(A), lp.num_vars
    width = n + m
    zero, one = Fraction(0), Fraction(1)
    T = []
    for i in range(m):
        slack = [zero] * m
        slack[i] = one
        T.append(A[i] + slack + [b[i]])
    # reduced-cost row: c_j - z_j
    red = list(lp.c) + [zero] * m
    obj = zero
    basis = list(range(n, n + m))

    pivots = 0
    while True:
        enter = next((j for j in range(width) if red[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                key = (ratio, basis[i])
                if best is None or key < best:
                    best, leave = key, i
        if leave is None:
            raise UnboundedLP("objective is unbounded above")
        piv_row = T[leave]
        pv = piv_row[enter]
        if pv != 1:
            piv_row = [x / pv for x in piv_row]
            T[leave] = piv_row
        for i in range(m):
            if i != leave:
                f = T[i][enter]
                if f:
                    row = T[i]
                    T[i] = [x - f * y for x, y in zip(row, piv_row)]
        f = red[enter]
        red = [x - f * y for x, y in zip(red, piv_row[:-1])]
        obj += f * piv_row[-1]
        basis[leave] = enter
        pivots += 1
        if pivots > max_pivots:
            raise CtxGraphError("simplex pivot limit reached")

    x = [zero] * width
    for i, j in enumerate(basis):
        x[j] = T[i][-1]
    dual = tuple(-red[n + i] for i in range(m))
    return LPResult(obj, tuple(x[:n]), dual, pivots)


def certify(lp: LinearProgram, result: LPResult) -> bool:
    """Re-check optimality from scratch: primal feasibility, dual feasibility, equal objectives."""
    A, b = lp.rows()
    x, y = result.solution, result.dual
    if any(v < 0 for v in x):
        return False
    for row, rhs in zip(A, b):
        if sum(a * v for a, v in zip(row, x)) > rhs:
            return False
    if any(v < 0 for v in y) or len(y) != len(A):
        return False
    for j in range(lp.num_vars):
        if sum(A[i][j] * y[i] for i in range(len(A))) < lp.c[j]:
            return False
    primal = sum(cj * v for cj, v in zip(lp.c, x))
    dual = sum(bi * yi for bi, yi in zip(b, y))
    return primal == dual == result.value
