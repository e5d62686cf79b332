"""Compiled max-clique kernel (bitset branch and bound with colouring bounds).

The search state lives in arrays so the kernel can run for a bounded number of
steps, return to Python for a deadline check, and resume where it stopped.
"""

from __future__ import annotations

import numpy as np
from numba import njit

WORD = 64


def to_words(rows, n):
    W = (n + WORD - 1) // WORD
    out = np.zeros((len(rows), W), dtype=np.uint64)
    mask = (1 << WORD) - 1
    for i, r in enumerate(rows):
        for w in range(W):
            out[i, w] = (r >> (WORD * w)) & mask
    return out


@njit(cache=True)
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


@njit(cache=True)
def _lowbit(x):
    # index of the lowest set bit of a nonzero word
    return _popcount((x & (~x + np.uint64(1))) - np.uint64(1))


@njit(cache=True)
def _colour(adj, P, d, W, need, verts, cols, cnt, U, Q):
    for w in range(W):
        U[w] = P[d, w]
    c = 0
    k = 0
    left = False
    for w in range(W):
        if U[w] != 0:
            left = True
    while left:
        k += 1
        for w in range(W):
            Q[w] = U[w]
        for w in range(W):
            while Q[w] != 0:
                b = _lowbit(Q[w])
                v = w * 64 + b
                bit = np.uint64(1) << np.uint64(b)
                U[w] &= ~bit
                Q[w] &= ~bit
                for x in range(w, W):
                    Q[x] &= ~adj[v, x]
                if k >= need:
                    verts[d, c] = v
                    cols[d, c] = k
                    c += 1
        left = False
        for w in range(W):
            if U[w] != 0:
                left = True
    cnt[d] = c


@njit(cache=True)
def run(adj, W, P, verts, cols, cnt, pos, cur, best, state, max_steps):
    """Advance the search by at most ``max_steps`` expansions.

    ``state`` holds [depth, base, bestlen, done]. Returns the step count.
    """
    U = np.zeros(W, dtype=np.uint64)
    Q = np.zeros(W, dtype=np.uint64)
    depth = state[0]
    base = state[1]
    bestlen = state[2]
    steps = 0
    while depth >= base and steps < max_steps:
        i = pos[depth]
        if i < 0 or depth + cols[depth, i] <= bestlen:
            depth -= 1
            if depth >= base:
                v = cur[depth]
                P[depth, v // 64] &= ~(np.uint64(1) << np.uint64(v % 64))
                pos[depth] -= 1
            continue
        v = verts[depth, i]
        cur[depth] = v
        empty = True
        for w in range(W):
            x = P[depth, w] & adj[v, w]
            P[depth + 1, w] = x
            if x != 0:
                empty = False
        if empty:
            if depth + 1 > bestlen:
                bestlen = depth + 1
                for t in range(depth + 1):
                    best[t] = cur[t]
            P[depth, v // 64] &= ~(np.uint64(1) << np.uint64(v % 64))
            pos[depth] -= 1
            continue
        depth += 1
        steps += 1
        _colour(adj, P, depth, W, bestlen - depth + 1, verts, cols, cnt, U, Q)
        pos[depth] = cnt[depth] - 1
    state[0] = depth
    state[2] = bestlen
    if depth < base:
        state[3] = 1
    return steps


class Search:
    """Resumable maximum-clique search over a graph given as Python-int bitrows."""

    def __init__(self, rows, n, prefix, candidates, incumbent):
        self.n = n
        W = max(1, (n + WORD - 1) // WORD)
        self.W = W
        self.adj = to_words(rows, n)
        L = n + 2
        self.P = np.zeros((L, W), dtype=np.uint64)
        self.verts = np.zeros((L, n), dtype=np.int32)
        self.cols = np.zeros((L, n), dtype=np.int32)
        self.cnt = np.zeros(L, dtype=np.int32)
        self.pos = np.full(L, -1, dtype=np.int32)
        self.cur = np.zeros(L, dtype=np.int32)
        self.best = np.zeros(L, dtype=np.int32)
        for t, v in enumerate(incumbent):
            self.best[t] = v
        for t, v in enumerate(prefix):
            self.cur[t] = v
        base = len(prefix)
        self.P[base] = to_words([candidates], n)[0]
        U = np.zeros(W, dtype=np.uint64)
        Q = np.zeros(W, dtype=np.uint64)
        _colour(self.adj, self.P, base, W, len(incumbent) - base + 1,
                self.verts, self.cols, self.cnt, U, Q)
        self.pos[base] = self.cnt[base] - 1
        self.state = np.array([base, base, len(incumbent), 0], dtype=np.int64)
        if candidates == 0:
            self.state[3] = 1
            if base > len(incumbent):
                self.best[:base] = self.cur[:base]
                self.state[2] = base

    @property
    def done(self):
        return bool(self.state[3])

    def step(self, max_steps):
        return run(self.adj, self.W, self.P, self.verts, self.cols, self.cnt, self.pos,
                   self.cur, self.best, self.state, max_steps)

    def incumbent(self):
        return [int(v) for v in self.best[: self.state[2]]]
