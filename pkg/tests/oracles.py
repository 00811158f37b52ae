"""Independent reference computations used by the test-suite.

None of these call the code under test for the quantity being checked; they
recompute it by brute force or from a closed form.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

import numpy as np

# ---------------------------------------------------------------- cube trees

Node = Tuple[int, tuple]  # (generation j, index vector k)


def tree_nodes(c: int, d: int, J: int) -> List[Node]:
    return [(j, k) for j in range(J + 1) for k in itertools.product(range(c ** j), repeat=d)]


def _children(c: int, node: Node) -> List[Node]:
    j, k = node
    return [(j + 1, tuple(c * a + b for a, b in zip(k, off)))
            for off in itertools.product(range(c), repeat=len(k))]


@lru_cache(maxsize=None)
def partitions(c: int, d: int, J: int, node: Node = (0, None)) -> List[Tuple[Node, ...]]:
    """Every partition of ``node`` into tree cubes of generation <= J.

    Any covering antichain extends to such a partition by cubes disjoint from
    its union, so minimizing over partitions (charging only the cubes that
    meet the target) gives the minimal antichain cover.
    """
    if node[1] is None:
        node = (0, (0,) * d)
    out = [(node,)]
    if node[0] < J:
        kids = [partitions(c, d, J, ch) for ch in _children(c, node)]
        for combo in itertools.product(*kids):
            out.append(tuple(itertools.chain.from_iterable(combo)))
    return out


class PartitionMatrix:
    """0/1 incidence of partitions against tree nodes, for batched minima."""

    def __init__(self, c: int, d: int, J: int):
        self.c, self.d, self.J = c, d, J
        self.nodes = tree_nodes(c, d, J)
        self.index = {nd: i for i, nd in enumerate(self.nodes)}
        parts = partitions(c, d, J)
        self.parts = parts
        M = np.zeros((len(parts), len(self.nodes)), dtype=np.float64)
        for r, p in enumerate(parts):
            for nd in p:
                M[r, self.index[nd]] = 1.0
        self.M = M

    def meets(self, leaves: Sequence[tuple]) -> np.ndarray:
        """Boolean vector: node contains at least one target leaf."""
        hit = np.zeros(len(self.nodes), dtype=bool)
        for leaf in leaves:
            for j in range(self.J + 1):
                k = tuple(x // self.c ** (self.J - j) for x in leaf)
                hit[self.index[(j, k)]] = True
        return hit

    def minimum(self, leaves: Sequence[tuple], weights: Sequence[Fraction]) -> Fraction:
        """Exact minimal cost; weights are per generation, all cubes admissible."""
        return self.minimum_batch([(leaves, weights)])[0]

    def minimum_batch(self, cases, chunk: int = 128) -> List[Fraction]:
        """Exact minima.  A float matrix product shortlists near-minimal
        partitions; a partition's exact cost only depends on its number of
        charged cubes per generation, so distinct count vectors of the
        shortlist are summed in Fractions."""
        gen = np.array([j for j, _ in self.nodes])
        out: List[Fraction] = []
        for start in range(0, len(cases), chunk):
            part = cases[start:start + chunk]
            hits = [self.meets(leaves) for leaves, _ in part]
            W = np.zeros((len(self.nodes), len(part)))
            for col, ((_, weights), hit) in enumerate(zip(part, hits)):
                wg = np.array([float(w) for w in weights])
                W[:, col] = np.where(hit, wg[gen], 0.0)
            V = self.M @ W
            for col, ((leaves, weights), hit) in enumerate(zip(part, hits)):
                if not leaves:
                    out.append(Fraction(0))
                    continue
                vals = V[:, col]
                rows = np.nonzero(vals <= vals.min() * (1 + 1e-9))[0]
                H = np.zeros((len(self.nodes), self.J + 1))
                H[np.nonzero(hit)[0], gen[hit]] = 1.0
                counts = np.unique(np.rint(self.M[rows] @ H).astype(np.int64), axis=0)
                out.append(min(sum((int(n) * weights[j] for j, n in enumerate(row)), Fraction(0))
                               for row in counts))
        return out


# ---------------------------------------------------------------- geometry

def hyperplane_distance(q: Sequence[int], b, x: Sequence) -> float:
    """Euclidean distance from x to {y : q.y = b} by explicit projection."""
    q = np.asarray(q, dtype=float)
    x = np.asarray([float(v) for v in x])
    foot = x - q * (q @ x - float(b)) / (q @ q)
    return float(np.linalg.norm(x - foot))


def rational_points_bruteforce(m: int, bound: int) -> set:
    """{p/q in [0,1]^m : q <= bound} with their q (reduced or not)."""
    out = set()
    for q in range(1, bound + 1):
        for p in itertools.product(range(q + 1), repeat=m):
            out.add((tuple(Fraction(a, q) for a in p), q))
    return out


# ---------------------------------------------------------------- continued fractions

def euclid_cf(p: int, q: int) -> List[int]:
    out = []
    while q:
        a = p // q
        out.append(a)
        p, q = q, p - a * q
    return out


def fibonacci(k: int) -> List[int]:
    f = [1, 1]
    while len(f) < k:
        f.append(f[-1] + f[-2])
    return f[:k]


def golden_k_tail(qmax: int) -> float:
    """min over Fibonacci q in (qmax/10, qmax] of q |q phi - p| using
    |F_{k} phi - F_{k+1}| = phi^{-k}, i.e. the Hurwitz-constant oracle."""
    phi = (1 + math.sqrt(5)) / 2
    fib = fibonacci(60)
    vals = []
    for k, q in enumerate(fib):
        if qmax // 10 < q <= qmax:
            vals.append(q * phi ** (-(k + 1)))
    return min(vals)


def liouville_partial(K: int) -> Fraction:
    return sum((Fraction(1, 10 ** math.factorial(k)) for k in range(1, K + 1)), Fraction(0))


# ---------------------------------------------------------------- series

def exponent_rule(a: Fraction, b: Fraction = Fraction(0), c: Fraction = Fraction(0)) -> bool:
    """Divergence of sum q^a (log q)^b (loglog q)^c by the Cauchy condensation
    argument, written out independently of the package."""
    if a != -1:
        return a > -1
    if b != -1:
        return b > -1
    return c >= -1


def l1_shell_bruteforce(n: int, L: int) -> List[tuple]:
    return [q for q in itertools.product(range(-L, L + 1), repeat=n)
            if sum(abs(x) for x in q) == L and next(x for x in q if x) > 0]


def gamma_bruteforce(omega: Sequence[Fraction], nu: Fraction, Q: int) -> Tuple[float, tuple]:
    best = None
    for L in range(1, Q + 1):
        for q in l1_shell_bruteforce(len(omega), L):
            v = abs(sum(Fraction(a) * b for a, b in zip(q, omega)))
            key = float(v) * L ** float(nu)
            if best is None or key < best[0]:
                best = (key, q)
    return best
