"""c-adic net measures of finite cube sets, natural-cover upper bounds for
Hausdorff pre-measures, resonant-slab cover counts, and slicing.

All diameters are in the sup norm, so a generation-j cube has diameter c^-j.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .gauge import (DomainError, Gauge, GaugeContext, PowerLog, eval_gauge, epsilon_of,
                    exact_power, real_power)
from .systems import (CAdicPoints, FamilyDescriptor, Groshev, LinearForms, RationalPoints,
                      ResonantZones, iter_shell, law_at, norm_inf)


class InfeasibleCover(ValueError):
    pass


@dataclass(frozen=True, order=True)
class CAdicCube:
    c: int
    j: int
    k: tuple

    @property
    def diameter(self) -> Fraction:
        return Fraction(1, self.c ** self.j)

    def __str__(self):
        return f"j:{self.j} k:{','.join(str(x) for x in self.k)}"


@dataclass(frozen=True)
class CubeSet:
    """Leaves of generation J inside the root cube [0,1)^d."""
    c: int
    d: int
    J: int
    leaves: tuple

    def __post_init__(self):
        if self.c < 2 or self.d < 1 or self.J < 0:
            raise ValueError("need c >= 2, d >= 1, J >= 0")
        side = self.c ** self.J
        leaves = tuple(sorted({tuple(int(x) for x in k) for k in self.leaves}))
        for k in leaves:
            if len(k) != self.d or not all(0 <= x < side for x in k):
                raise ValueError(f"leaf {k} outside the root cube")
        object.__setattr__(self, "leaves", leaves)

    @classmethod
    def full(cls, c: int, d: int, J: int) -> "CubeSet":
        return cls(c, d, J, tuple(itertools.product(range(c ** J), repeat=d)))

    def render(self) -> str:
        lines = [f"cadic c={self.c} d={self.d} J={self.J}"]
        lines += [",".join(str(x) for x in k) for k in self.leaves]
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "CubeSet":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines or not lines[0].startswith("cadic"):
            raise ValueError("missing 'cadic c=.. d=.. J=..' header")
        head = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
        try:
            c, d, J = int(head["c"]), int(head["d"]), int(head["J"])
        except KeyError as exc:
            raise ValueError(f"header field {exc} missing") from exc
        leaves = [tuple(int(x) for x in ln.split(",")) for ln in lines[1:]]
        return cls(c, d, J, tuple(leaves))


@dataclass
class CoverResult:
    value: Fraction
    cover: List[CAdicCube]
    optimal: bool = True
    exact: bool = True

    def __float__(self):
        return float(self.value)


def generation_weights(g: Gauge, c: int, J: int) -> Tuple[List[Fraction], bool]:
    """g(c^-j) for j = 0..J as exact Fractions (floats are converted exactly)."""
    out, exact = [], True
    for j in range(J + 1):
        v = eval_gauge(g, Fraction(1, c ** j))
        if not isinstance(v, Fraction):
            exact = False
            v = Fraction(v)
        out.append(v)
    return out, exact


def admissible_generations(g: Gauge, ctx: GaugeContext, c: int, J: int) -> List[bool]:
    """Cube of generation j usable iff its diameter is at most eps_g."""
    eps = epsilon_of(g, ctx)
    return [Fraction(1, c ** j) <= Fraction(eps) for j in range(J + 1)]


def net_measure(target: CubeSet, g: Gauge, ctx: Optional[GaugeContext] = None) -> CoverResult:
    """Optimal c-adic cover of the target by tree dynamic programming.

    A cube costs g(diam) if admissible, its children's total otherwise; ties
    keep the coarser cube.
    """
    ctx = ctx or GaugeContext(target.d)
    if ctx.d != target.d:
        raise ValueError("gauge context dimension differs from the cube set")
    c, J = target.c, target.J
    if not target.leaves:
        return CoverResult(Fraction(0), [], True, True)
    w, exact = generation_weights(g, c, J)
    ok = admissible_generations(g, ctx, c, J)
    if not ok[J]:
        raise InfeasibleCover(f"eps_g is below the leaf diameter {c}^-{J}; no admissible cube covers a leaf")
    cost: Dict[tuple, Fraction] = {k: w[J] for k in target.leaves}
    take: Dict[Tuple[int, tuple], bool] = {(J, k): True for k in target.leaves}
    for j in range(J - 1, -1, -1):
        parents: Dict[tuple, Fraction] = {}
        for k, v in cost.items():
            p = tuple(x // c for x in k)
            parents[p] = parents.get(p, Fraction(0)) + v
        for p, children in parents.items():
            own = ok[j] and w[j] <= children
            take[(j, p)] = own
            parents[p] = w[j] if own else children
        cost = parents
    root = (0,) * target.d
    cover: List[CAdicCube] = []
    stack = [(0, root)]
    present = {(J, k) for k in target.leaves}
    for j in range(J - 1, -1, -1):
        present |= {(j, tuple(x // c ** (J - j) for x in k)) for k in target.leaves}
    while stack:
        j, k = stack.pop()
        if take.get((j, k)):
            cover.append(CAdicCube(c, j, k))
            continue
        for off in itertools.product(range(c), repeat=target.d):
            child = tuple(x * c + o for x, o in zip(k, off))
            if (j + 1, child) in present:
                stack.append((j + 1, child))
    cover.sort()
    return CoverResult(cost[root], cover, True, exact)


def slice_set(E: CubeSet, x2: Sequence, k: Optional[int] = None) -> CubeSet:
    """E_{x2}: leaves whose last-k block contains x2, projected to the first d-k coordinates."""
    x2 = [Fraction(v) for v in x2]
    k = len(x2) if k is None else k
    if not 0 < k < E.d or len(x2) != k:
        raise ValueError("need 0 < k < d and x2 of length k")
    side = E.c ** E.J
    if not all(0 <= v < 1 for v in x2):
        return CubeSet(E.c, E.d - k, E.J, ())
    idx = tuple(math.floor(v * side) for v in x2)
    return CubeSet(E.c, E.d - k, E.J, tuple(leaf[:E.d - k] for leaf in E.leaves if leaf[E.d - k:] == idx))


def product_with_full(E1: CubeSet, k: int) -> CubeSet:
    """E1 x [0,1)^k at the same depth."""
    side = E1.c ** E1.J
    tails = list(itertools.product(range(side), repeat=k))
    return CubeSet(E1.c, E1.d + k, E1.J, tuple(a + b for a in E1.leaves for b in tails))


# ---------------------------------------------------------------- slab covers

def floor_sum(n: int, m: int, a: int, b: int) -> int:
    """sum_{i=0}^{n-1} floor((a*i + b)/m) for m > 0 and any integers a, b."""
    ans = 0
    while n > 0:
        if a >= m or a < 0:
            qa, a = divmod(a, m)
            ans += qa * n * (n - 1) // 2
        if b >= m or b < 0:
            qb, b = divmod(b, m)
            ans += qb * n
        y = a * n + b
        if y < m:
            break
        n, b, m, a = y // m, y % m, a, m
    return ans


def _count_le_2d(a: int, b: int, K1: int, K2: int, z: int) -> int:
    """#{(k1,k2) in [0,K1)x[0,K2) : a k1 + b k2 <= z}."""
    if K1 <= 0 or K2 <= 0:
        return 0
    if a < 0:
        z, a = z - a * (K1 - 1), -a
    if b < 0:
        z, b = z - b * (K2 - 1), -b
    if b == 0:
        a, b, K1, K2 = b, a, K2, K1
    if b == 0:
        return K1 * K2 if z >= 0 else 0
    if a == 0:
        per = min(max(z // b + 1, 0), K2)
        return per * K1
    n_full = min(max((z - b * (K2 - 1)) // a + 1, 0), K1)
    n_pos = min(max(z // a + 1, 0), K1)
    cnt = n_pos - n_full
    middle = floor_sum(cnt, b, -a, z - a * n_full) + cnt if cnt > 0 else 0
    return K2 * n_full + middle


def _open_int_range(L: Fraction, H: Fraction) -> Tuple[int, int]:
    """Smallest and largest integers strictly between L and H."""
    return math.floor(L) + 1, math.ceil(H) - 1


def count_linear(coeffs: Sequence[int], K: Sequence[int], L: Fraction, H: Fraction) -> int:
    """#{k in prod [0,K_i) : L < sum coeffs_i k_i < H}."""
    r = len(coeffs)
    if any(x <= 0 for x in K):
        return 0
    zlo, zhi = _open_int_range(L, H)
    if zlo > zhi:
        return 0
    if r == 0:
        return 1 if zlo <= 0 <= zhi else 0
    if r == 1:
        a, n = coeffs[0], K[0]
        if a == 0:
            return n if zlo <= 0 <= zhi else 0
        if a > 0:
            lo, hi = -(-zlo // a), zhi // a
        else:
            lo, hi = -(zhi // -a), (-zlo) // -a
        lo, hi = max(lo, 0), min(hi, n - 1)
        return max(hi - lo + 1, 0)
    if r == 2:
        a, b = coeffs
        return _count_le_2d(a, b, K[0], K[1], zhi) - _count_le_2d(a, b, K[0], K[1], zlo - 1)
    a0, total = coeffs[0], 0
    for k0 in range(K[0]):
        total += count_linear(coeffs[1:], K[1:], L - a0 * k0, H - a0 * k0)
    return total


def _grid_count(q: Sequence[int], side: Fraction, origin: Fraction, upper: Fraction, M: int,
                target: Fraction, half_width: Fraction) -> int:
    """Closed grid cells origin + side*(k + [0,1]^n), clipped at ``upper``,
    meeting {|q.w - target| < half_width}."""
    n = len(q)
    clipped = origin + side * M > upper
    K = M - 1 if clipped else M
    x_lo = origin + side * (M - 1)
    total = 0
    for choice in itertools.product((False, True) if clipped else (False,), repeat=n):
        const, width = Fraction(0), Fraction(0)
        coeffs, Ks = [], []
        for qi, clip in zip(q, choice):
            if clip:
                const += min(qi * x_lo, qi * upper)
                width += abs(qi) * (upper - x_lo)
            else:
                const += qi * origin + side * min(qi, 0)
                width += side * abs(qi)
                coeffs.append(qi)
                Ks.append(K)
        # min over the cell = const + side * sum(coeffs*k); need it in (t - w - W, t + w)
        L = (target - half_width - width - const) / side
        H = (target + half_width - const) / side
        total += count_linear(coeffs, Ks, L, H)
    return total


def _as_exact(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(float(x))


@dataclass
class SlabCover:
    count: int
    side: Fraction
    half_width: Fraction
    cells: Optional[List[tuple]] = None
    exact_side: bool = True


def slab_cover(q: Sequence[int], nu, cells: bool = False) -> SlabCover:
    """Grid cells of side |q|_inf^(-nu-1) anchored at -1/2 meeting
    {w in (-1/2,1/2]^n : |q.w| < |q|_inf^-nu}.

    When the side is irrational it is rounded to the nearest double and that
    grid is counted exactly.
    """
    q = tuple(int(x) for x in q)
    if not any(q):
        raise ValueError("q must be nonzero")
    nu = Fraction(nu)
    Q = norm_inf(q)
    s_exact = exact_power(Fraction(1, Q), nu + 1)
    w_exact = exact_power(Fraction(1, Q), nu)
    side = s_exact if s_exact is not None else _as_exact(real_power(Fraction(1, Q), nu + 1))
    w = w_exact if w_exact is not None else _as_exact(real_power(Fraction(1, Q), nu))
    M = math.ceil(1 / side)
    half = Fraction(1, 2)
    count = _grid_count(q, side, -half, half, M, Fraction(0), w)
    out = SlabCover(count, side, w, None, s_exact is not None)
    if cells:
        out.cells = slab_cells_bruteforce(q, side, w, M)
    return out


def slab_cells_bruteforce(q, side: Fraction, w: Fraction, M: int, limit: int = 2_000_000) -> List[tuple]:
    """Direct enumeration of the cells (small grids only)."""
    n = len(q)
    if M ** n > limit:
        raise ValueError("grid too large for explicit cells")
    half = Fraction(1, 2)
    out = []
    for k in itertools.product(range(M), repeat=n):
        lo = [-half + side * ki for ki in k]
        hi = [min(-half + side * (ki + 1), half) for ki in k]
        mn = sum(min(qi * a, qi * b) for qi, a, b in zip(q, lo, hi))
        mx = sum(max(qi * a, qi * b) for qi, a, b in zip(q, lo, hi))
        if mn < w and mx > -w:
            out.append(k)
    return out


# ---------------------------------------------------------------- natural covers

def _gauge_value(G: Gauge, r) -> float:
    """G at a cover diameter; pure powers are extended past the domain bound."""
    r = Fraction(r) if not isinstance(r, float) else r
    if r <= G.domain_bound():
        return float(eval_gauge(G, r))
    if isinstance(G, PowerLog) and G.t == 0:
        return float(G.c0) * float(r) ** float(G.s)
    raise DomainError(f"cover diameter {float(r)} outside the gauge domain")


@dataclass
class UpperBound:
    value: float
    ledger: List[Tuple[int, int, float, float]] = field(default_factory=list)


def hausdorff_upper_bound(f: FamilyDescriptor, G: Gauge, tail_from: int, tail_to: int) -> UpperBound:
    """Sum of G(diameter) * count over the natural covers of the family
    elements in shells tail_from..tail_to.  Ledger rows are
    (shell, cover count, diameter, contribution)."""
    if tail_from < 1 or tail_to < tail_from:
        raise ValueError("need 1 <= tail_from <= tail_to")
    rows = []
    if isinstance(f, RationalPoints):
        for q in range(tail_from, tail_to + 1):
            diam = 2 * law_at(f.phi, q)
            count = (q + 1) ** f.m
            rows.append((q, count, float(diam), count * _gauge_value(G, diam)))
    elif isinstance(f, CAdicPoints):
        for j in range(tail_from, tail_to + 1):
            diam = Fraction(2, f.c ** j)
            count = f.c ** (j * f.d)
            rows.append((j, count, float(diam), count * _gauge_value(G, diam)))
    elif isinstance(f, ResonantZones):
        for Q in range(tail_from, tail_to + 1):
            count, side = _resonant_shell(f.n, Q, f.nu)
            rows.append((Q, count, float(side), count * _gauge_value(G, side)))
    elif isinstance(f, (LinearForms, Groshev)):
        for Q in range(tail_from, tail_to + 1):
            count, side = _linear_forms_shell(f, Q)
            rows.append((Q, count, float(side), count * _gauge_value(G, side) if count else 0.0))
    else:
        raise TypeError(f"unsupported family {type(f).__name__}")
    return UpperBound(math.fsum(r[3] for r in rows), rows)


def _resonant_shell(n: int, Q: int, nu: Fraction) -> Tuple[int, Fraction]:
    """Total slab-cover count over the shell |q|_inf = Q.  When the grid is
    symmetric (1/side an integer) the count only depends on the sorted |q_i|."""
    memo: Dict[tuple, int] = {}
    total, side = 0, None
    for q in iter_shell(n, Q):
        sc = None
        key = tuple(sorted(abs(x) for x in q))
        if key in memo:
            total += memo[key]
            continue
        sc = slab_cover(q, nu)
        side = sc.side
        symmetric = sc.side.numerator == 1
        if symmetric:
            memo[key] = sc.count
        total += sc.count
    if side is None:
        side = slab_cover((Q,) + (0,) * (n - 1), nu).side
    return total, side


def _linear_forms_shell(f, Q: int) -> Tuple[int, Fraction]:
    """Cells of side psi(q)/|q|_inf in [0,1]^n meeting some slab
    |q.y - b_j - p| < psi(q); blocks multiply, slabs for different p are
    counted separately (an upper bound for the union)."""
    groshev = isinstance(f, Groshev)
    lf = f.as_linear_forms() if groshev else f
    law = _as_exact(law_at(lf.psi, Q))
    psi = law * Q if groshev else law
    side = psi / Q
    if side <= 0:
        return 0, side
    side = min(side, Fraction(1))
    M = math.ceil(1 / side)
    total = 0
    for q in iter_shell(lf.n, Q):
        per_block = []
        vmin = sum(min(x, 0) for x in q)
        vmax = sum(max(x, 0) for x in q)
        for bj in lf.b:
            cnt = 0
            for p in range(math.floor(vmin - bj - psi), math.ceil(vmax - bj + psi) + 1):
                cnt += _grid_count(q, side, Fraction(0), Fraction(1), M, bj + p, psi)
            per_block.append(cnt)
        total += math.prod(per_block)
    return total, side


@dataclass
class SlabExponentReport:
    shells: List[int]
    max_counts: List[int]
    betas: List[float]
    slope: float
    intercept: float
    beta_spread: float


def slab_exponent(n: int, nu, shells: Sequence[int]) -> SlabExponentReport:
    """Largest slab_cover count over each shell |q|_inf = Q (q up to sign),
    with the log-log slope of max count against Q and the ratios
    count / Q^((n-1)(nu+1))."""
    nu = Fraction(nu)
    expo = float((n - 1) * (nu + 1))
    counts = []
    for Q in shells:
        best = 0
        for q in iter_shell(n, Q):
            if next(x for x in q if x) < 0:
                continue
            best = max(best, slab_cover(q, nu).count)
        counts.append(best)
    x, y = np.log(np.asarray(shells, dtype=float)), np.log(np.asarray(counts, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    betas = [c / Q ** expo for c, Q in zip(counts, shells)]
    return SlabExponentReport(list(shells), counts, betas, float(slope), float(intercept),
                              max(betas) / min(betas))
