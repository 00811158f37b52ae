"""Approximation families by points and affine subspaces: enumeration,
distances, the Q_i partition, transversal constants and Dirichlet witnesses.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from .gauge import Gauge, Number, eval_gauge, real_power
from .textform import ParseError, integer, rat, rat_vector, split_record

DEFAULT_CAP = 2_000_000


class ResourceError(RuntimeError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"enumeration would produce {count} elements, above the cap {cap}")
        self.count = count
        self.cap = cap


class UnsupportedStructure(ValueError):
    pass


# ---------------------------------------------------------------- descriptors

@dataclass(frozen=True)
class RationalPoints:
    """Points p/q in R^m with radius phi(q)."""
    m: int
    phi: Gauge


@dataclass(frozen=True)
class LinearForms:
    """Subspaces {q.y_j = b_j + p_j} in (R^n)^m with radius psi(q)/|q|_2."""
    m: int
    n: int
    b: tuple
    psi: Gauge

    def __post_init__(self):
        b = tuple(Fraction(x) for x in self.b)
        if len(b) != self.m:
            raise ValueError(f"offset vector b must have length m={self.m}")
        object.__setattr__(self, "b", b)

    @property
    def schmidt_hypothesis(self) -> bool:
        """m + n > 2, needed by the Schmidt-type results."""
        return self.m + self.n > 2


@dataclass(frozen=True)
class Groshev:
    """Linear forms with b = 0 and psi(q) = |q|_inf * phi(|q|_inf)."""
    m: int
    n: int
    phi: Gauge

    def as_linear_forms(self) -> LinearForms:
        """Same subspaces and offsets; the radius law is rescaled in enumerate."""
        return LinearForms(self.m, self.n, (0,) * self.m, self.phi)


@dataclass(frozen=True)
class ResonantZones:
    """Neighborhoods |q.w| < |q|_inf^-nu of the hyperplanes q.w = 0."""
    n: int
    nu: Fraction

    def __post_init__(self):
        object.__setattr__(self, "nu", Fraction(self.nu))
        if self.nu <= 0:
            raise ValueError("nu must be positive")


@dataclass(frozen=True)
class CAdicPoints:
    """The family (k c^-j, c^-j)."""
    c: int
    d: int

    def __post_init__(self):
        if self.c < 2 or self.d < 1:
            raise ValueError("need c >= 2 and d >= 1")


FamilyDescriptor = Union[RationalPoints, LinearForms, Groshev, ResonantZones, CAdicPoints]


def parse_family(text) -> FamilyDescriptor:
    """e.g. ``linearforms m=1 n=2 b=0 psi=powerlog s=3 t=0 c0=1``."""
    toks = text.split() if isinstance(text, str) else list(text)
    if not toks:
        raise ParseError("empty family descriptor")
    head, rec = toks[0].lower(), split_record(toks[1:])

    def need(key):
        if key not in rec:
            raise ParseError(f"{head}: missing field {key}=")
        return rec[key]

    def gauge(key):
        g = need(key)
        if isinstance(g, str):
            raise ParseError(f"{head}: field {key}= must be a gauge")
        return g

    if head == "rationalpoints":
        return RationalPoints(integer(need("m")), gauge("phi"))
    if head == "linearforms":
        m, n = integer(need("m")), integer(need("n"))
        b = rat_vector(rec.get("b", ",".join(["0"] * m)))
        if len(b) != m and len(set(b)) == 1:
            # a constant offset list of the wrong length is read as that constant
            b = (b[0],) * m
        return LinearForms(m, n, b, gauge("psi"))
    if head == "groshev":
        return Groshev(integer(need("m")), integer(need("n")), gauge("phi"))
    if head == "resonant":
        return ResonantZones(integer(need("n")), rat(need("nu")))
    if head == "cadic":
        return CAdicPoints(integer(need("c")), integer(need("d")))
    raise ParseError(f"unknown family {head!r}")


# ---------------------------------------------------------------- geometry

@dataclass(frozen=True)
class Point:
    coords: tuple

    @property
    def dim(self) -> int:
        return 0


@dataclass(frozen=True)
class ProductHyperplanes:
    """{y in (R^n)^m : q.y_j = offsets_j for every j}."""
    q: tuple
    offsets: tuple

    def __post_init__(self):
        if not any(self.q):
            raise ValueError("q must be nonzero")

    @property
    def n(self) -> int:
        return len(self.q)

    @property
    def m(self) -> int:
        return len(self.offsets)

    @property
    def dim(self) -> int:
        return self.m * (self.n - 1)


AffineSubspace = Union[Point, ProductHyperplanes]


@dataclass(frozen=True)
class ApproxElement:
    subspace: AffineSubspace
    radius: Number
    index: tuple
    law_value: Number = None


def norm_inf(q: Sequence[int]) -> int:
    return max(abs(x) for x in q)


def norm2_sq(q: Sequence[int]) -> int:
    return sum(x * x for x in q)


def exact_sqrt(n: int) -> Union[int, float]:
    r = math.isqrt(n)
    return r if r * r == n else math.sqrt(n)


def divide_by_norm2(value: Number, q: Sequence[int]) -> Number:
    root = exact_sqrt(norm2_sq(q))
    if isinstance(root, int) and isinstance(value, (int, Fraction)):
        return Fraction(value) / root
    return float(value) / float(root)


def distance(x: Sequence, s: AffineSubspace, norm: str = "sup") -> Number:
    """Distance from x to a point (sup or euclidean norm) or, for product
    hyperplanes, in the max-over-blocks euclidean norm."""
    x = tuple(Fraction(v) for v in x)
    if isinstance(s, Point):
        if len(x) != len(s.coords):
            raise ValueError("dimension mismatch")
        diffs = [abs(a - Fraction(b)) for a, b in zip(x, s.coords)]
        if norm == "sup":
            return max(diffs)
        sq = sum(d * d for d in diffs)
        num, den = math.isqrt(sq.numerator), math.isqrt(sq.denominator)
        if num * num == sq.numerator and den * den == sq.denominator:
            return Fraction(num, den)
        return math.sqrt(sq)
    n, m = s.n, s.m
    if len(x) != m * n:
        raise ValueError(f"dimension mismatch: expected {m * n} coordinates")
    worst = max(abs(sum(qi * xi for qi, xi in zip(s.q, x[j * n:(j + 1) * n])) - Fraction(s.offsets[j]))
                for j in range(m))
    return divide_by_norm2(worst, s.q)


def partition_Qi(q: Sequence[int]) -> Optional[int]:
    """Smallest 1-based i with q_i = |q|_inf, or None if no such coordinate."""
    if not any(q):
        raise ValueError("q must be nonzero")
    top = norm_inf(q)
    for i, v in enumerate(q, start=1):
        if v == top:
            return i
    return None


def transversal_length(q: Sequence[int], i: int) -> float:
    """Length of {t : |q_i t - const| < |q|_2}, i.e. 2|q|_2/q_i."""
    return 2.0 * math.sqrt(norm2_sq(q)) / q[i - 1]


class TransversalReport(NamedTuple):
    value: float
    cap: float
    argmax: Optional[tuple]


def condition_T_constant(f: FamilyDescriptor, bound: int, i: Optional[int] = None) -> TransversalReport:
    """Largest diameter of {x in T_i : d(x, P) < 1} over q in Q_i, |q|_inf <= bound."""
    if isinstance(f, (RationalPoints, CAdicPoints)):
        return TransversalReport(2.0, 2.0, None)
    if isinstance(f, Groshev):
        f = f.as_linear_forms()
    if not isinstance(f, LinearForms) or i is None:
        raise UnsupportedStructure("condition (A) needs a linear-forms family restricted to one Q_i")
    if not 1 <= i <= f.n:
        raise ValueError("i out of range")
    best, arg = 0.0, None
    for q in iter_shells(f.n, bound):
        if partition_Qi(q) == i:
            v = transversal_length(q, i)
            if v > best:
                best, arg = v, q
    return TransversalReport(best, 2.0 * math.sqrt(f.n), arg)


# ---------------------------------------------------------------- enumeration

def iter_shell(n: int, Q: int) -> Iterator[tuple]:
    """Integer vectors with |q|_inf = Q in lexicographic order."""
    if Q == 0:
        yield (0,) * n
        return
    for q in itertools.product(range(-Q, Q + 1), repeat=n):
        if norm_inf(q) == Q:
            yield q


def iter_shells(n: int, bound: int) -> Iterator[tuple]:
    for Q in range(1, bound + 1):
        yield from iter_shell(n, Q)


def shell_size(n: int, Q: int) -> int:
    return (2 * Q + 1) ** n - (2 * Q - 1) ** n if Q > 0 else 1


def law_at(law: Gauge, q: int) -> Number:
    """A radius law evaluated at the denominator/shell variable q (argument 1/q)."""
    return eval_gauge(law, Fraction(1, q))


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _offset_range(q: Sequence[int], b: Fraction, window: Tuple[Fraction, Fraction]) -> range:
    """Integers p with q.y = b + p for some y in the window cube."""
    lo, hi = window
    vmin = sum(qi * (lo if qi > 0 else hi) for qi in q)
    vmax = sum(qi * (hi if qi > 0 else lo) for qi in q)
    return range(_ceil(vmin - b), _floor(vmax - b) + 1)


def count_elements(f: FamilyDescriptor, bound: int, window=None) -> int:
    lo, hi = _window(f, window)
    if isinstance(f, RationalPoints):
        return sum(max(0, _floor(hi * q) - _ceil(lo * q) + 1) ** f.m for q in range(1, bound + 1))
    if isinstance(f, CAdicPoints):
        return sum(c_count(f.c, j, lo, hi) ** f.d for j in range(bound + 1))
    if isinstance(f, ResonantZones):
        return (2 * bound + 1) ** f.n - 1
    lf = f.as_linear_forms() if isinstance(f, Groshev) else f
    total = 0
    for q in iter_shells(lf.n, bound):
        total += math.prod(len(_offset_range(q, bj, (lo, hi))) for bj in lf.b)
    return total


def c_count(c: int, j: int, lo: Fraction, hi: Fraction) -> int:
    """Number of k with k c^-j in [lo, hi)."""
    step = c ** j
    return max(0, _ceil(hi * step) - _ceil(lo * step))


def _window(f, window):
    if window is not None:
        return Fraction(window[0]), Fraction(window[1])
    if isinstance(f, ResonantZones):
        return Fraction(-1, 2), Fraction(1, 2)
    return Fraction(0), Fraction(1)


def enumerate_family(f: FamilyDescriptor, bound: int, window=None, cap: int = DEFAULT_CAP) -> List[ApproxElement]:
    """All elements up to the truncation bound, in a fixed lexicographic order.

    Point windows are closed for rational points and half-open for c-adic
    points; subspace families keep the offsets whose subspace meets the window.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    count = count_elements(f, bound, window)
    if count > cap:
        raise ResourceError(count, cap)
    lo, hi = _window(f, window)
    out: List[ApproxElement] = []
    if isinstance(f, RationalPoints):
        for q in range(1, bound + 1):
            r = law_at(f.phi, q)
            ps = range(_ceil(lo * q), _floor(hi * q) + 1)
            for p in itertools.product(ps, repeat=f.m):
                out.append(ApproxElement(Point(tuple(Fraction(x, q) for x in p)), r, (p, q), r))
        return out
    if isinstance(f, CAdicPoints):
        for j in range(bound + 1):
            step = f.c ** j
            r = Fraction(1, step)
            ks = range(_ceil(lo * step), _ceil(hi * step))
            for k in itertools.product(ks, repeat=f.d):
                out.append(ApproxElement(Point(tuple(Fraction(x, step) for x in k)), r, (j, k), r))
        return out
    if isinstance(f, ResonantZones):
        for q in iter_shells(f.n, bound):
            law = real_power(Fraction(1, norm_inf(q)), f.nu)
            out.append(ApproxElement(ProductHyperplanes(q, (Fraction(0),)), divide_by_norm2(law, q),
                                     ((0,), q), law))
        return out
    groshev = isinstance(f, Groshev)
    lf = f.as_linear_forms() if groshev else f
    for q in iter_shells(lf.n, bound):
        law = law_at(lf.psi, norm_inf(q))
        # Groshev: psi(q) = |q|_inf * phi(|q|_inf)
        psi = law * norm_inf(q) if groshev else law
        radius = divide_by_norm2(psi, q)
        ranges = [_offset_range(q, bj, (lo, hi)) for bj in lf.b]
        for p in itertools.product(*ranges):
            offs = tuple(bj + pj for bj, pj in zip(lf.b, p))
            out.append(ApproxElement(ProductHyperplanes(q, offs), radius, (p, q), law))
    return out


def nearest_offsets(x: Sequence, q: Sequence[int], b: Sequence) -> tuple:
    """The integers p_j nearest to q.x_j - b_j."""
    n = len(q)
    out = []
    for j, bj in enumerate(b):
        v = sum(Fraction(qi) * Fraction(xi) for qi, xi in zip(q, x[j * n:(j + 1) * n])) - Fraction(bj)
        out.append(_floor(v + Fraction(1, 2)))
    return tuple(out)


def dist_to_Z(v: Fraction) -> Fraction:
    return abs(v - _floor(v + Fraction(1, 2)))


# ---------------------------------------------------------------- Dirichlet

class Witness(NamedTuple):
    p: tuple
    q: int
    distance: Fraction


def dirichlet_witness(x: Sequence, qmax: int) -> Optional[Witness]:
    """Best Dirichlet witness with q <= qmax.

    Among q with |x - p/q|_inf < q^(-1-1/d) (p the nearest integer vector to
    qx) the one minimizing q * |qx - p|_inf^d is returned, ties to the smaller
    q; for rational x with small denominator this is the exact denominator.
    """
    if qmax < 1:
        raise ValueError("qmax must be >= 1")
    xs = [Fraction(v) for v in x]
    d = len(xs)
    D = math.lcm(*(v.denominator for v in xs))
    nums = [v.numerator * (D // v.denominator) for v in xs]
    best_q, best_key = None, None
    for q in range(1, qmax + 1):
        worst = 0
        for a in nums:
            r = (q * a) % D
            worst = max(worst, min(r, D - r))
        # q * (worst/D)^d < 1  <=>  q * worst^d < D^d
        key = q * worst ** d
        if key < D ** d and (best_key is None or key < best_key):
            best_q, best_key = q, key
            if key == 0:
                break
    if best_q is None:
        return None
    p = tuple(_floor(best_q * v + Fraction(1, 2)) for v in xs)
    dist = max(abs(v - Fraction(pi, best_q)) for v, pi in zip(xs, p))
    return Witness(p, best_q, dist)
