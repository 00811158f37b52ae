"""Gauge functions: evaluation, d-regularization, ordering, validity radius,
pseudo-inverses and the dimension index.

Two representations are supported.  ``PowerLog`` gauges ``c0 * r**s *
log(1/r)**t`` are closed under every operation here and are handled exactly;
``Tabulated`` gauges are sampled monotone functions handled numerically,
with log-log linear interpolation between samples.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence, Union

Number = Union[Fraction, float, int]

# default bisection width for pseudo_inverse, in the radius variable
PSEUDO_INVERSE_TOL = 2.0 ** -48


class GaugeError(ValueError):
    """Invalid gauge, or gauge outside the required class."""


class DomainError(ValueError):
    pass


class RangeError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x)
    return Fraction(str(x).strip()) if isinstance(x, str) else Fraction(x)


def render_rational(x: Fraction) -> str:
    return str(x)


def iroot(n: int, k: int) -> Optional[int]:
    """Exact integer k-th root of n >= 0, or None."""
    if n < 0:
        return None
    if n in (0, 1) or k == 1:
        return n
    r = int(round(n ** (1.0 / k))) if n.bit_length() < 1000 else 1 << (n.bit_length() // k)
    # newton refinement for large inputs
    while True:
        nr = ((k - 1) * r + n // r ** (k - 1)) // k if r else 1
        if abs(nr - r) <= 1:
            break
        r = nr
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand ** k == n:
            return cand
    return None


def exact_power(r: Fraction, s: Fraction) -> Optional[Fraction]:
    """``r**s`` as a Fraction when it is rational, else None."""
    if r == 0:
        return Fraction(0) if s > 0 else (Fraction(1) if s == 0 else None)
    if s.denominator == 1:
        return r ** s.numerator
    if r < 0:
        return None
    num, den = r.numerator ** abs(s.numerator), r.denominator ** abs(s.numerator)
    a, b = iroot(num, s.denominator), iroot(den, s.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b) if s > 0 else Fraction(b, a)


def real_power(r: Number, s: Number) -> Number:
    """``r**s``, exact when both are rational and the result is rational."""
    if isinstance(r, (Fraction, int)) and isinstance(s, (Fraction, int)):
        e = exact_power(Fraction(r), Fraction(s))
        if e is not None:
            return e
    if r == 0:
        return 0.0 if s > 0 else math.inf
    return math.exp(float(s) * _log(r))


def _log(x: Number) -> float:
    if isinstance(x, Fraction):
        return math.log(x.numerator) - math.log(x.denominator)
    return math.log(x)


class _ZeroNearZero:
    """Marker: the regularized gauge vanishes identically near zero."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZeroNearZero"


ZERO_NEAR_ZERO = _ZeroNearZero()


@dataclass(frozen=True)
class GaugeContext:
    d: int = 1

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("ambient dimension must be >= 1")


@dataclass(frozen=True)
class PowerLog:
    """``c0 * r**s * log(1/r)**t``."""

    s: Fraction = Fraction(1)
    t: Fraction = Fraction(0)
    c0: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "s", as_fraction(self.s))
        object.__setattr__(self, "t", as_fraction(self.t))
        object.__setattr__(self, "c0", as_fraction(self.c0))
        if self.s < 0:
            raise GaugeError("power exponent must be nonnegative")
        if self.c0 <= 0:
            raise GaugeError("leading scale must be positive")
        if self.s == 0 and self.t >= 0:
            raise GaugeError("s = 0 needs t < 0, otherwise the function does not vanish at 0")

    @property
    def pure(self) -> bool:
        return self.t == 0

    def domain_bound(self) -> Fraction:
        return Fraction(1)

    def with_log(self, dt) -> "PowerLog":
        return PowerLog(self.s, self.t + dt, self.c0)

    def __str__(self):
        return (f"powerlog s={render_rational(self.s)} t={render_rational(self.t)} "
                f"c0={render_rational(self.c0)}")


@dataclass(frozen=True)
class Tabulated:
    """Samples ``(radius, value)`` with radii strictly decreasing toward 0."""

    samples: tuple

    def __post_init__(self):
        pts = tuple((as_fraction(r), as_fraction(v)) for r, v in self.samples)
        if len(pts) < 2:
            raise GaugeError("a tabulated gauge needs at least two samples")
        for (r0, v0), (r1, v1) in zip(pts, pts[1:]):
            if not r1 < r0:
                raise GaugeError("sample radii must be strictly decreasing")
            if v1 > v0:
                raise GaugeError("sample values must be nonincreasing toward 0")
        if pts[-1][0] <= 0 or pts[-1][1] < 0:
            raise GaugeError("radii must be positive and values nonnegative")
        object.__setattr__(self, "samples", pts)

    def domain_bound(self) -> Fraction:
        return self.samples[0][0]

    def __str__(self):
        body = ",".join(f"{render_rational(r)}:{render_rational(v)}" for r, v in self.samples)
        return f"tabulated {body}"


Gauge = Union[PowerLog, Tabulated]


def Id(s=1) -> PowerLog:
    return PowerLog(as_fraction(s), Fraction(0), Fraction(1))


# ---------------------------------------------------------------- parsing

def parse_gauge(text: Union[str, Sequence[str]]) -> Gauge:
    """Parse ``powerlog s=.. t=.. c0=..`` or ``tabulated r1:v1,r2:v2,...``."""
    tokens = text.split() if isinstance(text, str) else list(text)
    if not tokens:
        raise GaugeError("empty gauge")
    head, rest = tokens[0].lower(), tokens[1:]
    if head == "powerlog":
        kw = {"s": "1", "t": "0", "c0": "1"}
        for tok in rest:
            key, sep, val = tok.partition("=")
            if not sep or key not in kw:
                raise GaugeError(f"bad powerlog field {tok!r}")
            kw[key] = val
        try:
            return PowerLog(as_fraction(kw["s"]), as_fraction(kw["t"]), as_fraction(kw["c0"]))
        except (ValueError, ZeroDivisionError) as exc:
            raise GaugeError(f"bad powerlog field: {exc}") from exc
    if head == "tabulated":
        body = ",".join(rest)
        pairs = []
        for item in filter(None, body.split(",")):
            r, sep, v = item.partition(":")
            if not sep:
                raise GaugeError(f"bad sample {item!r}")
            try:
                pairs.append((as_fraction(r), as_fraction(v)))
            except (ValueError, ZeroDivisionError) as exc:
                raise GaugeError(f"bad sample {item!r}") from exc
        return Tabulated(tuple(pairs))
    raise GaugeError(f"unknown gauge form {head!r}")


# ---------------------------------------------------------------- evaluation

def _tab_segment(g: Tabulated, r: float):
    """Index k of the segment [r_{k+1}, r_k] used for r (last one extrapolates)."""
    pts = g.samples
    for k in range(len(pts) - 1):
        if r >= pts[k + 1][0]:
            return k
    return len(pts) - 2


def _tab_eval(g: Tabulated, r: Number) -> float:
    k = _tab_segment(g, r)
    (r0, v0), (r1, v1) = g.samples[k], g.samples[k + 1]
    if v0 == 0 or v1 == 0:
        # zero endpoint: linear in r, clipped at 0
        if v1 == 0 and r <= r1:
            return 0.0
        return max(0.0, float(v1 + (v0 - v1) * (Fraction(r) - r1) / (r0 - r1)))
    slope = (math.log2(v0) - math.log2(v1)) / (math.log2(r0) - math.log2(r1))
    return float(v1) * (float(r) / float(r1)) ** slope


def eval_gauge(g: Gauge, r: Number) -> Number:
    """Value of the gauge at radius ``r``; exact (Fraction) when rational."""
    if r < 0:
        raise DomainError("negative radius")
    if r == 0:
        return Fraction(0)
    if r > g.domain_bound():
        raise DomainError(f"radius {r} outside the gauge domain")
    if isinstance(g, Tabulated):
        return _tab_eval(g, r)
    if g.t == 0:
        val = real_power(r, g.s)
        return g.c0 * val if isinstance(val, Fraction) else float(g.c0) * val
    if r == 1:
        return 0.0 if g.t > 0 else math.inf
    lg = -_log(r)
    return float(g.c0) * math.exp(float(g.s) * -lg + float(g.t) * math.log(lg))


def log_eval(g: Gauge, log_r):
    """``log g(exp(log_r))`` for scalar or numpy array ``log_r`` (< 0)."""
    import numpy as np

    log_r = np.asarray(log_r, dtype=float)
    if isinstance(g, PowerLog):
        out = math.log(g.c0) + float(g.s) * log_r
        if g.t != 0:
            out = out + float(g.t) * np.log(-log_r)
        return out
    lr = np.array([_log(r) for r, _ in g.samples])
    lv = np.array([_log(v) if v > 0 else -np.inf for _, v in g.samples])
    # np.interp needs ascending abscissae
    lr, lv = lr[::-1], lv[::-1]
    inside = np.interp(log_r, lr, lv)
    slope = (lv[1] - lv[0]) / (lr[1] - lr[0])
    below = lv[0] + slope * (log_r - lr[0])
    return np.where(log_r < lr[0], below, inside)


def eval_cadic(g: Gauge, c: int, j: int) -> Number:
    """Gauge value at the c-adic diameter ``c**-j``."""
    return eval_gauge(g, Fraction(1, c ** j))


# ---------------------------------------------------------------- class tests

def _tab_ratio(g: Tabulated, d: int):
    return [float(v) / float(r) ** d for r, v in g.samples]


def _tab_tail_slope(g: Tabulated) -> float:
    (r0, v0), (r1, v1) = g.samples[-2], g.samples[-1]
    if v0 == 0 or v1 == 0:
        return math.inf
    return (math.log2(v0) - math.log2(v1)) / (math.log2(r0) - math.log2(r1))


def epsilon_of(g: Gauge, ctx: GaugeContext) -> float:
    """Validity radius: sup of eps in (0, 1] with g nondecreasing on [0, eps]
    and g(r)/r**d nonincreasing on (0, eps]."""
    d = ctx.d
    if isinstance(g, PowerLog):
        s, t = g.s, g.t
        if s > d:
            raise GaugeError(f"not in D_{d}: g(r)/r^{d} is increasing near 0 (s > d)")
        if s == d and t < 0:
            raise GaugeError(f"not in D_{d}: g(r)/r^{d} = log(1/r)^{t} tends to 0 (s = d, t < 0)")
        eps = 1.0
        if t > 0:
            # nondecreasing iff s*log(1/r) >= t
            eps = min(eps, math.exp(-float(t) / float(s)))
        if t < 0 and s < d:
            # g/r^d nonincreasing iff (d-s)*log(1/r) >= -t
            eps = min(eps, math.exp(float(t) / float(d - s)))
        return eps
    tail = _tab_tail_slope(g)
    if tail < 0 or tail > d:
        raise GaugeError(f"not in D_{d}: extrapolated log-log slope {tail:.6g} outside [0, {d}]")
    ratio = _tab_ratio(g, d)
    vals = [v for _, v in g.samples]
    # scan upward from the smallest radius
    best = len(g.samples) - 1
    for k in range(len(g.samples) - 2, -1, -1):
        if vals[k] >= vals[k + 1] and ratio[k] <= ratio[k + 1]:
            best = k
        else:
            break
    return min(1.0, float(g.samples[best][0]))


def in_class(g: Gauge, d: int) -> bool:
    try:
        epsilon_of(g, GaugeContext(d))
    except GaugeError:
        return False
    return True


def regularize(g: Gauge, ctx: GaugeContext):
    """``g_d(r) = r**d * inf_{rho <= r} g(rho)/rho**d``, or ZERO_NEAR_ZERO."""
    d = ctx.d
    if isinstance(g, PowerLog):
        if g.s > d or (g.s == d and g.t < 0):
            return ZERO_NEAR_ZERO
        return g
    if _tab_tail_slope(g) > d:
        return ZERO_NEAR_ZERO
    ratio = _tab_ratio(g, d)
    running = math.inf
    out = []
    for (r, v), q in reversed(list(zip(g.samples, ratio))):
        if q < running:
            running = q
            out.append((r, v))
        else:
            out.append((r, Fraction(running) * r ** d))
    return Tabulated(tuple(reversed(out)))


def precedes(g: Gauge, h: Gauge) -> Optional[bool]:
    """Whether g/h tends monotonically to infinity at 0 (g is strictly smaller).

    Returns None when a tabulated scan cannot decide.
    """
    if isinstance(g, PowerLog) and isinstance(h, PowerLog):
        return g.s < h.s or (g.s == h.s and g.t > h.t)
    radii = sorted({float(r) for gg in (g, h) if isinstance(gg, Tabulated) for r, _ in gg.samples},
                   reverse=True)
    top = min(float(g.domain_bound()), float(h.domain_bound()))
    radii = [r for r in radii if r <= top]
    if len(radii) < 2:
        return None
    try:
        ratios = [float(eval_gauge(g, r)) / float(eval_gauge(h, r)) for r in radii]
    except ZeroDivisionError:
        return None
    if any(not math.isfinite(x) for x in ratios):
        return None
    inc = all(b > a for a, b in zip(ratios, ratios[1:]))
    dec = all(b <= a for a, b in zip(ratios, ratios[1:]))
    tail_g = float(g.s) if isinstance(g, PowerLog) else _tab_tail_slope(g)
    tail_h = float(h.s) if isinstance(h, PowerLog) else _tab_tail_slope(h)
    if inc and tail_g < tail_h:
        return True
    if dec and tail_g >= tail_h:
        return False
    return None


# ---------------------------------------------------------------- inverses, index

def _min_float_with(pred, x: float) -> float:
    """Nudge x to the smallest float satisfying a monotone predicate."""
    while not pred(x):
        x = math.nextafter(x, math.inf)
    while x > 0 and pred(math.nextafter(x, 0.0)):
        x = math.nextafter(x, 0.0)
    return x


def pseudo_inverse(h: Gauge, ctx: GaugeContext, r: float, tol: float = PSEUDO_INVERSE_TOL) -> float:
    """``inf{rho in [0, eps_h) : h(rho)**(1/d) >= r}``.

    Pure powers are inverted in closed form; otherwise bisection stops once the
    bracket is narrower than ``tol`` and returns its lower end.
    """
    d = ctx.d
    eps = epsilon_of(h, ctx)
    if r < 0:
        raise DomainError("negative argument")
    if r == 0:
        return 0.0
    r = float(r)

    def root(rho: float) -> float:
        return float(eval_gauge(h, rho)) ** (1.0 / d)

    sup = root(eps)
    if r >= sup:
        raise RangeError(f"{r} is not below sup h^(1/d) = {sup!r}")

    def pred(rho: float) -> bool:
        return root(rho) >= r

    if isinstance(h, PowerLog) and h.t == 0:
        guess = (r ** d / float(h.c0)) ** (1.0 / float(h.s))
        return _min_float_with(pred, guess)
    lo, hi = 0.0, eps
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return lo


class SlopeEstimate(NamedTuple):
    value: float
    lower: float
    upper: float


def dimension_index(g: Gauge, ctx: GaugeContext):
    """``s_g = sup{s in (0, d) : Id**s precedes g}``.

    Exact Fraction for power-log gauges; a slope estimate with a band for
    tabulated ones.
    """
    d = ctx.d
    if isinstance(g, PowerLog):
        return min(g.s, Fraction(d))
    slopes = []
    for (r0, v0), (r1, v1) in zip(g.samples, g.samples[1:]):
        if v0 > 0 and v1 > 0:
            slopes.append((math.log2(v0) - math.log2(v1)) / (math.log2(r0) - math.log2(r1)))
    if not slopes:
        return SlopeEstimate(math.nan, 0.0, float(d))
    tail = slopes[-3:]
    clamp = lambda x: min(max(x, 0.0), float(d))
    return SlopeEstimate(clamp(slopes[-1]), clamp(min(tail)), clamp(max(tail)))


def factor_power(g: Gauge, k) -> PowerLog:
    """``g / Id**k`` for a power-log gauge; raises GaugeError when not a gauge."""
    if not isinstance(g, PowerLog):
        raise GaugeError("factorization is only available for power-log gauges")
    k = as_fraction(k)
    s = g.s - k
    if s < 0:
        raise GaugeError(f"remaining power exponent {s} is negative")
    if s == 0 and g.t >= 0:
        raise GaugeError("remaining factor does not vanish at 0")
    return PowerLog(s, g.t, g.c0)


def times_power(h: PowerLog, k) -> PowerLog:
    return PowerLog(h.s + as_fraction(k), h.t, h.c0)
