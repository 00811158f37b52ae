"""Diophantine classification of reals and frequency vectors: continued
fractions, Diophantine type tables, irrationality-exponent estimates, Siegel
resonance minima and rotation numbers of circle maps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

# ---------------------------------------------------------------- real inputs


@dataclass(frozen=True)
class ExactRational:
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class QuadraticSurd:
    """(a + b*sqrt(c)) / d with c > 0 not a perfect square."""
    a: int
    b: int
    c: int
    d: int = 1

    def __post_init__(self):
        if self.c <= 0 or math.isqrt(self.c) ** 2 == self.c:
            raise ValueError("surd radicand must be positive and not a perfect square")
        if self.d == 0 or self.b == 0:
            raise ValueError("need b != 0 and d != 0")

    def __float__(self):
        return (self.a + self.b * math.sqrt(self.c)) / self.d


@dataclass(frozen=True)
class DecimalString:
    """A decimal with explicit error radius 10^-precision."""
    digits: str
    precision: int

    @property
    def center(self) -> Fraction:
        return Fraction(self.digits)

    @property
    def radius(self) -> Fraction:
        return Fraction(1, 10 ** self.precision)


RealSpec = Union[ExactRational, QuadraticSurd, DecimalString]

GOLDEN = QuadraticSurd(1, 1, 5, 2)


def parse_real(text: str) -> RealSpec:
    """``p/q`` | ``surd:a,b,c[,d]`` | ``dec:<digits>@<prec>``."""
    text = text.strip()
    if text.startswith("surd:"):
        parts = [int(x) for x in text[5:].split(",")]
        if len(parts) not in (3, 4):
            raise ValueError("surd needs a,b,c or a,b,c,d")
        return QuadraticSurd(*parts)
    if text.startswith("dec:"):
        digits, _, prec = text[4:].partition("@")
        Fraction(digits)
        if not prec:
            prec = str(len(digits.partition(".")[2]))
        return DecimalString(digits, int(prec))
    return ExactRational(Fraction(text))


# ---------------------------------------------------------------- continued fractions

@dataclass
class ContinuedFraction:
    quotients: List[int]
    convergents: List[Tuple[int, int]]
    complete: bool = False      # rational input fully expanded
    truncated: bool = False     # decimal interval stopped determining quotients


def convergents_of(quotients: Sequence[int]) -> List[Tuple[int, int]]:
    out = []
    p0, q0, p1, q1 = 1, 0, 0, 1
    for a in quotients:
        p0, q0, p1, q1 = a * p0 + p1, a * q0 + q1, p0, q0
        out.append((p0, q0))
    return out


def _surd_pqd(x: QuadraticSurd) -> Tuple[int, int, int]:
    """Write x = (P + sqrt(D)) / Q with Q | D - P^2."""
    D = x.b * x.b * x.c
    P, Q = (x.a, x.d) if x.b > 0 else (-x.a, -x.d)
    P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    return P, Q, D


def _surd_floor(P: int, Q: int, D: int) -> int:
    r = math.isqrt(D)
    if Q > 0:
        return (P + r) // Q
    # floor(-(P + sqrt D)/|Q|) = -ceil(...), sqrt D irrational
    return -((P + r) // -Q + 1)


def continued_fraction(x: RealSpec, max_terms: int = 64) -> ContinuedFraction:
    quotients: List[int] = []
    complete = truncated = False
    if isinstance(x, ExactRational):
        v = x.value
        num, den = v.numerator, v.denominator
        while den and len(quotients) < max_terms:
            a, r = divmod(num, den)
            quotients.append(a)
            num, den = den, r
        complete = den == 0
    elif isinstance(x, QuadraticSurd):
        P, Q, D = _surd_pqd(x)
        while len(quotients) < max_terms:
            a = _surd_floor(P, Q, D)
            quotients.append(a)
            P = a * Q - P
            Q = (D - P * P) // Q
    else:
        lo, hi = x.center - x.radius, x.center + x.radius
        while len(quotients) < max_terms:
            a = math.floor(lo)
            if math.floor(hi) != a:
                truncated = True
                break
            quotients.append(a)
            if lo == a:
                truncated = True
                break
            lo, hi = 1 / (hi - a), 1 / (lo - a)
    return ContinuedFraction(quotients, convergents_of(quotients), complete, truncated)


def rational_approximant(x: RealSpec, error_exponent: int = 200) -> Tuple[Fraction, bool]:
    """A Fraction within 10^-error_exponent of x (exact for rationals, the
    interval center for decimals), and whether it is exact."""
    if isinstance(x, ExactRational):
        return x.value, True
    if isinstance(x, DecimalString):
        return x.center, False
    cf = continued_fraction(x, 8)
    target = 10 ** ((error_exponent + 1) // 2 + 1)
    n = 8
    while cf.convergents[-1][1] < target:
        n *= 2
        cf = continued_fraction(x, n)
    p, q = cf.convergents[-1]
    return Fraction(p, q), False


# ---------------------------------------------------------------- Diophantine type

@dataclass
class DiophTypeRow:
    Q: int
    k_min: float
    argmin: int
    k_tail: float
    tail_argmin: int


@dataclass
class DiophTypeReport:
    sigma: Fraction
    rows: List[DiophTypeRow]
    caveat: str = ""


def geometric_grid(qmax: int, per_decade: Sequence[int] = (1, 2, 5)) -> List[int]:
    out, base = [], 1
    while base <= qmax:
        out += [m * base for m in per_decade if m * base <= qmax]
        base *= 10
    if not out or out[-1] != qmax:
        out.append(qmax)
    return sorted(set(out))


def _k_value(q: int, dist_num: int, D: int, sigma: Fraction) -> float:
    """q^(sigma+2) |x - p/q| with |qx - p| = dist_num / D."""
    if dist_num == 0:
        return 0.0
    return math.exp((float(sigma) + 1) * math.log(q) + math.log(dist_num) - math.log(D))


def diophantine_type(x: RealSpec, sigma, qmax: int, grid: Optional[Sequence[int]] = None) -> DiophTypeReport:
    """K_Q = min q^(sigma+2)|x - p/q| over q <= Q (k_min), and over the last
    decade Q/10 < q <= Q (k_tail, the quantity that stabilizes)."""
    sigma = Fraction(sigma)
    if qmax < 1:
        raise ValueError("qmax must be >= 1")
    approx, exact = rational_approximant(x, error_exponent=max(60, 8 * len(str(qmax)) + 40))
    P, D = approx.numerator, approx.denominator
    grid = sorted(set(grid)) if grid else geometric_grid(qmax)
    # per-q exact distance |qx - p| = min(r, D - r)/D computed with integers
    vals = [math.inf]
    for q in range(1, qmax + 1):
        r = (q * P) % D
        vals.append(_k_value(q, min(r, D - r), D, sigma))
    rows = []
    best, arg = math.inf, 0
    qi = 1
    for Q in grid:
        while qi <= Q:
            if vals[qi] < best:
                best, arg = vals[qi], qi
            qi += 1
        lo = Q // 10 + 1
        tail_arg = min(range(lo, Q + 1), key=lambda q: (vals[q], q))
        rows.append(DiophTypeRow(Q, best, arg, vals[tail_arg], tail_arg))
    caveat = "" if exact or not isinstance(x, DecimalString) else \
        "decimal input: assumed irrational to the stated precision"
    return DiophTypeReport(sigma, rows, caveat)


# ---------------------------------------------------------------- irrationality exponent

@dataclass
class ExponentRow:
    k: int
    q: int
    mu_raw: float
    mu_local: Optional[float]


@dataclass
class IrrationalityReport:
    estimate: float
    raw_tail_max: float
    ledger: List[ExponentRow]
    rational: bool = False


def _log_abs_fraction(v: Fraction) -> float:
    return math.log(abs(v.numerator)) - math.log(v.denominator)


def irrationality_exponent(x: RealSpec, max_terms: int = 20) -> IrrationalityReport:
    """Per-convergent exponents mu_k = -log|x - p_k/q_k| / log q_k and the
    local slopes log(e_k/e_{k+1}) / log(q_{k+1}/q_k).

    The estimate is the largest local slope over the second half of the
    convergents; the raw running maximum converges only like 1/log q_k.
    Rational input gives math.inf, with the ledger filled up to the last
    nonzero error.
    """
    cf = continued_fraction(x, max_terms + 1)
    rational = isinstance(x, ExactRational)
    approx, _ = rational_approximant(x, error_exponent=4 * len(str(cf.convergents[-1][1])) + 60)
    errs = []
    for p, q in cf.convergents:
        e = abs(approx - Fraction(p, q))
        errs.append((q, _log_abs_fraction(e) if e else -math.inf))
    ledger = []
    for k, (q, le) in enumerate(errs[:max_terms]):
        if q < 2 or le == -math.inf:
            continue
        raw = -le / math.log(q)
        local = None
        if k + 1 < len(errs):
            q1, le1 = errs[k + 1]
            gap = math.log(q1 / q)
            if le1 != -math.inf and gap > 0:
                local = (le - le1) / gap
        ledger.append(ExponentRow(k, q, raw, local))
    if rational:
        raw_max = max((r.mu_raw for r in ledger), default=math.inf)
        return IrrationalityReport(math.inf, raw_max, ledger, True)
    tail = ledger[len(ledger) // 2:]
    raw_max = max((r.mu_raw for r in tail), default=math.nan)
    locals_ = [r.mu_local for r in tail if r.mu_local is not None]
    est = max(locals_) if locals_ else raw_max
    return IrrationalityReport(est, raw_max, ledger, False)


# ---------------------------------------------------------------- Siegel minima

class SurdValue:
    """A + B*sqrt(c) with rational A, B."""
    __slots__ = ("A", "B", "c")

    def __init__(self, A, B, c):
        self.A, self.B, self.c = Fraction(A), Fraction(B), c

    def is_zero(self) -> bool:
        return self.A == 0 and self.B == 0

    def __abs__(self) -> float:
        a, b = float(self.A), float(self.B) * math.sqrt(self.c)
        if (a >= 0) == (b >= 0):
            return abs(a + b)
        # opposite signs: (A^2 - B^2 c) / (A - B sqrt c) avoids cancellation
        return abs(float(self.A * self.A - self.B * self.B * self.c) / (a - b))


def _coeffs(w) -> Tuple[Fraction, Fraction, int]:
    """(A, B, c) with w = A + B sqrt(c)."""
    if isinstance(w, QuadraticSurd):
        return Fraction(w.a, w.d), Fraction(w.b, w.d), w.c
    return Fraction(w), Fraction(0), 0


def parse_omega(text: str) -> List[Union[Fraction, QuadraticSurd]]:
    out = []
    for tok in text.split(";") if ";" in text else text.split(","):
        tok = tok.strip()
        out.append(parse_real(tok) if tok.startswith("surd:") else Fraction(tok))
    return [x.value if isinstance(x, ExactRational) else x for x in out]


@dataclass
class SiegelRow:
    Q: int
    gamma: Union[Fraction, float]
    argmin: tuple


@dataclass
class SiegelReport:
    nu: Fraction
    rows: List[SiegelRow]
    trend: str
    hit_zero_at: Optional[tuple] = None
    slope: Optional[float] = None


def l1_shell(n: int, L: int):
    """Integer vectors with |q|_1 = L whose first nonzero entry is positive."""
    if n == 1:
        if L > 0:
            yield (L,)
        return
    for first in range(0, L + 1):
        rest = L - first
        if first == 0:
            yield from ((0,) + t for t in l1_shell(n - 1, rest))
        else:
            for t in _l1_all(n - 1, rest):
                yield (first,) + t


def _l1_all(n: int, L: int):
    if n == 0:
        if L == 0:
            yield ()
        return
    for v in range(-L, L + 1):
        yield from ((v,) + t for t in _l1_all(n - 1, L - abs(v)))


def siegel_gamma(omega: Sequence, nu, qmax: int) -> SiegelReport:
    """gamma_Q = min over 0 < |q|_1 <= Q of |q.w| |q|_1^nu, shell by shell."""
    nu = Fraction(nu)
    n = len(omega)
    if n < 2:
        raise ValueError("need n >= 2")
    if qmax < 1:
        raise ValueError("qmax must be >= 1")
    parts = [_coeffs(w) for w in omega]
    cs = {c for _, B, c in parts if B != 0}
    if len(cs) > 1:
        raise ValueError("surd entries must share one radicand")
    c = cs.pop() if cs else 0
    denom = math.lcm(*(x.denominator for A, B, _ in parts for x in (A, B)))
    Ai = [int(A * denom) for A, _, _ in parts]
    Bi = [int(B * denom) for _, B, _ in parts]
    rational = c == 0
    u, v = nu.numerator, nu.denominator

    def shell_min(L):
        """(integer-scaled |q.w|, q) minimizing over the deduplicated shell."""
        return _shell_min(L, Ai, Bi, c)

    grid = set(geometric_grid(qmax))
    rows: List[SiegelRow] = []
    best_key, best_val, best_q = None, None, None
    hit = None
    for L in range(1, qmax + 1):
        val, q = shell_min(L)
        if val == 0:
            hit = q
            best_val, best_q = 0, q
        elif rational and nu >= 0:
            # compare val * L^nu exactly via val^v * L^u
            key = val ** v * L ** u
            if best_key is None or key < best_key:
                best_key, best_val, best_q = key, (val, L), q
        else:
            g = val * L ** float(nu)
            if best_key is None or g < best_key:
                best_key, best_val, best_q = g, (val, L), q
        if L in grid or hit is not None:
            rows.append(SiegelRow(L, _gamma_value(best_val, denom, nu, rational), best_q))
        if hit is not None:
            break
    trend, slope = _trend(rows, hit)
    return SiegelReport(nu, rows, trend, hit, slope)


def _gamma_value(best, denom: int, nu: Fraction, rational: bool):
    if best == 0:
        return Fraction(0) if rational else 0.0
    val, L = best
    if rational and nu.denominator == 1:
        return Fraction(val, denom) * Fraction(L) ** nu
    return float(val) / denom * L ** float(nu)


def _abs_value(A: int, B: int, c: int):
    if c == 0:
        return abs(A)
    if A == 0 and B == 0:
        return 0
    return abs(SurdValue(A, B, c))


def _edge_min(A0: int, B0: int, dA: int, dB: int, lo: int, hi: int, c: int):
    """min over integers i in [lo, hi] of |(A0 + i dA) + (B0 + i dB) sqrt c|.
    The expression is affine in i, so the ends and the integers around the
    root are the only candidates."""
    pts = {lo, hi}
    if c == 0:
        if dA:
            fl = (-A0) // dA
            pts |= {fl, fl + 1}
    else:
        r = math.sqrt(c)
        slope = dA + dB * r
        if slope:
            root = -(A0 + B0 * r) / slope
            if math.isfinite(root) and lo - 2 <= root <= hi + 2:
                fl = math.floor(root)
                pts |= {fl - 1, fl, fl + 1, fl + 2}
    best = None
    for i in sorted(pts):
        if lo <= i <= hi:
            v = _abs_value(A0 + i * dA, B0 + i * dB, c)
            if best is None or v < best[0]:
                best = (v, i)
    return best


def _min_full(k: int, M: int, offA: int, offB: int, Ai, Bi, c):
    """Min of |off + sum_{i>=k} q_i w_i| over all q_k.. with l1 norm M; returns (value, tail)."""
    rem = len(Ai) - k
    if rem == 1:
        cands = [(M,), (-M,)] if M else [(0,)]
        return min((_abs_value(offA + t[0] * Ai[k], offB + t[0] * Bi[k], c), t) for t in cands)
    if rem == 2:
        best = None
        for s1, s2 in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            # q = (s1 i, s2 (M - i)), i in [0, M]
            A0, B0 = offA + s2 * M * Ai[k + 1], offB + s2 * M * Bi[k + 1]
            dA, dB = s1 * Ai[k] - s2 * Ai[k + 1], s1 * Bi[k] - s2 * Bi[k + 1]
            v, i = _edge_min(A0, B0, dA, dB, 0, M, c)
            if best is None or v < best[0]:
                best = (v, (s1 * i, s2 * (M - i)))
        return best
    best = None
    for qk in range(-M, M + 1):
        v, tail = _min_full(k + 1, M - abs(qk), offA + qk * Ai[k], offB + qk * Bi[k], Ai, Bi, c)
        if best is None or v < best[0]:
            best = (v, (qk,) + tail)
    return best


def _shell_min(L: int, Ai, Bi, c, k: int = 0):
    """Min over the shell |q|_1 = L restricted to q with first nonzero entry
    positive (q and -q give the same value)."""
    n = len(Ai) - k
    if n == 1:
        return _abs_value(L * Ai[k], L * Bi[k], c), (L,)
    if n == 2:
        best = (_abs_value(L * Ai[k + 1], L * Bi[k + 1], c), (0, L))
        for s2 in (1, -1):
            # q = (i, s2 (L - i)), i in [1, L]
            A0, B0 = s2 * L * Ai[k + 1], s2 * L * Bi[k + 1]
            dA, dB = Ai[k] - s2 * Ai[k + 1], Bi[k] - s2 * Bi[k + 1]
            v, i = _edge_min(A0, B0, dA, dB, 1, L, c)
            if v < best[0]:
                best = (v, (i, s2 * (L - i)))
        return best
    v0, t0 = _shell_min(L, Ai, Bi, c, k + 1)
    best = (v0, (0,) + t0)
    for qk in range(1, L + 1):
        v, tail = _min_full(k + 1, L - qk, qk * Ai[k], qk * Bi[k], Ai, Bi, c)
        if v < best[0]:
            best = (v, (qk,) + tail)
    return best


def _trend(rows: List[SiegelRow], hit) -> Tuple[str, Optional[float]]:
    """HitZero; Decaying when the log-log slope over the last decade is at most
    -1/4; BoundedBelow when gamma at Qmax is at least half of gamma at Qmax/10
    (and the slope is above -1/4); Inconclusive otherwise."""
    if hit is not None:
        return "HitZero", None
    if not rows:
        return "Inconclusive", None
    Qmax = rows[-1].Q
    g_end = float(rows[-1].gamma)
    ref = [r for r in rows if r.Q <= max(Qmax // 10, 1)]
    if not ref or g_end == 0:
        return "Inconclusive", None
    g_ref, Q_ref = float(ref[-1].gamma), ref[-1].Q
    if Q_ref == Qmax:
        return "Inconclusive", None
    slope = (math.log(g_end) - math.log(g_ref)) / (math.log(Qmax) - math.log(Q_ref))
    if slope <= -0.25:
        return "Decaying", slope
    if g_end / g_ref >= 0.5:
        return "BoundedBelow", slope
    return "Inconclusive", slope


LABELS = {"HitZero": "Resonant", "BoundedBelow": "Heuristic-In-Omega",
          "Decaying": "Heuristic-In-R", "Inconclusive": "Inconclusive"}


def classify_frequency(omega: Sequence, nu_grid: Sequence, qmax: int) -> List[Tuple[Fraction, str, SiegelReport]]:
    """Finite-Q heuristic label per nu; never a membership claim."""
    out = []
    for nu in nu_grid:
        rep = siegel_gamma(omega, nu, qmax)
        out.append((Fraction(nu), LABELS[rep.trend], rep))
    return out


# ---------------------------------------------------------------- circle maps

@dataclass(frozen=True)
class StandardMap:
    """Lift x -> x + Omega + K/(2 pi) sin(2 pi x)."""
    Omega: Fraction
    K: Fraction

    def __post_init__(self):
        object.__setattr__(self, "Omega", Fraction(self.Omega))
        object.__setattr__(self, "K", Fraction(self.K))


@dataclass(frozen=True)
class PureTranslation:
    rho: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rho", Fraction(self.rho))


CircleMapSpec = Union[StandardMap, PureTranslation]


def lift(f: CircleMapSpec, x: float) -> float:
    if isinstance(f, PureTranslation):
        return x + float(f.rho)
    return x + float(f.Omega) + float(f.K) / (2 * math.pi) * math.sin(2 * math.pi * x)


@dataclass
class RotationEstimate:
    value: Union[Fraction, float]
    error_bound: float
    exact: bool


def rotation_number(f: CircleMapSpec, x0=0, iterations: int = 10 ** 5, burn_in: int = 0) -> RotationEstimate:
    """(F^N(x) - x)/N after burn-in; |estimate - rho| <= 1/N for a monotone lift
    (rounding error of the float iteration is not included in the bound)."""
    if isinstance(f, PureTranslation):
        return RotationEstimate(f.rho, 0.0, True)
    if abs(f.K) > 1:
        raise ValueError("the lift is not monotone for |K| > 1")
    if iterations < 1 or burn_in < 0:
        raise ValueError("iterations must be >= 1 and burn_in >= 0")
    # keep y in [0,1) and count whole turns separately
    y, turns = float(x0) % 1.0, 0
    for _ in range(burn_in):
        y = lift(f, y)
        y -= math.floor(y)
    y_start = y
    for _ in range(iterations):
        z = lift(f, y)
        fl = math.floor(z)
        turns += fl
        y = z - fl
    return RotationEstimate((turns + y - y_start) / iterations, 1.0 / iterations, False)


def has_periodic_orbit(f: CircleMapSpec, p: int, q: int, samples: int = 4096) -> bool:
    """Sign change of F^q(x) - x - p on [0,1): an orbit of rotation number p/q."""
    vals = []
    for i in range(samples + 1):
        x = i / samples
        z = x
        for _ in range(q):
            z = lift(f, z)
        vals.append(z - x - p)
    return min(vals) <= 0 <= max(vals)
