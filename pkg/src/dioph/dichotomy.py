"""Verdict engine: criterion series, Hausdorff-measure and large-intersection
verdicts, dimensions, and the shell-sum comparison for resonant zones.

Power-log inputs are decided exactly from the exponent ledger of the general
term ``c * q**a * log(q)**b * log(log(q))**c``; anything else goes through a
numeric fit that never claims more than the data supports.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from .gauge import (Gauge, GaugeContext, GaugeError, Id, PowerLog, Tabulated, dimension_index,
                    epsilon_of, factor_power, in_class, log_eval, precedes, times_power)
from .textform import ParseError, integer, rat, rat_vector, split_record

NUMERIC_QMAX = 10 ** 6
# distance from the power boundary a = -1 below which the numeric fit abstains
NUMERIC_MARGIN = 0.005
# rms residual of the log-term fit above which the numeric path abstains
NUMERIC_MAX_RMS = 0.05


class PreconditionError(ValueError):
    """A hypothesis of the underlying result is violated."""


class Series(str, Enum):
    DIVERGES = "Diverges"
    CONVERGES = "Converges"
    INDETERMINATE = "Indeterminate"


class Measure(str, Enum):
    ZERO = "Zero"
    INFINITE = "Infinite"
    FULL = "FullInOpen"
    INDETERMINATE = "Indeterminate"


class Membership(str, Enum):
    IN = "InClass"
    OUT = "NotInClass"
    INDETERMINATE = "Indeterminate"


# ---------------------------------------------------------------- descriptors

@dataclass(frozen=True)
class Khintchine:
    m: int
    phi: Gauge


@dataclass(frozen=True)
class Schmidt:
    m: int
    n: int
    b: tuple
    psi: Gauge


@dataclass(frozen=True)
class GroshevSet:
    m: int
    n: int
    phi: Gauge


@dataclass(frozen=True)
class Resonant:
    n: int
    nu: Fraction


@dataclass(frozen=True)
class ResonantAll:
    n: int


@dataclass(frozen=True)
class DiophantineType:
    sigma: Fraction


@dataclass(frozen=True)
class Liouville:
    pass


@dataclass(frozen=True)
class Intersection:
    members: tuple


SetDescriptor = Union[Khintchine, Schmidt, GroshevSet, Resonant, ResonantAll,
                      DiophantineType, Liouville, Intersection]

DIVERGENCE_TAG = {
    Khintchine: "khintchine-gauge-dichotomy",
    Schmidt: "linear-forms-gauge-dichotomy",
    GroshevSet: "groshev-gauge-dichotomy",
    Resonant: "resonant-gauge-dichotomy",
    ResonantAll: "resonant-all-predicate",
    DiophantineType: "diophantine-type-gauge-dichotomy",
    Liouville: "liouville-predicate",
}


def ambient(desc: SetDescriptor) -> int:
    if isinstance(desc, Khintchine):
        return desc.m
    if isinstance(desc, (Schmidt, GroshevSet)):
        return desc.m * desc.n
    if isinstance(desc, (Resonant, ResonantAll)):
        return desc.n
    if isinstance(desc, (DiophantineType, Liouville)):
        return 1
    dims = {ambient(x) for x in desc.members}
    if len(dims) != 1:
        raise PreconditionError("intersection members must live in the same ambient space")
    return dims.pop()


def factor_exponent(desc: SetDescriptor) -> int:
    """k such that verdicts are stated for gauges Id^k * h."""
    if isinstance(desc, (Schmidt, GroshevSet)):
        return desc.m * (desc.n - 1)
    if isinstance(desc, (Resonant, ResonantAll)):
        return desc.n - 1
    if isinstance(desc, Intersection):
        ks = {factor_exponent(x) for x in desc.members}
        if len(ks) != 1:
            raise PreconditionError("intersection members use different product forms Id^k h")
        return ks.pop()
    return 0


def h_class(desc: SetDescriptor) -> int:
    """The d of the class D_d that the factored gauge h must belong to."""
    return ambient(desc) - factor_exponent(desc)


def validate(desc: SetDescriptor) -> None:
    if isinstance(desc, Intersection):
        if not desc.members:
            raise PreconditionError("empty intersection")
        ambient(desc)
        for x in desc.members:
            validate(x)
        return
    for name in ("m", "n"):
        if getattr(desc, name, 1) < 1:
            raise PreconditionError(f"{name} must be >= 1")
    if isinstance(desc, Schmidt):
        if desc.m + desc.n <= 2:
            raise PreconditionError("linear forms need m + n > 2 (the case m = n = 1 is excluded)")
        if len(desc.b) != desc.m:
            raise PreconditionError("offset b must have length m")
    if isinstance(desc, GroshevSet) and desc.n <= 1:
        raise PreconditionError("Groshev sets need n > 1")
    if isinstance(desc, Resonant) and not desc.nu > desc.n - 1:
        raise PreconditionError(f"requires nu > n-1 (resonant zones theorem), got nu={desc.nu}, n={desc.n}")
    if isinstance(desc, ResonantAll) and desc.n < 2:
        raise PreconditionError("R_n needs n >= 2")
    if isinstance(desc, DiophantineType) and not desc.sigma > 0:
        raise PreconditionError("requires sigma > 0")


def parse_set(text) -> SetDescriptor:
    """``khintchine m=1 phi=powerlog s=2`` ... ; members of an intersection are
    separated by ``+``."""
    toks = text.split() if isinstance(text, str) else list(text)
    if not toks:
        raise ParseError("empty set descriptor")
    head = toks[0].lower()
    if head == "intersection":
        groups, cur = [], []
        for tok in toks[1:]:
            if tok == "+":
                groups.append(cur)
                cur = []
            else:
                cur.append(tok)
        groups.append(cur)
        return Intersection(tuple(parse_set(g) for g in groups if g))
    rec = split_record(toks[1:])

    def need(key):
        if key not in rec:
            raise ParseError(f"{head}: missing field {key}=")
        return rec[key]

    def gauge(key):
        g = need(key)
        if isinstance(g, str):
            raise ParseError(f"{head}: field {key}= must be a gauge")
        return g

    if head == "khintchine":
        return Khintchine(integer(need("m")), gauge("phi"))
    if head in ("schmidt", "linearforms"):
        m = integer(need("m"))
        b = rat_vector(rec.get("b", ",".join(["0"] * m)))
        if len(b) != m and len(set(b)) == 1:
            b = (b[0],) * m
        return Schmidt(m, integer(need("n")), tuple(b), gauge("psi"))
    if head == "groshev":
        return GroshevSet(integer(need("m")), integer(need("n")), gauge("phi"))
    if head == "resonant":
        return Resonant(integer(need("n")), rat(need("nu")))
    if head == "resonantall":
        return ResonantAll(integer(need("n")))
    if head == "diophtype":
        return DiophantineType(rat(need("sigma")))
    if head == "liouville":
        return Liouville()
    raise ParseError(f"unknown set descriptor {head!r}")


def describe(desc: SetDescriptor) -> str:
    if isinstance(desc, Intersection):
        return "intersection " + " + ".join(describe(x) for x in desc.members)
    if isinstance(desc, Khintchine):
        return f"khintchine m={desc.m} phi={desc.phi}"
    if isinstance(desc, Schmidt):
        return f"schmidt m={desc.m} n={desc.n} b={','.join(str(x) for x in desc.b)} psi={desc.psi}"
    if isinstance(desc, GroshevSet):
        return f"groshev m={desc.m} n={desc.n} phi={desc.phi}"
    if isinstance(desc, Resonant):
        return f"resonant n={desc.n} nu={desc.nu}"
    if isinstance(desc, ResonantAll):
        return f"resonantall n={desc.n}"
    if isinstance(desc, DiophantineType):
        return f"diophtype sigma={desc.sigma}"
    return "liouville"


# ---------------------------------------------------------------- series shapes

@dataclass(frozen=True)
class SeriesShape:
    """General term  q^A * h(law(q) / q^shift), summed over q >= 1, or over
    Z^n \\ {0} grouped by sup-norm shells when ``shells`` is set."""
    A: Fraction
    law: Gauge
    shift: int = 0
    shells: Optional[int] = None


def series_shape(desc: SetDescriptor) -> SeriesShape:
    if isinstance(desc, Khintchine):
        return SeriesShape(Fraction(desc.m), desc.phi)
    if isinstance(desc, Schmidt):
        return SeriesShape(Fraction(desc.m), desc.psi, shift=1, shells=desc.n)
    if isinstance(desc, GroshevSet):
        return SeriesShape(Fraction(desc.m + desc.n - 1), desc.phi)
    if isinstance(desc, Resonant):
        return SeriesShape(Fraction(0), Id((Fraction(desc.nu) + 1) / desc.n))
    if isinstance(desc, DiophantineType):
        return SeriesShape(Fraction(0), Id((2 + Fraction(desc.sigma)) / 2))
    raise PreconditionError(f"{type(desc).__name__} has no criterion series")


def effective_exponents(shape: SeriesShape) -> Tuple[Fraction, Fraction]:
    """(A_eff, tau_eff) once shells are folded: q^A_eff * h(~q^-tau_eff)."""
    A = shape.A + ((shape.shells - 1) if shape.shells else 0)
    return A, shape.law.s + shape.shift


@dataclass
class SeriesClassification:
    verdict: Series
    method: str
    a: Optional[Fraction] = None
    b: Optional[Fraction] = None
    c: Optional[Fraction] = None
    partial_sums: Optional[Tuple[float, float]] = None
    increment_ratio: Optional[float] = None
    fit: Optional[Tuple[float, float, float]] = None
    trace: List[str] = field(default_factory=list)
    citations: List[str] = field(default_factory=list)


def decide_exponents(a: Fraction, b: Fraction, c: Fraction = Fraction(0)) -> Series:
    """Sum of q^a (log q)^b (log log q)^c: diverges iff a > -1, or a = -1 and
    b > -1, or a = -1, b = -1 and c >= -1."""
    if a != -1:
        return Series.DIVERGES if a > -1 else Series.CONVERGES
    if b != -1:
        return Series.DIVERGES if b > -1 else Series.CONVERGES
    return Series.DIVERGES if c >= -1 else Series.CONVERGES


def symbolic_series(shape: SeriesShape, h: PowerLog) -> SeriesClassification:
    A, tau = effective_exponents(shape)
    law = shape.law
    if tau > 0:
        a, b, c = A - tau * h.s, h.s * law.t + h.t, Fraction(0)
        note = f"h(law) ~ q^(-{tau}*{h.s}) log(q)^({h.s}*{law.t}+{h.t})"
    else:
        # law = c0 log(q)^t with t < 0, so log(1/law) ~ -t log log q
        a, b, c = A, h.s * law.t, h.t
        note = f"law is logarithmic: h(law) ~ log(q)^({h.s}*{law.t}) loglog(q)^{h.t}"
    verdict = decide_exponents(a, b, c)
    trace = [note, f"term ~ q^{a} log(q)^{b} loglog(q)^{c} -> {verdict.value}"]
    tags = ["series-integral-test"] + (["log-refined-boundary"] if a == -1 else [])
    return SeriesClassification(verdict, "symbolic", a, b, c, trace=trace, citations=tags)


def _log_shell_count(n: int, Q: np.ndarray) -> np.ndarray:
    # (2Q+1)^n - (2Q-1)^n = (2Q)^n * ((1 + 1/2Q)^n - (1 - 1/2Q)^n)
    x = 1.0 / (2.0 * Q)
    return n * np.log(2.0 * Q) + np.log(np.power(1 + x, n) - np.power(1 - x, n))


def log_terms(shape: SeriesShape, h: Gauge, hd: int, q: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Log of the general term at the integers q, and the mask of terms whose
    h-argument lies below eps_h."""
    lq = np.log(q)
    log_arg = log_eval(shape.law, -lq) - shape.shift * lq
    eps = epsilon_of(h, GaugeContext(hd))
    valid = log_arg < math.log(eps)
    safe = np.where(valid, log_arg, math.log(eps) - 1.0)
    out = float(shape.A) * lq + log_eval(h, safe)
    if shape.shells:
        out = out + _log_shell_count(shape.shells, q)
    return out, valid


def numeric_series(shape: SeriesShape, h: Gauge, hd: int, qmax: int = NUMERIC_QMAX) -> SeriesClassification:
    """Partial sums plus a least-squares fit of log(term) on (log q, loglog q, 1)
    over the last three decades; the verdict follows the fitted power only when
    it sits clearly on one side of -1 and the fit is tight."""
    q = np.arange(2, qmax + 1, dtype=float)
    lt, valid = log_terms(shape, h, hd, q)
    terms = np.where(valid, np.exp(np.where(valid, lt, 0.0)), 0.0)
    half = qmax // 2
    s_half = float(terms[: max(half - 1, 1)].sum())
    s_full = float(terms.sum())
    inc = (s_full - s_half) / s_half if s_half > 0 else math.inf
    lo = max(3, qmax // 1000)
    idx = np.unique(np.geomspace(lo, qmax, 4000).astype(np.int64)) - 2
    idx = idx[valid[idx]]
    trace = [f"partial sums S({half})={s_half:.17g} S({qmax})={s_full:.17g} increment ratio {inc:.6g}"]
    tags = ["numeric-series-fit"]
    if len(idx) < 50:
        trace.append("too few admissible terms for a fit")
        return SeriesClassification(Series.INDETERMINATE, "numeric", partial_sums=(s_half, s_full),
                                    increment_ratio=inc, trace=trace, citations=tags)
    lq = np.log(q[idx])
    X = np.column_stack([lq, np.log(lq), np.ones_like(lq)])
    coef, *_ = np.linalg.lstsq(X, lt[idx], rcond=None)
    rms = float(np.sqrt(np.mean((X @ coef - lt[idx]) ** 2)))
    a_fit, b_fit = float(coef[0]), float(coef[1])
    trace.append(f"fit: a={a_fit:.6g} b={b_fit:.6g} rms={rms:.3g} on q in [{lo}, {qmax}]")
    if rms > NUMERIC_MAX_RMS:
        verdict = Series.INDETERMINATE
        trace.append("fit residual too large")
    elif a_fit >= -1 + NUMERIC_MARGIN:
        verdict = Series.DIVERGES
    elif a_fit <= -1 - NUMERIC_MARGIN:
        verdict = Series.CONVERGES
    else:
        verdict = Series.INDETERMINATE
        trace.append("fitted power too close to -1")
    return SeriesClassification(verdict, "numeric", partial_sums=(s_half, s_full), increment_ratio=inc,
                                fit=(a_fit, b_fit, rms), trace=trace, citations=tags)


def not_little_o_power(h: Gauge, hd: int) -> Series:
    """The predicate 'h(r) is not o(r^s) for every s > 0', reported as
    Diverges when it holds and Converges when it fails."""
    if isinstance(h, PowerLog):
        return Series.DIVERGES if h.s == 0 else Series.CONVERGES
    est = dimension_index(h, GaugeContext(hd))
    if est.lower > 0.05:
        return Series.CONVERGES
    return Series.INDETERMINATE


def _require_class(h: Gauge, d: int) -> None:
    try:
        epsilon_of(h, GaugeContext(d))
    except GaugeError as exc:
        raise PreconditionError(f"h must lie in D_{d}: {exc}") from exc


def classify_series(desc: SetDescriptor, h: Gauge, method: str = "auto",
                    qmax: int = NUMERIC_QMAX) -> SeriesClassification:
    """Decide the criterion series of ``desc`` for the factored gauge h.

    For R_n and Liouville sets the slot carries the power predicate instead;
    for intersections it carries the conjunction over members.
    """
    validate(desc)
    if isinstance(desc, Intersection):
        factor_exponent(desc)
        parts = [classify_series(x, h, method, qmax) for x in desc.members]
        verdicts = {p.verdict for p in parts}
        if verdicts == {Series.DIVERGES}:
            v = Series.DIVERGES
        elif Series.CONVERGES in verdicts:
            v = Series.CONVERGES
        else:
            v = Series.INDETERMINATE
        trace = [f"member {i}: {p.verdict.value}" for i, p in enumerate(parts)]
        tags = ["countable-intersection-closure"] + [t for p in parts for t in p.citations]
        return SeriesClassification(v, "conjunction", trace=trace, citations=list(dict.fromkeys(tags)))
    hd = h_class(desc)
    _require_class(h, hd)
    if isinstance(desc, (ResonantAll, Liouville)):
        v = not_little_o_power(h, hd)
        return SeriesClassification(v, "predicate", trace=[f"h not o(r^s) for all s>0: {v.value}"],
                                    citations=[DIVERGENCE_TAG[type(desc)]])
    shape = series_shape(desc)
    symbolic_ok = isinstance(h, PowerLog) and isinstance(shape.law, PowerLog)
    if method == "symbolic" and not symbolic_ok:
        raise PreconditionError("symbolic classification needs power-log laws and gauge")
    if method == "symbolic" or (method == "auto" and symbolic_ok):
        res = symbolic_series(shape, h)
    else:
        res = numeric_series(shape, h, hd, qmax)
    res.citations.insert(0, DIVERGENCE_TAG[type(desc)])
    return res


# ---------------------------------------------------------------- verdicts

@dataclass
class FactorResult:
    ok: bool
    h: Optional[Gauge] = None
    reason: str = ""


def factor_gauge(G: Gauge, k: int, target_d: int) -> FactorResult:
    """Write G = Id^k * h with h in D_{target_d}."""
    if k == 0:
        h = G
    else:
        try:
            h = factor_power(G, k)
        except GaugeError as exc:
            return FactorResult(False, None, str(exc))
    try:
        epsilon_of(h, GaugeContext(target_d))
    except GaugeError as exc:
        return FactorResult(False, h, str(exc))
    return FactorResult(True, h, "")


@dataclass
class Verdict:
    series: Series
    hausdorff: Measure
    large_intersection: Membership
    gauge_factorization_ok: bool
    citations: List[str]
    h: Optional[Gauge] = None
    dimension: Optional[Fraction] = None
    classification: Optional[SeriesClassification] = None
    trace: List[str] = field(default_factory=list)


LEBESGUE_KINDS = (Khintchine, Schmidt, GroshevSet)


def _dimension_or_none(desc) -> Optional[Fraction]:
    try:
        return dimension_of(desc).value
    except PreconditionError:
        return None


def verdict(desc: SetDescriptor, G: Gauge, method: str = "auto", qmax: int = NUMERIC_QMAX) -> Verdict:
    validate(desc)
    if isinstance(desc, Intersection):
        return _intersection_verdict(desc, G, method, qmax)
    k, hd = factor_exponent(desc), h_class(desc)
    fac = factor_gauge(G, k, hd)
    if not fac.ok:
        return _certify_by_monotonicity(desc, G, k, hd, fac.reason, method, qmax)
    h = fac.h
    cls = classify_series(desc, h, method, qmax)
    trace = [f"G = Id^{k} * ({h})"] + cls.trace
    tags = list(cls.citations)
    if cls.verdict == Series.DIVERGES:
        member = Membership.IN
        if isinstance(desc, LEBESGUE_KINDS) and not precedes(h, Id(hd)):
            measure = Measure.FULL
            tags.append("lebesgue-case")
        else:
            measure = Measure.INFINITE
            tags.append("liouville-measure-olsen" if isinstance(desc, Liouville) else "class-measure-consequence")
        if isinstance(h, PowerLog):
            lower = h.with_log(-1)
            ok = in_class(lower, hd)
            trace.append(f"auxiliary larger gauge h_ = {lower}" + ("" if ok else " (outside the class)"))
    elif cls.verdict == Series.CONVERGES:
        member, measure = Membership.OUT, Measure.ZERO
        if isinstance(desc, Liouville):
            tags.append("liouville-measure-olsen")
        if isinstance(h, PowerLog):
            trace.append(f"auxiliary smaller gauge h^ = {h.with_log(1)}")
    else:
        member, measure = Membership.INDETERMINATE, Measure.INDETERMINATE
    return Verdict(cls.verdict, measure, member, True, list(dict.fromkeys(tags)), h,
                   _dimension_or_none(desc), cls, trace)


def _certify_by_monotonicity(desc, G, k, hd, reason, method, qmax) -> Verdict:
    """G is not of the form Id^k h.  If G precedes Id^k log(1/r)^-1 and that
    product gauge is certified, class monotonicity transfers the membership."""
    trace = [f"factorization failed: {reason}"]
    star_h = PowerLog(0, -1)
    star = PowerLog(k, -1) if k > 0 else star_h
    if precedes(G, star):
        cls = classify_series(desc, star_h, method, qmax)
        trace.append(f"G precedes Id^{k} * ({star_h}); that gauge gives {cls.verdict.value}")
        if cls.verdict == Series.DIVERGES:
            tags = cls.citations + ["gauge-monotonicity", "class-measure-consequence"]
            return Verdict(Series.DIVERGES, Measure.INFINITE, Membership.IN, False,
                           list(dict.fromkeys(tags)), None, _dimension_or_none(desc), cls, trace)
    trace.append("no certificate; the results do not apply off the product form")
    return Verdict(Series.INDETERMINATE, Measure.INDETERMINATE, Membership.INDETERMINATE, False,
                   [], None, _dimension_or_none(desc), None, trace)


def _intersection_verdict(desc: Intersection, G: Gauge, method: str, qmax: int) -> Verdict:
    parts = [verdict(x, G, method, qmax) for x in desc.members]
    members = {p.large_intersection for p in parts}
    if members == {Membership.IN}:
        member, series = Membership.IN, Series.DIVERGES
    elif Membership.OUT in members:
        member, series = Membership.OUT, Series.CONVERGES
    else:
        member, series = Membership.INDETERMINATE, Series.INDETERMINATE
    measures = {p.hausdorff for p in parts}
    trace = [f"member {i} ({describe(x)}): {p.large_intersection.value}, {p.hausdorff.value}"
             for i, (x, p) in enumerate(zip(desc.members, parts))]
    tags = ["countable-intersection-closure"]
    if Measure.ZERO in measures:
        measure = Measure.ZERO
    elif measures == {Measure.FULL}:
        measure = Measure.FULL
        tags.append("lebesgue-case")
    elif member == Membership.IN and isinstance(G, PowerLog):
        larger = G.with_log(-1)
        sub = [verdict(x, larger, method, qmax).large_intersection for x in desc.members]
        if all(v == Membership.IN for v in sub):
            measure = Measure.INFINITE
            tags += ["auxiliary-log-gauge", "class-measure-consequence"]
            trace.append(f"all members stay in class for the larger gauge {larger}")
        else:
            measure = Measure.INDETERMINATE
            trace.append(f"no common larger gauge certifies infinite measure ({larger} fails)")
    else:
        measure = Measure.INDETERMINATE
    for p in parts:
        tags += p.citations
    dim = _dimension_or_none(desc)
    return Verdict(series, measure, member, all(p.gauge_factorization_ok for p in parts),
                   list(dict.fromkeys(tags)), None, dim, None, trace)


# ---------------------------------------------------------------- dimensions

@dataclass
class DimensionResult:
    value: Optional[Fraction]
    trace: List[str]
    citations: List[str]
    bracket: Optional[Tuple[float, float]] = None


DIMENSION_TAG = {
    Khintchine: "jarnik-besicovitch-dimension",
    Schmidt: "linear-forms-dimension",
    GroshevSet: "linear-forms-dimension",
    Resonant: "resonant-dimension-formula",
    DiophantineType: "diophantine-type-dimension",
    ResonantAll: "resonant-all-predicate",
    Liouville: "liouville-predicate",
}


def dimension_of(desc: SetDescriptor, qmax: int = 10 ** 5) -> DimensionResult:
    """Threshold exponent of the full gauge at which the criterion flips."""
    validate(desc)
    if isinstance(desc, Intersection):
        parts = [dimension_of(x, qmax) for x in desc.members]
        if any(p.value is None for p in parts):
            return DimensionResult(None, ["member dimension undetermined"], ["intersection-dimension"])
        v = min(p.value for p in parts)
        tags = ["intersection-dimension"] + [t for p in parts for t in p.citations]
        return DimensionResult(v, [f"min over members of {[str(p.value) for p in parts]}"],
                               list(dict.fromkeys(tags)))
    k, hd = factor_exponent(desc), h_class(desc)
    tag = DIMENSION_TAG[type(desc)]
    if isinstance(desc, (ResonantAll, Liouville)):
        return DimensionResult(Fraction(k), [f"predicate holds only for s_h = 0, so dim = {k}"], [tag])
    shape = series_shape(desc)
    if not isinstance(shape.law, PowerLog):
        lo, hi = _numeric_threshold(shape, hd, qmax)
        return DimensionResult(None, [f"numeric bracket for the factored exponent: [{lo}, {hi}]"],
                               [tag, "numeric-series-fit"], (k + lo, k + hi))
    A, tau = effective_exponents(shape)
    if tau == 0:
        s = Fraction(hd)
        trace = ["logarithmic law: the series diverges for every h in the class"]
    else:
        s = (A + 1) / tau
        trace = [f"term at h = Id^s: q^({A} - {tau} s); flips at s = ({A}+1)/{tau} = {s}"]
        if s > hd:
            trace.append(f"clamped to the class bound {hd}")
        s = min(max(s, Fraction(0)), Fraction(hd))
    return DimensionResult(k + s, trace + [f"dimension = {k} + {s} = {k + s}"], [tag])


def _numeric_threshold(shape: SeriesShape, hd: int, qmax: int) -> Tuple[float, float]:
    """Bisection on the numeric verdict for h = Id^s.  An Indeterminate
    midpoint (the boundary itself, or too close to it) is bracketed by
    probing a small step to either side."""

    def probe(x: float) -> Series:
        return numeric_series(shape, Id(Fraction(x).limit_denominator(10 ** 6)), hd, qmax).verdict

    lo, hi = 0.0, float(hd)
    for _ in range(20):
        mid = 0.5 * (lo + hi)
        v = probe(mid)
        if v == Series.INDETERMINATE:
            step = (hi - lo) / 64
            left, right = probe(mid - step), probe(mid + step)
            if left != Series.DIVERGES or right != Series.CONVERGES:
                break
            lo, hi = mid - step, mid + step
        elif v == Series.DIVERGES:
            lo = mid
        else:
            hi = mid
    return lo, hi


# ---------------------------------------------------------------- equivconv

@dataclass
class EquivConvReport:
    line_series: SeriesClassification
    lattice_series: SeriesClassification
    agree: bool
    line_sum: float
    lattice_sum: float
    ratio: float


def equivconv_check(h: Gauge, n: int, nu, qmax: int) -> EquivConvReport:
    """Compare sum_q h(q^{-(nu+1)/n}) with sum over Z^n of h(|q|_inf^{-nu-1})."""
    nu = Fraction(nu)
    if n < 2:
        raise PreconditionError("needs n >= 2")
    if not nu > n - 1:
        raise PreconditionError(f"requires nu > n-1 (resonant zones theorem), got nu={nu}, n={n}")
    _require_class(h, 1)
    line = SeriesShape(Fraction(0), Id((nu + 1) / n))
    lattice = SeriesShape(Fraction(0), Id(nu + 1), shells=n)
    if isinstance(h, PowerLog):
        c1, c2 = symbolic_series(line, h), symbolic_series(lattice, h)
    else:
        c1, c2 = numeric_series(line, h, 1, qmax), numeric_series(lattice, h, 1, qmax)
    c2.trace.insert(0, f"shell count (2Q+1)^{n} - (2Q-1)^{n} ~ 2^{n} {n} Q^{n - 1} folded into the power")
    q = np.arange(1, qmax + 1, dtype=float)
    lt1, v1 = log_terms(line, h, 1, q)
    line_sum = float(np.exp(lt1[v1]).sum())
    Qmax = int((round(qmax ** (1.0 / n)) - 1) // 2) + 2
    while (2 * Qmax + 1) ** n > qmax:
        Qmax -= 1
    Q = np.arange(1, Qmax + 1, dtype=float)
    lt2, v2 = log_terms(lattice, h, 1, Q)
    lattice_sum = float(np.exp(lt2[v2]).sum()) if Qmax >= 1 else 0.0
    ratio = lattice_sum / line_sum if line_sum > 0 else math.nan
    return EquivConvReport(c1, c2, c1.verdict == c2.verdict, line_sum, lattice_sum, ratio)
