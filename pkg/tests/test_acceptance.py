"""Acceptance criteria 1-9.  Each test records one PASS/FAIL line (shown in
the pytest terminal summary, or printed directly when run as a script)."""
import itertools
import math
import random
import time
from fractions import Fraction as F

import pytest

from dioph.classifier import (GOLDEN, PureTranslation, StandardMap, diophantine_type, irrationality_exponent,
                              rotation_number, siegel_gamma)
from dioph.dichotomy import (DiophantineType, GroshevSet, Intersection, Khintchine, Liouville, Membership,
                             Resonant, ResonantAll, Schmidt, Series, classify_series, dimension_of,
                             equivconv_check, factor_exponent, h_class, verdict)
from dioph.gauge import GaugeContext, Id, PowerLog, in_class, precedes, times_power
from dioph.netmeasure import CubeSet, generation_weights, net_measure, slab_exponent
from dioph.systems import dirichlet_witness

from .oracles import PartitionMatrix, golden_k_tail


def _line(report_line, n, ok, detail, elapsed, limit):
    fast = elapsed < limit
    status = "PASS" if ok and fast else "FAIL"
    report_line(f"{status} criterion {n}: {detail} [{elapsed:.2f}s / limit {limit}s]")
    return ok and fast


# ---------------------------------------------------------------- 1

def test_criterion_1_dimension_formulas(report_line):
    t0 = time.perf_counter()
    bad = []
    for n in (2, 3, 4):
        for nu in (F(n - 1) + F(1, 2), F(n), F(2 * n)):
            v = dimension_of(Resonant(n, nu)).value
            if v != n - 1 + F(n) / (nu + 1):
                bad.append(("resonant", n, nu, v))
    for sigma in (F(1, 2), F(1), F(2), F(3)):
        v = dimension_of(DiophantineType(sigma)).value
        if v != 2 / (2 + sigma):
            bad.append(("diophtype", sigma, v))
    el = time.perf_counter() - t0
    assert _line(report_line, 1, not bad, f"13 exact dimensions, mismatches={bad}", el, 1)


# ---------------------------------------------------------------- 2

def test_criterion_2_jarnik_threshold(report_line):
    t0 = time.perf_counter()
    bad = []
    cases = [(m, tau) for m in (1, 2) for tau in (F(2), F(3), F(7, 2)) if tau > F(m + 1, m)]
    for m, tau in cases:
        k = Khintchine(m, Id(tau))
        s0 = F(m + 1) / tau
        if dimension_of(k).value != s0:
            bad.append((m, tau, "dimension"))
        for ds, want in ((-F(1, 100), Series.DIVERGES), (F(1, 100), Series.CONVERGES)):
            h = Id(s0 + ds)
            sym = classify_series(k, h, method="symbolic").verdict
            num = classify_series(k, h, method="numeric", qmax=10 ** 6).verdict
            if sym != want or num != want:
                bad.append((m, tau, float(ds), sym.value, num.value))
    el = time.perf_counter() - t0
    assert _line(report_line, 2, not bad, f"{len(cases)} (m, tau) pairs, symbolic+numeric flips, failures={bad}",
                 el, 10)


# ---------------------------------------------------------------- 3

def _random_h(rng, hd):
    while True:
        kind = rng.random()
        if kind < 0.1:
            h = PowerLog(F(0), F(-rng.randint(1, 3)), F(1))
        elif kind < 0.2:
            h = PowerLog(F(hd), F(rng.randint(0, 2)), F(1))
        else:
            s = F(rng.randint(1, 12 * hd - 1), 12)
            h = PowerLog(s, F(rng.randint(-2, 2)), F(rng.randint(1, 3)))
        if in_class(h, hd):
            return h


def _random_law(rng, lo):
    """phi = c q^-tau with tau > lo, sometimes with a log factor."""
    tau = lo + F(rng.randint(1, 16), 4)
    return PowerLog(tau, F(rng.choice([0, 0, 1, -1])), F(1))


def _random_descriptor(rng):
    kind = rng.randrange(8)
    if kind == 0:
        m = rng.randint(1, 3)
        return Khintchine(m, _random_law(rng, F(m + 1, m)))
    if kind == 1:
        m, n = rng.choice([(1, 2), (2, 1), (1, 3), (2, 2)])
        b = tuple(F(rng.randint(0, 3), 4) for _ in range(m))
        return Schmidt(m, n, b, _random_law(rng, F(1)))
    if kind == 2:
        m, n = rng.choice([(1, 2), (2, 2), (1, 3)])
        return GroshevSet(m, n, _random_law(rng, F(m + n, m)))
    if kind == 3:
        n = rng.randint(2, 4)
        return Resonant(n, F(n - 1) + F(rng.randint(1, 12), 4))
    if kind == 4:
        return ResonantAll(rng.randint(2, 4))
    if kind == 5:
        return DiophantineType(F(rng.randint(1, 12), 4))
    if kind == 6:
        return Liouville()
    n = rng.randint(2, 3)
    members = tuple(Resonant(n, F(n - 1) + F(rng.randint(1, 12), 4)) for _ in range(rng.randint(2, 3)))
    return Intersection(members)


def test_criterion_3_biconditional_and_monotonicity(report_line):
    t0 = time.perf_counter()
    rng = random.Random(3)
    violations, kinds = [], set()
    for _ in range(200):
        desc = _random_descriptor(rng)
        kinds.add(type(desc).__name__)
        k, hd = factor_exponent(desc), h_class(desc)
        h = _random_h(rng, hd)
        G = times_power(h, k)
        v = verdict(desc, G, method="symbolic")
        series = classify_series(desc, h, method="symbolic").verdict
        if (v.large_intersection == Membership.IN) != (series == Series.DIVERGES):
            violations.append(("biconditional", desc, h))
    mono_checked = 0
    while mono_checked < 200:
        desc = _random_descriptor(rng)
        k, hd = factor_exponent(desc), h_class(desc)
        h1, h2 = _random_h(rng, hd), _random_h(rng, hd)
        if not precedes(h1, h2):
            h1, h2 = h2, h1
        if not precedes(h1, h2):
            continue
        mono_checked += 1
        g1, g2 = times_power(h1, k), times_power(h2, k)
        if not precedes(g1, g2):
            violations.append(("product order", desc, h1, h2))
        v1, v2 = verdict(desc, g1, method="symbolic"), verdict(desc, g2, method="symbolic")
        # the class for the larger gauge is contained in the class for the smaller one
        if v2.large_intersection == Membership.IN and v1.large_intersection != Membership.IN:
            violations.append(("monotonicity", desc, h1, h2))
    el = time.perf_counter() - t0
    assert _line(report_line, 3, not violations,
                 f"200 verdicts over {len(kinds)} kinds + {mono_checked} ordered pairs, violations={len(violations)}",
                 el, 60)


# ---------------------------------------------------------------- 4

def test_criterion_4_net_measure_exact(report_line):
    t0 = time.perf_counter()
    gauges = [Id(F(p, q)) for q in (1, 2, 3, 4) for p in range(1, 2 * q + 1)]
    mism, checked = 0, 0
    # d = 1: every leaf subset for J <= 3
    for J in range(4):
        P = PartitionMatrix(2, 1, J)
        for g in (gg for gg in gauges if gg.s <= 1):
            w, _ = generation_weights(g, 2, J)
            subsets = [tuple((i,) for i in range(2 ** J) if mask >> i & 1) for mask in range(2 ** (2 ** J))]
            want = P.minimum_batch([(s, w) for s in subsets])
            for s, wv in zip(subsets, want):
                checked += 1
                mism += net_measure(CubeSet(2, 1, J, s), g, GaugeContext(1)).value != wv
    # d = 2: 10^4 seeded samples
    rng = random.Random(4)
    mats = {J: PartitionMatrix(2, 2, J) for J in range(4)}
    batches = {J: [] for J in range(4)}
    for _ in range(10 ** 4):
        J = rng.randint(0, 3)
        g = rng.choice(gauges)
        dens = rng.random()
        leaves = tuple(c for c in itertools.product(range(2 ** J), repeat=2) if rng.random() < dens)
        batches[J].append((leaves, g))
    for J, items in batches.items():
        cases = [(leaves, generation_weights(g, 2, J)[0]) for leaves, g in items]
        want = mats[J].minimum_batch(cases)
        for (leaves, g), wv in zip(items, want):
            checked += 1
            mism += net_measure(CubeSet(2, 2, J, leaves), g, GaugeContext(2)).value != wv
    el = time.perf_counter() - t0
    assert _line(report_line, 4, mism == 0, f"{checked} cube sets vs partition oracle, mismatches={mism}", el, 60)


# ---------------------------------------------------------------- 5

def test_criterion_5_slab_exponent(report_line):
    t0 = time.perf_counter()
    r = slab_exponent(2, 2, [4, 8, 16, 32])
    bound_ok = all(c <= max(r.betas) * Q ** 3 for Q, c in zip(r.shells, r.max_counts))
    ok = abs(r.slope - 3) <= 0.15 and r.beta_spread <= 4 and bound_ok
    el = time.perf_counter() - t0
    assert _line(report_line, 5, ok, f"slope={r.slope:.4f} counts={r.max_counts} beta max/min={r.beta_spread:.3f}",
                 el, 30)


# ---------------------------------------------------------------- 6

def test_criterion_6_equivconv(report_line):
    t0 = time.perf_counter()
    rng = random.Random(6)
    bad, ratios = [], []
    for _ in range(20):
        n = rng.choice([2, 3])
        nu = F(n - 1) + F(rng.randint(1, 12), 4)
        s = F(rng.randint(1, 12), 12)
        t = F(rng.randint(-2, 2))
        if s == 1 and t < 0:
            t = -t
        r = equivconv_check(PowerLog(s, t, F(1)), n, nu, 10 ** 5)
        ratios.append(r.ratio)
        if not (r.agree and F(1, 64) <= r.ratio <= 64):
            bad.append((n, nu, s, t, r.ratio))
    el = time.perf_counter() - t0
    assert _line(report_line, 6, not bad,
                 f"20 instances agree, ratio range [{min(ratios):.3f}, {max(ratios):.3f}], failures={bad}", el, 30)


# ---------------------------------------------------------------- 7

def test_criterion_7_classifier_ground_truths(report_line):
    t0 = time.perf_counter()
    notes, ok = [], True
    k_tail = diophantine_type(GOLDEN, 0, 10 ** 4).rows[-1].k_tail
    hurwitz = 0.44 <= k_tail <= 0.46 and abs(k_tail - golden_k_tail(10 ** 4)) < 1e-9
    ok &= hurwitz
    notes.append(f"K_Q={k_tail:.5f}")
    mu = irrationality_exponent(GOLDEN, 20).estimate
    ok &= abs(mu - 2) <= 0.01
    notes.append(f"mu={mu:.6f}")
    rep = siegel_gamma([F(1), F(3, 7)], F(1, 2), 50)
    ok &= rep.trend == "HitZero" and rep.hit_zero_at == (3, -7) and rep.rows[-1].gamma == 0
    notes.append(f"zero at {rep.hit_zero_at}")
    # n = 3, nu = 1/2 < n - 1 = 2
    rng = random.Random(7)
    good = 0
    for _ in range(20):
        omega = [F(1)] + [F(rng.randrange(1, D), D) for D in (rng.randrange(2 ** 31, 2 ** 32) for _ in range(2))]
        good += siegel_gamma(omega, F(1, 2), 100).trend in ("Decaying", "HitZero")
    ok &= good >= 18
    notes.append(f"decaying {good}/20")
    el = time.perf_counter() - t0
    assert _line(report_line, 7, ok, ", ".join(notes), el, 60)


# ---------------------------------------------------------------- 8

def test_criterion_8_dirichlet(report_line):
    t0 = time.perf_counter()
    rng = random.Random(8)
    fails = 0
    for _ in range(100):
        D = rng.randrange(2 ** 32, 2 ** 64)
        x = (F(rng.randrange(D), D), F(rng.randrange(D), D))
        w = dirichlet_witness(x, 10 ** 3)
        if w is None or w.q > 10 ** 3:
            fails += 1
            continue
        dist = max(abs(xi - F(pi, w.q)) for xi, pi in zip(x, w.p))
        # dist < q^(-3/2)  <=>  dist^2 q^3 < 1, checked exactly
        fails += not (dist * dist * w.q ** 3 < 1)
    el = time.perf_counter() - t0
    assert _line(report_line, 8, fails == 0, f"100 points, failures={fails}", el, 10)


# ---------------------------------------------------------------- 9

def test_criterion_9_rotation_and_liouville_flip(report_line):
    t0 = time.perf_counter()
    notes, ok = [], True
    est = rotation_number(PureTranslation(F(2, 7)), 0, 1000)
    ok &= est.value == F(2, 7) and est.exact
    N = 10 ** 5
    worst = 0.0
    for Om in (F(1, 3), F(2, 7), F(61803, 100000)):
        worst = max(worst, abs(rotation_number(StandardMap(Om, F(0)), 0, N).value - float(Om)))
    ok &= worst <= 1 / N
    notes.append(f"K=0 max error {worst:.2e}")
    for sigma in (F(1), F(2)):
        s0 = 2 / (2 + sigma)
        flips = [verdict(DiophantineType(sigma), Id(s0 + ds)).large_intersection for ds in (-F(1, 100), 0, F(1, 100))]
        same = dimension_of(DiophantineType(sigma)).value == s0
        ok &= flips == [Membership.IN, Membership.IN, Membership.OUT] and same
        notes.append(f"sigma={sigma}: flip at {s0}")
    el = time.perf_counter() - t0
    assert _line(report_line, 9, ok, "; ".join(notes), el, 10)


if __name__ == "__main__":
    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]
    for fn in tests:
        try:
            fn(print)
        except AssertionError:
            pass
