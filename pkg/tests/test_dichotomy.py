from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from dioph.citations import CITATIONS
from dioph.dichotomy import (DiophantineType, GroshevSet, Intersection, Khintchine, Liouville, Measure,
                             Membership, PreconditionError, Resonant, ResonantAll, Schmidt, Series,
                             classify_series, decide_exponents, dimension_of, equivconv_check, factor_gauge,
                             describe, parse_set, verdict)
from dioph.gauge import Id, PowerLog, Tabulated

from .oracles import exponent_rule

fracs = st.fractions(-3, 3, max_denominator=6)


@given(fracs, fracs, fracs)
def test_exponent_rule_matches_condensation_oracle(a, b, c):
    assert (decide_exponents(a, b, c) == Series.DIVERGES) == exponent_rule(a, b, c)


def test_classify_examples():
    k = Khintchine(1, Id(3))
    assert classify_series(k, Id(F(2, 3))).verdict == Series.DIVERGES
    assert classify_series(k, Id(F(7, 10))).verdict == Series.CONVERGES
    assert classify_series(DiophantineType(F(2)), Id(F(1, 2))).verdict == Series.DIVERGES
    assert dimension_of(DiophantineType(F(2))).value == F(1, 2)


def test_classify_log_boundary():
    k = Khintchine(1, Id(3))
    # at the power boundary the log exponent decides: q^-1 (log q)^(-t/3 ... ) via h = r^(2/3) log(1/r)^t
    assert classify_series(k, PowerLog(F(2, 3), F(-1), F(1))).verdict == Series.DIVERGES
    assert classify_series(k, PowerLog(F(2, 3), F(-2), F(1))).verdict == Series.CONVERGES
    assert classify_series(k, PowerLog(F(2, 3), F(1), F(1))).verdict == Series.DIVERGES


def test_precondition_errors_name_hypothesis():
    with pytest.raises(PreconditionError, match="nu > n-1"):
        verdict(Resonant(2, F(1, 2)), Id(1))
    with pytest.raises(PreconditionError, match="m \\+ n > 2"):
        verdict(Schmidt(1, 1, (F(0),), Id(2)), Id(1))
    with pytest.raises(PreconditionError, match="n > 1"):
        dimension_of(GroshevSet(1, 1, Id(3)))


def test_factor_gauge_examples():
    assert factor_gauge(Id(F(5, 3)), 1, 1).h == Id(F(2, 3))
    assert not factor_gauge(Id(F(1, 2)), 1, 1).ok
    fac = factor_gauge(PowerLog(F(2), F(1), F(1)), 1, 1)
    assert fac.ok and fac.h == PowerLog(F(1), F(1), F(1))


def test_verdict_examples():
    v = verdict(Resonant(2, F(2)), Id(F(5, 3)))
    assert v.h == Id(F(2, 3))
    assert (v.series, v.large_intersection, v.hausdorff) == (Series.DIVERGES, Membership.IN, Measure.INFINITE)
    assert v.dimension == F(5, 3)
    v = verdict(ResonantAll(2), PowerLog(F(1), F(-1), F(1)))
    assert v.large_intersection == Membership.IN
    v = verdict(Khintchine(1, Id(2)), Id(1))
    assert v.series == Series.DIVERGES and v.hausdorff == Measure.FULL
    v = verdict(Liouville(), PowerLog(F(0), F(-1), F(1)))
    assert v.large_intersection == Membership.IN
    v = verdict(Liouville(), Id(F(1, 100)))
    assert v.large_intersection == Membership.OUT and v.hausdorff == Measure.ZERO


def test_verdict_factorization_failure_is_certified_or_indeterminate():
    v = verdict(Resonant(2, F(2)), Id(F(1, 2)))
    assert not v.gauge_factorization_ok
    # Id^(1/2) precedes Id * log(1/r)^-1, which is in the class, so membership transfers
    assert v.large_intersection == Membership.IN
    assert "gauge-monotonicity" in v.citations


def test_citations_resolve():
    for desc, G in [(Resonant(2, F(2)), Id(F(5, 3))), (Liouville(), Id(F(1, 2))),
                    (Khintchine(2, Id(3)), Id(F(1, 2))), (DiophantineType(F(1)), Id(F(2, 3))),
                    (Intersection((Resonant(2, F(2)), Resonant(2, F(3)))), Id(F(3, 2)))]:
        v = verdict(desc, G)
        assert v.citations and all(t in CITATIONS for t in v.citations)


def test_dimension_examples():
    assert dimension_of(Resonant(3, F(4))).value == F(13, 5)
    assert dimension_of(DiophantineType(F(3))).value == F(2, 5)
    assert dimension_of(Khintchine(2, Id(3))).value == 1
    assert dimension_of(ResonantAll(3)).value == 2
    assert dimension_of(Liouville()).value == 0
    inter = Intersection((Resonant(2, F(2)), Resonant(2, F(4))))
    assert dimension_of(inter).value == min(F(5, 3), F(7, 5))


def test_dimension_khintchine_numeric_cross_check():
    k = Khintchine(2, Id(3))
    assert classify_series(k, Id(F(95, 100)), method="numeric").verdict == Series.DIVERGES
    assert classify_series(k, Id(F(105, 100)), method="numeric").verdict == Series.CONVERGES


def test_dimension_tabulated_law_brackets():
    law = Tabulated(((F(1, 2), F(1, 8)), (F(1, 1024), F(1, 2 ** 30))))
    d = dimension_of(Khintchine(1, law))
    assert d.value is None and d.bracket is not None
    lo, hi = d.bracket
    assert lo <= 2 / 3 <= hi


def test_equivconv_examples():
    r = equivconv_check(Id(F(2, 3)), 2, F(2), 10 ** 4)
    assert r.line_series.verdict == r.lattice_series.verdict == Series.DIVERGES
    r = equivconv_check(Id(F(7, 10)), 2, F(2), 10 ** 4)
    assert r.line_series.verdict == r.lattice_series.verdict == Series.CONVERGES
    with pytest.raises(PreconditionError):
        equivconv_check(Id(1), 2, F(1, 2), 100)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.fractions(F(1, 10), F(9, 10), max_denominator=10), st.integers(-2, 2))
def test_intersection_is_conjunction(m, s, t):
    a, b = Khintchine(m, Id(F(m + 1, m) + 1)), Khintchine(m, Id(F(m + 1, m) + 2))
    h = PowerLog(s, F(t), F(1))
    both = classify_series(Intersection((a, b)), h).verdict
    parts = {classify_series(a, h).verdict, classify_series(b, h).verdict}
    assert (both == Series.DIVERGES) == (parts == {Series.DIVERGES})


def test_parse_set_round_trip():
    for text in ["resonant n=2 nu=2", "diophtype sigma=1/2", "liouville", "resonantall n=3",
                 "khintchine m=1 phi=powerlog s=3 t=0 c0=1",
                 "intersection resonant n=2 nu=2 + resonant n=2 nu=3"]:
        d = parse_set(text)
        assert parse_set(describe(d)) == d
