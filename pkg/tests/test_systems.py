import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from dioph.gauge import Id
from dioph.systems import (CAdicPoints, Groshev, LinearForms, Point, ProductHyperplanes, RationalPoints,
                           ResonantZones, ResourceError, UnsupportedStructure, condition_T_constant,
                           count_elements, dirichlet_witness, distance, enumerate_family, iter_shell,
                           parse_family, partition_Qi, shell_size, transversal_length)

from .oracles import hyperplane_distance, rational_points_bruteforce


def test_rational_points_enumeration():
    f = RationalPoints(1, Id(2))
    got = {(e.subspace.coords, e.index[1]) for e in enumerate_family(f, 2, window=(F(0), F(1)))}
    assert got == rational_points_bruteforce(1, 2)
    for e in enumerate_family(f, 2, window=(F(0), F(1))):
        assert e.radius == F(1, e.index[1] ** 2)


def test_cadic_enumeration():
    got = [(e.subspace.coords[0], e.radius) for e in enumerate_family(CAdicPoints(2, 1), 1)]
    assert got == [(0, 1), (0, F(1, 2)), (F(1, 2), F(1, 2))]


@pytest.mark.parametrize("Q", range(1, 12))
def test_shell_count_two_dims(Q):
    assert shell_size(2, Q) == 8 * Q == len(list(iter_shell(2, Q)))
    # ratio to the asymptotic 2^n n Q^(n-1)
    assert shell_size(2, Q) / (2 ** 2 * 2 * Q) == 1


@given(st.integers(2, 4), st.integers(1, 6))
def test_shell_size_matches_iteration(n, Q):
    shell = list(iter_shell(n, Q))
    assert len(shell) == shell_size(n, Q) == (2 * Q + 1) ** n - (2 * Q - 1) ** n
    assert all(max(abs(x) for x in q) == Q for q in shell)


def test_count_matches_enumeration():
    for f in (RationalPoints(2, Id(3)), LinearForms(1, 2, (F(0),), Id(2)), Groshev(1, 2, Id(3)),
              ResonantZones(2, F(2)), CAdicPoints(2, 2)):
        assert count_elements(f, 3) == len(enumerate_family(f, 3))


def test_resource_cap():
    with pytest.raises(ResourceError) as info:
        enumerate_family(RationalPoints(2, Id(3)), 30, cap=100)
    assert info.value.count == count_elements(RationalPoints(2, Id(3)), 30)


def test_radius_matches_law():
    f = LinearForms(1, 2, (F(0),), Id(3))
    for e in enumerate_family(f, 4):
        Q = max(abs(x) for x in e.subspace.q)
        assert e.law_value == F(1, Q ** 3)
        assert float(e.radius) == pytest.approx(float(e.law_value) / math.hypot(*e.subspace.q))


def test_groshev_radius_rescales_phi():
    f = Groshev(1, 2, Id(3))
    for e in enumerate_family(f, 3):
        Q = max(abs(x) for x in e.subspace.q)
        assert float(e.radius) == pytest.approx(Q * Q ** -3 / math.hypot(*e.subspace.q))


def test_distance_examples():
    s = ProductHyperplanes((3, 4), (F(0),))
    assert distance((1, 1), s) == F(7, 5)
    assert distance((F(4, 3), -1), s) == 0
    assert distance((F(1, 2), F(1, 4)), Point((0, 0))) == F(1, 2)
    with pytest.raises(ValueError):
        distance((1, 2, 3), s)


@given(st.tuples(st.integers(-6, 6), st.integers(-6, 6)).filter(any),
       st.fractions(-3, 3, max_denominator=7), st.tuples(st.fractions(-2, 2, max_denominator=9),
                                                         st.fractions(-2, 2, max_denominator=9)))
def test_distance_projection_oracle(q, b, x):
    assert float(distance(x, ProductHyperplanes(q, (b,)))) == pytest.approx(hyperplane_distance(q, b, x), abs=1e-12)


def test_partition_Qi_examples():
    assert partition_Qi((3, 1)) == 1
    assert partition_Qi((-2, 5)) == 2
    assert partition_Qi((-3, -3)) is None
    with pytest.raises(ValueError):
        partition_Qi((0, 0))


def test_transversal_examples():
    assert transversal_length((1, 2), 2) == pytest.approx(math.sqrt(5))
    rep = condition_T_constant(LinearForms(1, 2, (F(0),), Id(2)), 6, i=2)
    assert rep.value <= rep.cap == pytest.approx(2 * math.sqrt(2))
    assert condition_T_constant(RationalPoints(1, Id(2)), 5).value == 2
    with pytest.raises(UnsupportedStructure):
        condition_T_constant(ResonantZones(2, F(2)), 5)


def test_transversal_sampled():
    # sample T_2 = {x_2 = t, other coordinates 0}: |2t - c| < |q|_2 with c = 0
    q = (1, 2)
    ts = [k / 1000 for k in range(-5000, 5001)]
    inside = [t for t in ts if abs(q[1] * t) < math.hypot(*q)]
    assert max(inside) - min(inside) == pytest.approx(transversal_length(q, 2), abs=3e-3)


def test_dirichlet_examples():
    w = dirichlet_witness((F(1, 2),), 2)
    assert (w.p, w.q, w.distance) == ((1,), 2, 0)
    w = dirichlet_witness((F(1, 3), F(2, 3)), 3)
    assert (w.p, w.q, w.distance) == ((1, 2), 3, 0)


def test_dirichlet_random_64bit():
    rng = random.Random(7)
    for _ in range(100):
        D = rng.randrange(2 ** 63, 2 ** 64)
        x = (F(rng.randrange(D), D), F(rng.randrange(D), D))
        w = dirichlet_witness(x, 10 ** 4)
        assert w is not None
        assert max(abs(xi - F(pi, w.q)) for xi, pi in zip(x, w.p)) < F(1, 1) / w.q / math.sqrt(w.q)


def test_parse_family():
    f = parse_family("linearforms m=1 n=2 b=0,0 psi=powerlog s=3 t=0 c0=1")
    assert f == LinearForms(1, 2, (F(0),), Id(3))
    assert parse_family("cadic c=3 d=2") == CAdicPoints(3, 2)
