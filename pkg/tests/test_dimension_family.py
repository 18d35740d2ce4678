import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rhbeltrami.dimension_family import (
    GammaSequence,
    basis_data,
    basis_member,
    family_member,
    independence_probe,
    partition_point,
    remainder_bound,
    remainder_bound_check,
    rh_family,
)
from rhbeltrami.harmonic import builtin_boundary, default_probe, probe_limit
from rhbeltrami.rh_analytic import builtin_lambda, rh_solve

M = 2 ** 12
T = 2 * np.pi * np.arange(M) / M


def test_partition_points():
    assert partition_point(0) == 0.0
    assert partition_point(1) == pytest.approx(math.pi)
    assert partition_point(2) == pytest.approx(1.5 * math.pi)


@pytest.mark.parametrize("n, lo, hi", [(1, 0.0, math.pi), (2, math.pi, 1.5 * math.pi)])
def test_basis_support(n, lo, hi):
    data = basis_data(n, M)
    outside = (T < lo) | (T >= hi)
    assert not data[outside].any()
    assert np.all(np.diff(data[~outside]) >= 0) and data[~outside].max() > 0.5


def test_basis_member_vanishes_at_origin():
    assert basis_member(1, M=M)(0.0) == pytest.approx(0.0, abs=1e-15)


def test_basis_member_gap_limit():
    u1 = basis_member(1, M=2 ** 14)
    # centre of the first-generation gap of the staircase on [0, pi)
    res = probe_limit(u1, default_probe(0.5 * math.pi, u1.N))
    assert abs(res.limit) < 1e-4


def test_family_linearity():
    z = np.array([0.2, 0.5j, -0.3 + 0.3j])
    assert not np.any(family_member(GammaSequence((0.0, 0.0)), M=M).u.coeffs)
    u1 = basis_member(1, M=M)
    assert family_member(GammaSequence((1.0,)), M=M).u(z) == pytest.approx(u1(z), abs=1e-14)
    diff = family_member(GammaSequence((1.0, -1.0)), M=M).u
    assert diff(z) == pytest.approx(u1(z) - basis_member(2, M=M)(z), abs=1e-12)


def test_remainder_examples():
    zero_tail = remainder_bound_check(GammaSequence((1.0, 0.0)), 1, [0.3, 0.6], M=M)
    assert all(row["measured"] == 0.0 and row["bound"] == 0.0 for row in zero_tail["rows"])
    assert remainder_bound(0.5, 1.0) == 12.0
    rep = remainder_bound_check(GammaSequence((0.0, 1.0)), 1, [0.5], M=M)
    assert rep["rows"][0]["bound"] == 12.0 and rep["ok"]


def test_remainder_small_r_is_linear():
    rep = remainder_bound_check(GammaSequence((0.0, 1.0, 0.5)), 1, [1e-3, 2e-3], M=M)
    m1, m2 = (row["measured"] for row in rep["rows"])
    assert m2 / m1 == pytest.approx(2.0, rel=1e-2)


@settings(max_examples=10)
@given(st.lists(st.floats(-2, 2), min_size=2, max_size=5), st.data())
def test_remainder_bound_property(gamma, data):
    g = GammaSequence(tuple(gamma))
    m = data.draw(st.integers(0, len(gamma) - 1))
    r = data.draw(st.floats(0.05, 0.95))
    assert remainder_bound_check(g, m, [r], M=M)["ok"]


def test_independence_examples():
    g0 = GammaSequence((0.0, 0.0))
    assert independence_probe(family_member(g0, M=M), 1)["vacuous"]
    w1 = independence_probe(family_member(GammaSequence.unit(1), M=M), 1)
    assert w1["ok"] and abs(w1["low"]) < 0.3 and abs(w1["high"] - 1.0) < 0.3
    w3 = independence_probe(family_member(GammaSequence.unit(3, 2.0), M=M), 3)
    assert w3["ok"] and abs(w3["high"] - 2.0) < 0.6
    lo, hi = partition_point(2), partition_point(3)
    assert lo < w3["low_angle"] < hi and lo < w3["high_angle"] < hi


def test_gamma_sequence_basics():
    g = GammaSequence((1.0, -0.5, 0.25), tail_bound=0.1)
    assert g[2] == -0.5 and g[7] == 0.0
    assert g.tail(1) == pytest.approx(0.85)
    with pytest.raises(IndexError):
        g[0]
    with pytest.raises(ValueError):
        GammaSequence((math.inf,))


@pytest.fixture(scope="module")
def rh_pair():
    Mr = 16384
    lam, phi = builtin_lambda("const", Mr), builtin_boundary("cos", Mr)
    base = rh_solve(lam, phi)
    one = rh_family(lam, phi, GammaSequence.unit(1))
    two = rh_family(lam, phi, GammaSequence.unit(1, 2.0))
    zero = rh_family(lam, phi, GammaSequence((0.0,)))
    return base, zero, one, two


def test_rh_family_zero_gamma_is_bitwise(rh_pair):
    base, zero, _, _ = rh_pair
    assert np.array_equal(zero.B.coeffs, base.B.coeffs)
    assert np.array_equal(zero.g.coeffs, base.g.coeffs)


def test_rh_family_members_differ_inside_share_boundary(rh_pair):
    _, zero, one, two = rh_pair
    assert abs(one.f(0.5) - two.f(0.5)) > 1e-3
    assert abs(one.f(0.5) - zero.f(0.5)) > 1e-3
    # unconverged audits sit next to the Cantor sets carrying the family data
    assert one.report.pass_fraction >= 0.85
    assert np.array_equal(one.report.passed, two.report.passed)
    assert np.abs(one.report.limits - two.report.limits).max() < 1e-2
