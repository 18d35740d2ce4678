import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from rhbeltrami.cantor_lusin import (
    CantorSpec,
    builtin_phi,
    cantor_eval,
    cantor_function,
    cantor_stage,
    flatten_on_subdivision,
    is_zero_capacity,
    lusin_antiderivative,
    parse_pk,
    quotient_audit,
)

TERNARY_LIKE = CantorSpec("const", c=3.0, depth=8)
DEXP = CantorSpec("double_exp", depth=10)


def test_stage_zero_is_unit_interval():
    assert cantor_stage(DEXP, 0).intervals.tolist() == [[0.0, 1.0]]


def test_first_stage_const3():
    # children keep a fraction 1/(2 p_k) of the parent each
    iv = cantor_stage(TERNARY_LIKE, 1).intervals
    assert iv == pytest.approx(np.array([[0, 1 / 6], [5 / 6, 1]]))


def test_double_exp_lengths_strictly_decrease():
    lengths = [cantor_stage(DEXP, n).total_length for n in range(0, 5)]
    assert all(b < a for a, b in zip(lengths, lengths[1:]))
    # total length 2^n * prod 1/(2 p_k) = prod e^{-2^k}
    assert lengths[3] == pytest.approx(math.exp(-(2 + 4 + 8)), rel=1e-12)


def test_nevanlinna_terms():
    rep = is_zero_capacity(DEXP, 10)
    assert rep.diverges is True and rep.terms == [1.0] * 10
    conv = is_zero_capacity(CantorSpec("const", c=3.0), 40)
    assert conv.diverges is False
    assert conv.partial_sums[-1] == pytest.approx(math.log(3.0), rel=1e-9)
    custom = is_zero_capacity(parse_pk("list:2,3,5"), 5)
    assert custom.diverges is None and len(custom.terms) == 3


def test_staircase_normalization_and_gap_value():
    assert cantor_eval(TERNARY_LIKE, [0.0, 1.0]).tolist() == [0.0, 1.0]
    assert cantor_eval(TERNARY_LIKE, 0.5) == 0.5
    psi = cantor_function(TERNARY_LIKE, 3)
    assert psi(0.5) == 0.5


def test_staircase_flat_on_gaps():
    st3 = cantor_stage(TERNARY_LIKE, 3).intervals
    mids = 0.5 * (st3[:-1, 1] + st3[1:, 0])
    h = 1e-6
    d = (cantor_eval(TERNARY_LIKE, mids + h) - cantor_eval(TERNARY_LIKE, mids - h)) / (2 * h)
    assert np.all(d == 0.0)


@given(arrays(np.int64, 30, elements=st.integers(0, 2 ** 30)))
def test_staircase_monotone_and_symmetric(k):
    # dyadic points keep 1 - t exact
    t = np.sort(k) / 2.0 ** 30
    v = cantor_eval(DEXP, t)
    assert np.all(np.diff(v) >= 0)
    assert cantor_eval(DEXP, 1.0 - t) == pytest.approx(1.0 - v, abs=1e-12)


def test_flatten_trivial_cases():
    z = flatten_on_subdivision(np.zeros(40), 0.1)
    assert not z.F.any() and not z.G.any()
    H = np.linspace(0.0, 0.02, 101)  # one segment: oscillation below eps/2
    one = flatten_on_subdivision(H, 0.1)
    assert one.cuts.tolist() == [0, 100]
    assert one.F[[0, -1]].tolist() == [0.0, 0.02]


@given(arrays(float, 200, elements=st.floats(-0.05, 0.05)), st.floats(0.01, 0.5))
def test_flatten_bounds(steps, eps):
    H = np.cumsum(steps)
    res = flatten_on_subdivision(H, eps)
    assert np.all(res.G[res.cuts] == 0.0)
    assert np.max(np.abs(res.G)) <= eps + np.max(np.abs(steps))


def test_flatten_identity_integral():
    H = np.linspace(0.0, 1.0, 1001)
    assert np.max(np.abs(flatten_on_subdivision(H, 0.1).G)) <= 0.1


def test_lusin_zero_data():
    res = lusin_antiderivative(np.zeros(513), 0.1, 2)
    assert not res.Phi.any()
    assert res.stages[0].Q.pieces == ((0.0, 1.0),)


@pytest.mark.parametrize("name", ["const1", "sign"])
def test_lusin_quotients_and_size(name):
    phi = builtin_phi(name, 4096)
    res = lusin_antiderivative(phi, 0.1, 3)
    assert np.max(np.abs(res.Phi)) <= 0.1
    assert res.Phi[0] == 0.0 and res.Phi[-1] == 0.0
    audit = quotient_audit(res)
    assert audit["points"] > 0.5 * phi.size and audit["fraction"] >= 0.99


@given(arrays(float, 65, elements=st.floats(-1, 1)), st.floats(0.01, 0.5))
def test_lusin_endpoints_pinned(phi, eps):
    res = lusin_antiderivative(phi, eps, 2)
    assert res.Phi[0] == 0.0 and res.Phi[-1] == 0.0


def test_lusin_rejects_bad_input():
    with pytest.raises(ValueError):
        lusin_antiderivative(np.array([0.0, np.nan, 1.0]), 0.1, 1)
    with pytest.raises(ValueError):
        lusin_antiderivative(np.zeros(10), 0.0, 1)


def test_parse_pk_forms():
    assert parse_pk("const:3").kind == "const"
    assert parse_pk("dexp").kind == "double_exp"
    with pytest.raises(ValueError):
        parse_pk("const:0.5")
