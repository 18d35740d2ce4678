import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rhbeltrami.cantor_lusin import CantorSpec, cantor_eval, cantor_stage, quotient_audit
from rhbeltrami.harmonic import (
    BoundaryFunction,
    DiskField,
    angular_derivative,
    boundary_limits,
    builtin_boundary,
    conjugate,
    default_probe,
    gehring_construct,
    gehring_solution,
    hp_norm,
    poisson_extend,
    probe_limit,
)

M = 1024
TH = 2 * np.pi * np.arange(M) / M


def polar(r, th):
    return r * np.exp(1j * th)


def random_trig(seed, degree=12):
    rng = np.random.default_rng(seed)
    c = np.zeros(2 * degree + 1, complex)
    pos = rng.normal(size=degree) + 1j * rng.normal(size=degree)
    c[degree + 1:] = pos
    c[:degree] = np.conj(pos[::-1])
    c[degree] = rng.normal()
    return DiskField(c)


def test_poisson_constant_and_first_harmonic():
    one = poisson_extend(builtin_boundary("const1", M))
    z = polar(np.array([0.0, 0.3, 0.9]), np.array([0.0, 1.0, 4.0]))
    assert one(z) == pytest.approx(1.0, abs=1e-12)
    U = poisson_extend(builtin_boundary("cos", M))
    r, th = 0.7, 2.1
    assert U(polar(r, th)) == pytest.approx(r * math.cos(th), abs=1e-12)


def test_poisson_mean_value():
    sq = builtin_boundary("square", M)
    assert poisson_extend(sq)(0.0) == pytest.approx(sq.samples.mean(), abs=1e-14)


def test_angular_derivative_examples():
    U = poisson_extend(builtin_boundary("cos", M))
    d = angular_derivative(U)
    r, th = 0.6, 0.4
    assert d(polar(r, th)) == pytest.approx(-r * math.sin(th), abs=1e-12)
    const = angular_derivative(poisson_extend(builtin_boundary("const1", M)))
    assert np.max(np.abs(const.coeffs)) == 0.0


def test_conjugate_examples():
    V = conjugate(poisson_extend(builtin_boundary("cos", M)))
    r, th = 0.5, 1.3
    assert V(polar(r, th)) == pytest.approx(r * math.sin(th), abs=1e-12)
    assert np.max(np.abs(conjugate(poisson_extend(builtin_boundary("const1", M))).coeffs)) == 0.0


@given(st.integers(0, 10 ** 6))
def test_conjugate_parseval(seed):
    u = random_trig(seed)
    v = conjugate(u)
    assert np.sum(np.abs(v.coeffs) ** 2) <= np.sum(np.abs(u.coeffs) ** 2)
    assert v.coef(0) == 0


def test_hp_norm_examples():
    U = poisson_extend(builtin_boundary("cos", M))
    assert hp_norm(U, 2, [0.5, U.r_max]) == pytest.approx(math.sqrt(math.pi) * U.r_max, rel=1e-9)
    c = DiskField([0, -2.5, 0])
    for p in (1, 2, 3):
        assert hp_norm(c, p, [0.5]) == pytest.approx(2.5 * (2 * math.pi) ** (1 / p), rel=1e-12)


@given(st.integers(0, 10 ** 6), st.sampled_from([(2.0, 1.0), (3.0, 2.0), (4.0, 1.5)]))
def test_hp_holder(seed, pq):
    p, q = pq
    u = random_trig(seed)
    lhs = hp_norm(u, q, [0.8])
    assert lhs <= (2 * math.pi) ** (1 / q - 1 / p) * hp_norm(u, p, [0.8]) * (1 + 1e-12)


def test_probe_cos_and_zero():
    U = poisson_extend(builtin_boundary("cos", M))
    res = probe_limit(U, default_probe(0.0, U.N))
    assert res.converged and res.limit == pytest.approx(1.0, abs=1e-6)
    Z = DiskField(np.zeros(2 * U.N + 1))
    assert probe_limit(Z, default_probe(1.0, Z.N)).limit == 0.0


def test_probe_at_jump_reports_distinct_edges():
    U = poisson_extend(builtin_boundary("step", 4096))
    res = probe_limit(U, default_probe(0.0, U.N))
    assert not res.converged
    assert res.path_limits[0] - res.path_limits[2] > 0.5


@pytest.mark.parametrize("f, df", [
    (lambda t: np.sin(2 * t), lambda t: 2 * np.cos(2 * t)),
    (lambda t: np.exp(np.cos(t)), lambda t: -np.sin(t) * np.exp(np.cos(t))),
    (lambda t: 1 / (1.5 + np.cos(t)), lambda t: np.sin(t) / (1.5 + np.cos(t)) ** 2),
])
def test_derivative_probe_smooth(f, df):
    d = angular_derivative(poisson_extend(BoundaryFunction(f(TH))))
    for theta in (0.3, 2.0, 5.1):
        res = probe_limit(d, default_probe(theta, d.N))
        assert res.limit == pytest.approx(df(theta), abs=1e-3)


def test_derivative_of_staircase_vanishes_on_gaps():
    spec = CantorSpec("const", c=3.0, depth=6)
    n = 16384
    t = 2 * np.pi * np.arange(n) / n
    d = angular_derivative(poisson_extend(BoundaryFunction(cantor_eval(spec, t / (2 * np.pi)))))
    iv = cantor_stage(spec, 2).intervals
    for m in 0.5 * (iv[:-1, 1] + iv[1:, 0]):
        res = probe_limit(d, default_probe(2 * np.pi * m, d.N))
        assert abs(res.limit) < 1e-4
        assert res.residuals[1][-1] < res.residuals[1][0]


def test_boundary_limits_match_grid_probe():
    U = poisson_extend(builtin_boundary("sin", M))
    lim, ok = boundary_limits(U, M)
    assert ok.all()
    assert lim == pytest.approx(np.sin(TH), abs=1e-6)


def test_gehring_zero_data():
    u = gehring_solution(builtin_boundary("zero", M), 0.05, 2)
    assert np.max(np.abs(u.coeffs)) == 0.0


@pytest.mark.parametrize("name", ["const1", "step"])
def test_gehring_small_potential_with_derivative_on_q(name):
    g = gehring_construct(builtin_boundary(name, 4096), 0.05, 3)
    assert np.max(np.abs(g.lusin.Phi)) <= 0.05
    audit = quotient_audit(g.lusin)
    assert audit["fraction"] >= 0.99
    # u is the angular derivative of a field with small boundary values
    assert np.max(np.abs(g.U.circle_values(g.U.r_max, 4096))) <= 0.05 + 1e-9
