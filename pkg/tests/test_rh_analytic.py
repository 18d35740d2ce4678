import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rhbeltrami.harmonic import builtin_boundary
from rhbeltrami.rh_analytic import (
    AntipodalAmbiguity,
    UnimodularBV,
    audit_probes,
    builtin_lambda,
    bv_argument,
    conjugate_boundary_data,
    rh_solve,
    schwarz_analytic,
    total_variation,
    verify_boundary,
)

M = 1024
TH = 2 * np.pi * np.arange(M) / M
Z = np.array([0.0, 0.3 + 0.2j, -0.5j, 0.7 * np.exp(2j)])


def noisy_bv(M, seed=0):
    rng = np.random.default_rng(seed)
    t = 2 * np.pi * np.arange(M) / M
    wiggle = 0.2 * np.cumsum(rng.normal(size=M)) / math.sqrt(M)
    wiggle -= np.linspace(0, wiggle[-1], M)
    jumps = 0.9 * (t > 1.0) - 0.6 * (t > 4.0)
    return UnimodularBV(np.exp(1j * (t + wiggle + jumps)))


# --- total_variation -------------------------------------------------------

def test_total_variation_examples():
    assert total_variation(np.ones(16)) == 0.0
    vals = [total_variation(np.exp(2j * np.pi * np.arange(n) / n)) for n in (8, 64, 512)]
    assert vals[0] < vals[1] < vals[2] < 2 * math.pi
    assert vals[2] == pytest.approx(2 * math.pi, rel=1e-4)
    one_jump = np.where(TH < math.pi, 1.0 + 0j, np.exp(0.8j))
    # two chords: the jump at pi and the wraparound back to 1
    assert total_variation(one_jump) == pytest.approx(2 * abs(np.exp(0.8j) - 1))


@given(st.integers(2, 200), st.integers(0, 10 ** 6))
def test_refinement_does_not_decrease_variation(n, seed):
    rng = np.random.default_rng(seed)
    ang = np.sort(rng.uniform(0, 2 * np.pi, n))
    lam = lambda t: np.exp(1j * (np.sin(3 * t) + (t > 2.0)))
    coarse = total_variation(lam(ang))
    fine_t = np.sort(np.r_[ang, rng.uniform(0, 2 * np.pi, n)])
    assert total_variation(lam(fine_t)) >= coarse - 1e-12


# --- bv_argument -----------------------------------------------------------

def test_argument_constant_and_winding():
    assert not bv_argument(builtin_lambda("const", M)).alpha.any()
    a = bv_argument(builtin_lambda("winding", M))
    assert a.winding == 1
    assert np.ptp(a.alpha - TH) < 1e-12
    assert a.variation == pytest.approx(2 * math.pi, rel=1e-9)


def test_argument_step_jumps():
    a = bv_argument(builtin_lambda("step", M))
    assert len(a.jump_sizes) == 2
    assert np.abs(a.jump_sizes) == pytest.approx(math.pi / 2)
    assert np.abs(a.jump_chords) == pytest.approx(math.sqrt(2))


@pytest.mark.parametrize("lam", [
    builtin_lambda("winding", 4096),
    builtin_lambda("multijump", 4096),
    builtin_lambda("step", 4096),
    noisy_bv(4096),
])
def test_argument_lift_and_variation(lam):
    a = bv_argument(lam)
    assert np.max(np.abs(np.exp(1j * a.alpha) - lam.samples)) < 1e-8
    assert a.variation <= 1.5 * math.pi * lam.variation
    j, al = np.abs(a.jump_chords), np.abs(a.jump_sizes)
    assert np.all(j <= al + 1e-12) and np.all(al <= j * math.pi / 2 + 1e-12)


def test_antipodal_samples_raise():
    s = np.where(TH < math.pi, 1j, -1j)
    with pytest.raises(AntipodalAmbiguity):
        bv_argument(UnimodularBV(s))


def test_antipodal_resolved_by_refinement():
    f = lambda t: np.exp(1j * np.pi * np.sin(t) ** 2)
    a = bv_argument(UnimodularBV.from_function(f, 8))
    assert np.max(np.abs(np.exp(1j * a.alpha) - f(2 * np.pi * np.arange(8) / 8))) < 1e-12


# --- Schwarz integral and conjugate data -----------------------------------

def test_schwarz_examples():
    assert schwarz_analytic(np.full(M, 0.7))(Z) == pytest.approx(0.7, abs=1e-12)
    assert schwarz_analytic(np.cos(TH))(Z) == pytest.approx(Z, abs=1e-12)
    assert schwarz_analytic(np.sin(TH))(Z) == pytest.approx(-1j * Z, abs=1e-12)


def test_conjugate_boundary_data_smooth():
    rep = conjugate_boundary_data(np.cos(TH))
    assert rep.converged.all()
    assert rep.beta == pytest.approx(np.sin(TH), abs=1e-6)
    zero = conjugate_boundary_data(np.zeros(M))
    assert not zero.beta.any() and zero.flagged_arcs.is_empty


def test_conjugate_of_step_flags_only_near_jump():
    flagged = []
    for n in (1024, 4096):
        t = 2 * np.pi * np.arange(n) / n
        rep = conjugate_boundary_data(np.where(t < math.pi, 1.0, 0.0))
        bad = t[~rep.converged]
        dist = np.minimum(np.abs(bad - math.pi), np.minimum(bad, 2 * math.pi - bad))
        # a fixed number of cells around each jump, so the arc shrinks like 1/n
        assert dist.max() < 256 * 2 * np.pi / n
        flagged.append(rep.flagged_arcs.param_length)
    assert flagged[1] < flagged[0]


# --- audits ----------------------------------------------------------------

def test_verify_boundary_catches_fault():
    lam = builtin_lambda("const", M)
    phi = builtin_boundary("cos", M)
    sol = rh_solve(lam, phi, tol=1e-3)
    assert sol.report.pass_fraction == 1.0
    probes = audit_probes(M, sol.g.N, count=32)
    bad = verify_boundary(lambda z: sol.f(z) + 1.0, lam, phi, probes, 1e-3)
    assert bad.pass_fraction == 0.0
    assert np.abs(bad.limits) == pytest.approx(1.0, abs=1e-6)
    empty = verify_boundary(sol.f, lam, phi, [], 1e-3)
    assert empty.angles.size == 0 and empty.pass_fraction == 1.0


# --- rh_solve --------------------------------------------------------------

def test_rh_reduces_to_schwarz():
    sol = rh_solve(builtin_lambda("const", M), builtin_boundary("cos", M))
    f = sol.f(Z)
    assert f.real == pytest.approx(Z.real, abs=1e-6)
    # f = z + i c with c real
    assert np.ptp((f - Z).imag) < 1e-6


def test_rh_rotated_constant_problem():
    sol = rh_solve(builtin_lambda("i", M), builtin_boundary("const1", M))
    assert sol.report.pass_fraction == 1.0
    assert sol.f(Z).imag == pytest.approx(1.0, abs=1e-6)


def test_rh_winding_zero_data():
    sol = rh_solve(builtin_lambda("winding", M), builtin_boundary("zero", M))
    assert sol.report.pass_fraction == 1.0
    assert sol.check_factorization(Z) == 0.0


def test_rh_zero_free_factor():
    sol = rh_solve(builtin_lambda("multijump", M), builtin_boundary("sin", M))
    r = np.linspace(0, 0.95, 20)[:, None] * np.exp(1j * TH[::16])[None, :]
    assert np.min(np.abs(sol.A(r))) > 0
