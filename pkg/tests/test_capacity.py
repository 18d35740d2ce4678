import itertools
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rhbeltrami.capacity import (
    BoundedSet1D,
    MassDistribution,
    capacity_via_potential,
    density_ratio,
    fekete_points,
    is_log_thin,
    log_potential,
    parse_set_spec,
    transfinite_diameter,
    vandermonde_product,
)


# --- independent oracles ---------------------------------------------------

def brute_force_triple(step=0.01):
    """Best triple on [0, 1] by exhaustive search on a grid, then a fine
    scan of the middle point with the outer two fixed."""
    g = np.arange(0.0, 1.0 + step / 2, step)
    best, arg = -1.0, None
    for a, b, c in itertools.combinations(range(g.size), 3):
        v = (g[b] - g[a]) * (g[c] - g[b]) * (g[c] - g[a])
        if v > best:
            best, arg = v, (g[a], g[b], g[c])
    lo, hi = arg[0], arg[2]
    mid = np.arange(lo, hi, 1e-4)
    v = (mid - lo) * (hi - mid) * (hi - lo)
    return (lo, mid[np.argmax(v)], hi), float(v.max())


def symmetric_pair_capacity(a, b):
    # z -> z^2 maps [-b,-a] u [a,b] two-to-one onto [a^2, b^2]
    return math.sqrt((b * b - a * a) / 4.0)


# --- vandermonde_product ---------------------------------------------------

@pytest.mark.parametrize("pts, expected", [
    ([0, 1], 1.0),
    ([0, 1, 1], 0.0),
    ([0, 0.5, 1], 0.25),
])
def test_vandermonde_small(pts, expected):
    assert vandermonde_product(pts) == pytest.approx(expected, abs=1e-15)


@given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False),
                min_size=2, max_size=8, unique=True),
       st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
       st.floats(-math.pi, math.pi))
def test_vandermonde_rigid_motion(pts, shift, angle):
    z = np.array(pts)
    moved = z * np.exp(1j * angle) + shift
    a, b = vandermonde_product(z), vandermonde_product(moved)
    assert b == pytest.approx(a, rel=1e-9, abs=1e-300)


@given(st.lists(st.floats(-2, 2), min_size=2, max_size=7, unique=True), st.floats(0.1, 4.0))
def test_vandermonde_homogeneity(pts, s):
    n = len(pts)
    z = np.array(pts)
    assert vandermonde_product(s * z) == pytest.approx(s ** (n * (n - 1) / 2) * vandermonde_product(z), rel=1e-9)


# --- fekete_points ---------------------------------------------------------

def test_fekete_two_points_are_endpoints():
    res = fekete_points(BoundedSet1D.interval(0, 1), 2)
    assert sorted(res.points.real) == pytest.approx([0.0, 1.0], abs=1e-9)
    assert res.v_n == pytest.approx(1.0, abs=1e-9)


def test_fekete_triple_matches_brute_force():
    (lo, mid, hi), v = brute_force_triple()
    res = fekete_points(BoundedSet1D.interval(0, 1), 3)
    assert np.sort(res.points.real) == pytest.approx([lo, mid, hi], abs=2e-4)
    assert res.v_n == pytest.approx(v, abs=1e-6)
    assert res.v_n == pytest.approx(0.25, abs=1e-8)


def test_fekete_circle_four_points():
    z = np.exp(2j * np.pi * np.arange(4) / 4)
    expected = vandermonde_product(z) ** (1 / 6)
    res = fekete_points(BoundedSet1D.circle(1.0), 4)
    assert res.diameter_estimate == pytest.approx(expected, rel=1e-9)


def test_fekete_sequence_nonincreasing():
    E = BoundedSet1D.interval(0, 1)
    d = [fekete_points(E, n).diameter_estimate for n in range(2, 20)]
    assert all(b <= a + 1e-6 for a, b in zip(d, d[1:]))


# --- transfinite_diameter --------------------------------------------------

def test_single_point_has_zero_capacity():
    est = transfinite_diameter(BoundedSet1D.interval(0.3, 0.3))
    assert est.value == 0.0 and est.robin_infinite and est.wiener == 0.0


@pytest.mark.parametrize("r", [0.5, 1.0, 2.0])
def test_circle_capacity_is_radius(r):
    est = transfinite_diameter(BoundedSet1D.circle(r), 32)
    assert est.value == pytest.approx(r, rel=0.02)


@pytest.mark.parametrize("a, b", [(0.5, 1.0), (0.35, 0.45)])
def test_symmetric_pair_against_closed_form(a, b):
    est = transfinite_diameter(BoundedSet1D.intervals([(-b, -a), (a, b)]), 32)
    exact = symmetric_pair_capacity(a, b)
    assert abs(est.value - exact) <= max(est.error_bar, 0.02 * exact)


def test_arc_capacity():
    # an arc of opening alpha on the unit circle has capacity sin(alpha/4)
    est = transfinite_diameter(BoundedSet1D.arcs([(0.0, 3.0)]), 32)
    assert abs(est.value - math.sin(0.75)) <= est.error_bar


def test_wiener_scale_relation():
    est = transfinite_diameter(BoundedSet1D.interval(0, 1), 24)
    assert est.wiener == pytest.approx(-1.0 / math.log(est.value), rel=1e-12)


# --- potential route -------------------------------------------------------

def test_log_potential_trivial_cases():
    unit = MassDistribution([0.0], [1.0])
    assert log_potential(unit, 1.0) == pytest.approx(0.0)
    assert math.isinf(log_potential(unit, 0.0))
    pair = MassDistribution([-1.0, 1.0], [0.5, 0.5])
    assert log_potential(pair, 0.0) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("spec", ["interval:0,1", "circle:1", "interval:-1,-0.5;0.5,1"])
def test_two_routes_agree(spec):
    E = parse_set_spec(spec)
    a = transfinite_diameter(E, 32)
    b = capacity_via_potential(E)
    assert b.value == pytest.approx(a.value, rel=0.03)


def test_potential_route_far_segments_dominate_one():
    one = capacity_via_potential(BoundedSet1D.interval(0, 1), 100)
    two = capacity_via_potential(BoundedSet1D.intervals([(0, 1), (5, 6)]), 100)
    assert two.value >= one.value


def test_circle_equilibrium_is_uniform():
    est, nu = capacity_via_potential(BoundedSet1D.circle(1.0), 64, return_measure=True)
    assert est.value == pytest.approx(1.0, abs=0.01)
    assert nu.weights.std() / nu.weights.mean() < 0.05


# --- density and thinness --------------------------------------------------

def test_density_ratio_trivial_ends():
    E = BoundedSet1D.interval(0, 1)
    assert density_ratio(E, 0.5, 0.25) == 0.0
    assert density_ratio(E, 3.0, 0.5) == 1.0


def test_density_ratio_half_segment():
    E = BoundedSet1D.interval(0, 1)
    # value scale: C([1, 3/2]) / C([1/2, 3/2]) = (1/8) / (1/4)
    assert density_ratio(E, 1.0, 0.5, scale="value") == pytest.approx(0.5, abs=0.01)
    # Wiener scale: log 4 / log 8
    assert density_ratio(E, 1.0, 0.5) == pytest.approx(math.log(4) / math.log(8), abs=0.01)


def test_thinness_reports():
    empty = is_log_thin(BoundedSet1D.empty("circle"), 0.0, [0.1, 0.05])
    assert empty.terms == [0.0, 0.0] and empty.verdict == "thin"
    full = is_log_thin(BoundedSet1D.circle(), 0.0, [0.2, 0.1, 0.05, 0.025])
    assert full.verdict == "not thin" and min(full.terms) > 0.3
    assert full.heuristic


def test_thinness_shrinking_arcs_reports_sequence():
    arcs = [(2.0 ** -k, 1.5 * 2.0 ** -k) for k in range(1, 8)]
    rep = is_log_thin(BoundedSet1D.arcs(arcs), 0.0, [0.4, 0.2, 0.1, 0.05])
    assert len(rep.terms) == 4 and all(t >= 0 for t in rep.terms)


# --- parser ----------------------------------------------------------------

def test_parse_set_spec_kinds():
    assert parse_set_spec("interval:0,1;2,3").pieces == ((0.0, 1.0), (2.0, 3.0))
    assert parse_set_spec("arc:0,1").ambient == "circle"
    with pytest.raises(ValueError):
        parse_set_spec("blob:1")
