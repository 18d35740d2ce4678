"""Riemann-Hilbert problem ``Re(conj(lambda) f) = phi`` on the unit disk.

Pipeline: lift the unimodular coefficient to a real argument ``alpha``,
form the Schwarz integral ``g`` of ``alpha`` and ``A = exp(i g)``, take the
boundary values ``beta`` of ``Im g``, and build an analytic ``B`` whose real
part has boundary data ``phi exp(beta)``.  Then ``f = A B`` satisfies
``Re(conj(lambda) f) = exp(-Im g) Re(exp(i(Re g - alpha)) B) -> phi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .capacity import BoundedSet1D, transfinite_diameter
from .harmonic import (
    BoundaryFunction,
    DiskField,
    analytic_completion,
    boundary_limits,
    conjugate,
    default_probe,
    gehring_solution,
    poisson_extend,
    probe_limit,
)

TWO_PI = 2.0 * np.pi

__all__ = [
    "UnimodularBV",
    "ArgumentFunction",
    "AntipodalAmbiguity",
    "ExpField",
    "BetaReport",
    "ResidualReport",
    "RHSolution",
    "total_variation",
    "bv_argument",
    "schwarz_analytic",
    "conjugate_boundary_data",
    "audit_angles",
    "audit_probes",
    "verify_boundary",
    "rh_solve",
    "builtin_lambda",
]


class AntipodalAmbiguity(ValueError):
    """Two consecutive samples are (numerically) antipodal."""


@dataclass(frozen=True)
class UnimodularBV:
    samples: np.ndarray
    func: object = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex).ravel()
        if s.size < 2:
            raise ValueError("need at least two samples")
        if np.max(np.abs(np.abs(s) - 1.0)) > 1e-10:
            raise ValueError("samples must be unimodular")
        object.__setattr__(self, "samples", s)

    @property
    def M(self) -> int:
        return self.samples.size

    @property
    def variation(self) -> float:
        return total_variation(self.samples)

    @classmethod
    def from_function(cls, f, M: int) -> "UnimodularBV":
        return cls(f(TWO_PI * np.arange(M) / M), f)

    def rotated(self, c: float) -> "UnimodularBV":
        f = self.func
        g = None if f is None else (lambda t, f=f: np.exp(1j * c) * f(t))
        return UnimodularBV(np.exp(1j * c) * self.samples, g)


def total_variation(samples) -> float:
    """Cyclic chord sum over the grid, closing the loop at the end."""
    s = np.asarray(samples.samples if isinstance(samples, UnimodularBV) else samples)
    if s.size < 2:
        raise ValueError("need at least two samples")
    return float(np.sum(np.abs(np.diff(np.r_[s, s[0]]))))


@dataclass
class ArgumentFunction:
    alpha: np.ndarray
    jump_locations: np.ndarray
    jump_sizes: np.ndarray
    jump_chords: np.ndarray
    continuous_part: np.ndarray
    winding: int
    closing_alpha: float

    @property
    def variation(self) -> float:
        """Variation over the closed parameter segment ``[0, 2 pi]``."""
        return float(np.sum(np.abs(np.diff(np.r_[self.alpha, self.closing_alpha]))))


def _chord_angle(w0, w1):
    """Signed arc in ``(-pi, pi)`` carrying ``w0`` to ``w1``.

    The chord is first rotated to start at 1; then the arc is
    ``-2 arctan(Re j / Im j)`` with ``j = w1/w0 - 1``.
    """
    j = np.asarray(w1) * np.conj(w0) - 1.0
    if np.any(np.abs(j) >= 2.0 - 1e-12):
        raise AntipodalAmbiguity("antipodal consecutive samples")
    re, im = j.real, j.imag
    out = np.zeros(np.shape(j))
    nz = im != 0
    out[nz] = -2.0 * np.arctan(re[nz] / im[nz])
    return out


def _lift(lam: np.ndarray, threshold: float):
    M = lam.size
    ext = np.r_[lam, lam[0]]
    chords = np.abs(np.diff(ext))
    steps = _chord_angle(ext[:-1], ext[1:])
    is_jump = chords > threshold
    jump_idx = np.flatnonzero(is_jump)
    jump_alpha = steps[is_jump]
    # jump function J(theta_k): sum of jump angles strictly before sample k
    J = np.r_[0.0, np.cumsum(np.where(is_jump, steps, 0.0))]
    C = ext * np.exp(-1j * J)
    # continuous part by branch tracking on segments of oscillation < 2
    c = np.empty(M + 1)
    if lam[0] == -1:
        c[0] = np.pi
    else:
        c[0] = float(_chord_angle(np.array([1.0 + 0j]), np.array([lam[0]]))[0])
    s = 0
    while s < M:
        rel = np.abs(C[s + 1:] - C[s])
        stop = np.flatnonzero(rel >= 1.5)
        e = s + 1 + int(stop[0]) if stop.size else M + 1
        c[s + 1:e] = c[s] + _chord_angle(np.full(e - s - 1, C[s]), C[s + 1:e])
        s = e - 1
    alpha_ext = c + J
    return alpha_ext, c, jump_idx, jump_alpha, np.diff(ext)[is_jump]


def bv_argument(lam: UnimodularBV, jump_threshold: float = 0.5,
                max_refine: int = 3) -> ArgumentFunction:
    """Real lift ``alpha`` with ``exp(i alpha) = lambda`` on the grid."""
    if not (0 < jump_threshold < 2):
        raise ValueError("jump_threshold must lie in (0, 2)")
    samples, factor = lam.samples, 1
    for attempt in range(max_refine + 1):
        try:
            alpha_ext, c, jidx, jalpha, jchord = _lift(samples, jump_threshold)
            break
        except AntipodalAmbiguity:
            if lam.func is None or attempt == max_refine:
                raise
            factor *= 2
            samples = lam.func(TWO_PI * np.arange(lam.M * factor) / (lam.M * factor))
    M = samples.size
    alpha = alpha_ext[:M:factor]
    closing = alpha_ext[M]
    locs = TWO_PI * (jidx + 0.5) / M
    winding = int(round((alpha_ext[M] - alpha_ext[0]) / TWO_PI))
    return ArgumentFunction(alpha, locs, jalpha, jchord, c[:M:factor], winding, float(closing))


def schwarz_analytic(alpha) -> DiskField:
    """Analytic ``g`` with ``Re g = Poisson[alpha]`` and ``Im g(0) = 0``."""
    a = alpha.samples if isinstance(alpha, BoundaryFunction) else np.asarray(alpha, float)
    return analytic_completion(poisson_extend(BoundaryFunction(a)))


class ExpField:
    """``z -> exp(i g(z))`` for an analytic field ``g``; zero-free."""

    kind = "analytic"

    def __init__(self, g: DiskField):
        self.g = g
        self.r_max = g.r_max
        self.N = g.N

    def __call__(self, z):
        return np.exp(1j * self.g(z))

    def circle_values(self, r, M, shift=0.0):
        return np.exp(1j * self.g.circle_values(r, M, shift))


@dataclass
class BetaReport:
    beta: np.ndarray
    converged: np.ndarray
    infilled: np.ndarray
    flagged_arcs: BoundedSet1D
    wiener_capacity: float
    capacity_value: float


def _infill(values, ok):
    """Nearest converged neighbour on the cyclic grid."""
    if ok.all() or not ok.any():
        return values.copy()
    M = values.size
    good = np.flatnonzero(ok)
    k = np.arange(M)
    pos = np.searchsorted(good, k)
    left = good[(pos - 1) % good.size]
    right = good[pos % good.size]
    dl = (k - left) % M
    dr = (right - k) % M
    pick = np.where(dl <= dr, left, right)
    out = values.copy()
    out[~ok] = values[pick[~ok]]
    return out


def _arcs_from_mask(mask, n_max=16):
    M = mask.size
    h = TWO_PI / M
    pieces = []
    m = np.concatenate([[False], mask, [False]]).astype(np.int8)
    d = np.diff(m)
    for s, e in zip(np.flatnonzero(d == 1), np.flatnonzero(d == -1)):
        pieces.append(((s - 0.5) * h, (e - 0.5) * h))
    arcs = BoundedSet1D.arcs(pieces)
    if arcs.is_empty:
        return arcs, 0.0, 0.0
    est = transfinite_diameter(arcs, n_max)
    return arcs, est.wiener, est.value


def conjugate_boundary_data(alpha, n_max: int = 16) -> BetaReport:
    """Boundary values of the conjugate of ``Poisson[alpha]`` by probes."""
    a = alpha.samples if isinstance(alpha, BoundaryFunction) else np.asarray(alpha, float)
    v = conjugate(poisson_extend(BoundaryFunction(a)))
    lim, ok = boundary_limits(v, a.size)
    beta = _infill(np.asarray(lim, float), ok)
    arcs, w, val = _arcs_from_mask(~ok, n_max)
    return BetaReport(beta, ok, ~ok, arcs, w, val)


# ---------------------------------------------------------------------------
# audits
# ---------------------------------------------------------------------------

def _van_der_corput(i: int) -> float:
    x, denom = 0.0, 1.0
    while i:
        denom *= 2.0
        i, bit = divmod(i, 2)
        x += bit / denom
    return x


def _data_jumps(samples, threshold=0.5):
    s = np.asarray(samples)
    return np.flatnonzero(np.abs(np.diff(np.r_[s, s[0]])) > threshold)


def audit_angles(M: int, avoid=(), count: int = 64, margin: int = 2) -> np.ndarray:
    """Grid indices from the base-2 Halton sequence, at least ``margin``
    cells away from every index pair ``(k, k+1)`` listed in ``avoid``."""
    avoid = np.asarray(list(avoid), dtype=int)
    out, seen, i = [], set(), 1
    while len(out) < count and i < 64 * M:
        k = int(round(_van_der_corput(i) * M)) % M
        i += 1
        if k in seen:
            continue
        if avoid.size:
            d = np.minimum((k - avoid) % M, (avoid + 1 - k) % M)
            if np.min(d) < margin:
                continue
        seen.add(k)
        out.append(k)
    return np.asarray(out, dtype=int)


def audit_probes(M: int, N: int, avoid=(), count: int = 64, aperture: float = np.pi / 4):
    ks = audit_angles(M, avoid, count)
    return [default_probe(TWO_PI * k / M, N, aperture) for k in ks]


@dataclass
class ResidualReport:
    angles: np.ndarray
    limits: np.ndarray
    converged: np.ndarray
    passed: np.ndarray
    tol: float
    sequences: list = field(default_factory=list, repr=False)
    exceptional_arcs: BoundedSet1D | None = None
    exceptional_wiener: float = 0.0

    @property
    def pass_fraction(self) -> float:
        return float(np.mean(self.passed)) if self.passed.size else 1.0

    def as_dict(self) -> dict:
        return {
            "angles": self.angles.tolist(),
            "residual_limits": self.limits.tolist(),
            "converged": self.converged.tolist(),
            "passed": self.passed.tolist(),
            "pass_fraction": self.pass_fraction,
            "tol": self.tol,
            "exceptional_arcs": [] if self.exceptional_arcs is None else
            [list(p) for p in self.exceptional_arcs.pieces],
            "exceptional_wiener": self.exceptional_wiener,
        }


def _grid_value(table, zeta):
    M = table.size
    return table[int(round(zeta / TWO_PI * M)) % M]


def verify_boundary(f, lam, phi, audit, tol: float = 1e-2) -> ResidualReport:
    """Residual ``Re(conj(lambda) f) - phi`` along each probe in ``audit``.

    ``f`` is any vectorized callable on the disk; ``lam`` and ``phi`` are
    grid tables (or their wrappers) read at each probe's angle.
    """
    lam_t = lam.samples if isinstance(lam, UnimodularBV) else np.asarray(lam)
    phi_t = phi.samples if isinstance(phi, BoundaryFunction) else np.asarray(phi)
    if not audit:
        e = np.zeros(0)
        return ResidualReport(e, e, e.astype(bool), e.astype(bool), tol)
    angles, limits, conv, seqs = [], [], [], []
    for probe in audit:
        lz = _grid_value(lam_t, probe.zeta)
        pz = _grid_value(phi_t, probe.zeta)
        res = probe_limit(lambda z: (np.conj(lz) * f(z)).real - pz, probe)
        angles.append(probe.zeta)
        limits.append(float(res.limit))
        conv.append(res.converged)
        seqs.append(res.residuals[1].tolist())
    angles = np.asarray(angles)
    limits = np.asarray(limits)
    conv = np.asarray(conv)
    passed = conv & (np.abs(limits) < tol)
    rep = ResidualReport(angles, limits, conv, passed, tol, seqs)
    if (~passed).any():
        h = 1e-3
        arcs = BoundedSet1D.arcs([(t - h, t + h) for t in angles[~passed]])
        rep.exceptional_arcs = arcs
        rep.exceptional_wiener = transfinite_diameter(arcs, 8).wiener
    return rep


# ---------------------------------------------------------------------------
# solver
# ---------------------------------------------------------------------------

@dataclass
class RHSolution:
    g: DiskField
    A: ExpField
    B: DiskField
    argument: ArgumentFunction
    beta: BetaReport
    report: ResidualReport | None = None

    def f(self, z):
        return self.A(z) * self.B(z)

    __call__ = f

    @property
    def beta_witness(self) -> np.ndarray:
        return self.beta.beta

    def check_factorization(self, z) -> float:
        """``max |A(z) - exp(i g(z))|`` over the given points."""
        return float(np.max(np.abs(self.A(z) - np.exp(1j * self.g(z)))))


def _phi_table(phi, M):
    if isinstance(phi, BoundaryFunction):
        if phi.M != M:
            raise ValueError("lambda and phi must share the grid")
        return phi
    return BoundaryFunction(np.asarray(phi, float))


def rh_solve(lam: UnimodularBV, phi, eps: float = 0.05, stages: int = 0,
             audit_count: int = 64, tol: float = 1e-2, extra_avoid=()) -> RHSolution:
    """Solve ``Re(conj(lambda) f) = phi`` with ``f = A B``.

    ``stages = 0`` takes ``B`` as the Schwarz integral of the bounded data
    ``phi exp(beta)``; ``stages > 0`` uses the Lusin/Gehring construction
    for ``Re B`` instead.
    """
    phi = _phi_table(phi, lam.M)
    arg = bv_argument(lam)
    g = schwarz_analytic(arg.alpha)
    beta = conjugate_boundary_data(arg.alpha)
    data = BoundaryFunction(phi.samples * np.exp(beta.beta))
    if stages > 0:
        B = analytic_completion(gehring_solution(data, eps, stages))
    else:
        B = analytic_completion(poisson_extend(data))
    sol = RHSolution(g, ExpField(g), B, arg, beta)
    avoid = np.r_[_data_jumps(lam.samples), _data_jumps(phi.samples), np.asarray(extra_avoid, int)]
    probes = audit_probes(lam.M, min(g.N, B.N), avoid.astype(int), audit_count)
    sol.report = verify_boundary(sol.f, lam, phi, probes, tol)
    return sol


def builtin_lambda(name: str, M: int) -> UnimodularBV:
    """Stock coefficients: ``const`` (1), ``i``, ``winding`` (``e^{it}``),
    ``step`` (1 on the upper half circle, ``i`` on the lower) and
    ``multijump`` (three jumps on a smooth background)."""
    table = {
        "const": lambda t: np.ones_like(t, dtype=complex),
        "i": lambda t: np.full(t.shape, 1j),
        "winding": lambda t: np.exp(1j * t),
        "step": lambda t: np.where(t < np.pi, 1.0 + 0j, 1j),
        "multijump": lambda t: np.exp(1j * (0.3 * np.sin(t) + 1.2 * np.floor(3 * t / TWO_PI))),
    }
    if name not in table:
        raise ValueError(f"unknown builtin lambda {name!r}")
    return UnimodularBV.from_function(table[name], M)
