"""Harmonic functions with vanishing nontangential limits off a capacity-null set.

Each basis member is ``u_n = d/dtheta Poisson[phi_n]`` where ``phi_n`` is a
zero-capacity Cantor staircase squeezed into ``[a_{n-1}, a_n)``, with
``a_n = 2 pi (1 - 2^-n)``.  Finite combinations ``sum gamma_n u_n`` give
the null family; adding their analytic completion to a Riemann-Hilbert
solution produces further solutions with the same boundary behaviour.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cantor_lusin import DEFAULT_FLAT_SPEC, CantorSpec, cantor_eval
from .harmonic import (
    BoundaryFunction,
    DiskField,
    analytic_completion,
    angular_derivative,
    boundary_limits,
    hp_profile,
    poisson_extend,
)
from .rh_analytic import RHSolution, UnimodularBV, audit_probes, rh_solve, verify_boundary, _data_jumps

TWO_PI = 2.0 * np.pi
MAX_BASIS = 16

__all__ = [
    "GammaSequence",
    "NullFamilyMember",
    "partition_point",
    "basis_data",
    "basis_member",
    "family_member",
    "remainder_bound",
    "remainder_bound_check",
    "independence_probe",
    "rh_family",
    "hp_growth",
]


@dataclass(frozen=True)
class GammaSequence:
    """Finite head ``gamma_1, ..., gamma_m`` of an absolutely summable
    sequence plus a bound on the sum of ``|gamma_n|`` beyond the head."""

    gamma: tuple
    tail_bound: float = 0.0

    def __post_init__(self):
        g = tuple(float(v) for v in self.gamma)
        if not all(np.isfinite(g)):
            raise ValueError("gamma entries must be finite")
        if self.tail_bound < 0 or not np.isfinite(self.tail_bound):
            raise ValueError("tail_bound must be finite and nonnegative")
        object.__setattr__(self, "gamma", g)

    def __len__(self) -> int:
        return len(self.gamma)

    def __getitem__(self, n: int) -> float:
        """1-based access; zero beyond the head."""
        if n < 1:
            raise IndexError("indices are 1-based")
        return self.gamma[n - 1] if n <= len(self.gamma) else 0.0

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.gamma))) + self.tail_bound

    def tail(self, m: int) -> float:
        """``sum_{n > m} |gamma_n|``."""
        return float(np.sum(np.abs(self.gamma[m:]))) + self.tail_bound

    def head(self, m: int) -> "GammaSequence":
        return GammaSequence(self.gamma[:m])

    @classmethod
    def unit(cls, n: int, scale: float = 1.0) -> "GammaSequence":
        g = [0.0] * n
        g[n - 1] = scale
        return cls(tuple(g))

    @classmethod
    def parse(cls, text: str) -> "GammaSequence":
        return cls(tuple(float(v) for v in text.split(",") if v.strip()))


def partition_point(n: int) -> float:
    """``a_n = 2 pi (1/2 + ... + 2^-n) = 2 pi (1 - 2^-n)``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return TWO_PI * (1.0 - 0.5 ** n)


def basis_data(n: int, M: int, spec: CantorSpec | None = None) -> np.ndarray:
    """Grid samples of ``phi_n``: the staircase rescaled to ``[a_{n-1}, a_n)``."""
    if n < 1:
        raise ValueError("basis index starts at 1")
    if n > MAX_BASIS:
        raise ValueError(f"basis index limited to {MAX_BASIS}")
    spec = spec or DEFAULT_FLAT_SPEC
    t = TWO_PI * np.arange(M) / M
    a, b = partition_point(n - 1), partition_point(n)
    inside = (t >= a) & (t < b)
    out = np.zeros(M)
    out[inside] = cantor_eval(spec, (t[inside] - a) / (b - a))
    return out


def basis_member(n: int, spec: CantorSpec | None = None, M: int = 2 ** 16) -> DiskField:
    """``u_n``: angular derivative of the Poisson extension of ``phi_n``."""
    return angular_derivative(poisson_extend(BoundaryFunction(basis_data(n, M, spec))))


@dataclass
class NullFamilyMember:
    u: DiskField
    U: DiskField
    gamma: GammaSequence
    data: np.ndarray = field(repr=False)
    partition: tuple = ()
    spec: CantorSpec | None = None

    @property
    def M(self) -> int:
        return self.data.size


def family_member(gamma: GammaSequence, spec: CantorSpec | None = None,
                  M: int = 2 ** 16) -> NullFamilyMember:
    """``u = sum gamma_n u_n`` summed coefficientwise in index order."""
    if len(gamma) > MAX_BASIS:
        raise ValueError(f"at most {MAX_BASIS} basis members")
    data = np.zeros(M)
    for n, g in enumerate(gamma.gamma, start=1):
        if g != 0.0:
            data = data + g * basis_data(n, M, spec)
    U = poisson_extend(BoundaryFunction(data))
    parts = tuple((partition_point(n - 1), partition_point(n)) for n in range(1, len(gamma) + 1))
    return NullFamilyMember(angular_derivative(U), U, gamma, data, parts, spec)


def remainder_bound(r: float, tail: float) -> float:
    return 2.0 * r * (1.0 + r) / (1.0 - r) ** 3 * tail


def remainder_bound_check(gamma: GammaSequence, m: int, r_grid, spec: CantorSpec | None = None,
                          M: int = 2 ** 12, samples: int | None = None) -> dict:
    """Measured ``max_{|z|=r} |u - u*_m|`` against the remainder estimate.

    ``u*_m`` keeps the first ``m`` basis members.  The circle maximum is
    taken over ``samples`` equally spaced points (default ``4M``).
    """
    if not 0 <= m < len(gamma):
        raise ValueError("need 0 <= m < len(gamma)")
    full = family_member(gamma, spec, M).u
    head = family_member(GammaSequence(gamma.gamma[:m] + (0.0,) * (len(gamma) - m)), spec, M).u
    diff = full - head
    K = samples or 4 * M
    tail = gamma.tail(m)
    rows = []
    for r in r_grid:
        r = float(r)
        measured = float(np.max(np.abs(diff.circle_values(r, K)))) if r > 0 else 0.0
        bound = remainder_bound(r, tail)
        rows.append({"r": r, "measured": measured, "bound": bound,
                     "ok": measured <= bound * (1.0 + 1e-6)})
    return {"m": m, "tail": tail, "rows": rows, "ok": all(row["ok"] for row in rows)}


def independence_probe(member: NullFamilyMember, n: int, closeness: float = 0.3,
                       min_cells: int = 4096) -> dict:
    """Boundary limits of ``U`` inside ``(a_{n-1}, a_n)`` near 0 and near ``gamma_n``.

    Limits are probed at every grid angle of the interval; only converged
    probes count.  The witness passes when some converged limit lies within
    ``closeness |gamma_n|`` of 0 and another within the same distance of
    ``gamma_n``.  Two different limits of ``U`` on an arc mean ``U`` is not
    constant there, hence ``u = dU/dtheta`` is not the zero function.

    Plateaus of the staircase shrink with ``n``; when the interval holds
    fewer than ``min_cells`` grid cells the member is rebuilt on a finer
    grid before probing.
    """
    g = member.gamma[n]
    if g == 0.0:
        return {"n": n, "gamma_n": 0.0, "vacuous": True, "ok": True}
    M = member.M
    need = min_cells * 2 ** n
    if M < need:
        M = need
        member = family_member(member.gamma, member.spec, M)
    lim, ok = boundary_limits(member.U, M)
    t = TWO_PI * np.arange(M) / M
    a, b = partition_point(n - 1), partition_point(n)
    sel = (t > a) & (t < b) & ok
    if not sel.any():
        return {"n": n, "gamma_n": g, "vacuous": False, "ok": False,
                "low": None, "high": None, "converged": 0}
    vals, angs = lim[sel], t[sel]
    i_lo = int(np.argmin(np.abs(vals)))
    i_hi = int(np.argmin(np.abs(vals - g)))
    low, high = float(vals[i_lo]), float(vals[i_hi])
    passed = abs(low) <= closeness * abs(g) and abs(high - g) <= closeness * abs(g)
    return {"n": n, "gamma_n": g, "vacuous": False, "ok": bool(passed),
            "low": low, "low_angle": float(angs[i_lo]),
            "high": high, "high_angle": float(angs[i_hi]),
            "converged": int(sel.sum()), "closeness": closeness, "grid": M}


def _widen(idx: np.ndarray, M: int, width: int) -> np.ndarray:
    if idx.size == 0:
        return idx
    return np.unique((idx[:, None] + np.arange(-width, width + 1)[None, :]) % M)


def rh_family(lam: UnimodularBV, phi, gamma: GammaSequence, spec: CantorSpec | None = None,
              eps: float = 0.05, stages: int = 0, audit_count: int = 64, tol: float = 1e-2,
              jump_margin: int = 48, oversample: int = 8) -> RHSolution:
    """Solution ``A (B + C)`` with ``C = u + i v`` from the null family.

    ``u = family_member(gamma)`` and ``v`` is its conjugate with
    ``v(0) = 0``.  The coefficients of ``u`` do not decay (its data are
    steps), so ``C`` is built on an ``oversample``-times finer grid to keep
    its truncation ripple below the probe scale of the coarse fields.
    Audit angles avoid every step of the family data by ``jump_margin``
    cells of the coarse grid.  ``gamma = 0`` reproduces :func:`rh_solve`.
    """
    M = lam.M
    Mf = M * oversample
    member = family_member(gamma, spec, Mf)
    steps = np.flatnonzero(np.diff(np.r_[member.data, member.data[0]]) != 0)
    avoid = _widen(np.unique(steps // oversample), M, jump_margin)
    base = rh_solve(lam, phi, eps, stages, audit_count, tol, extra_avoid=avoid)
    if not any(gamma.gamma):
        return base
    B = base.B + analytic_completion(member.u)
    sol = RHSolution(base.g, base.A, B, base.argument, base.beta)
    phi_t = phi.samples if isinstance(phi, BoundaryFunction) else np.asarray(phi, float)
    all_avoid = np.r_[_data_jumps(lam.samples), _data_jumps(phi_t), avoid].astype(int)
    probes = audit_probes(M, base.g.N, all_avoid, audit_count)
    sol.report = verify_boundary(sol.f, lam, phi_t, probes, tol)
    return sol


def hp_growth(member: NullFamilyMember, p: float, r_grid) -> np.ndarray:
    """``h^p`` means of ``u`` along ``r_grid``; growth toward ``r = 1``
    indicates the member is not in ``h^p``."""
    return hp_profile(member.u, p, r_grid)
