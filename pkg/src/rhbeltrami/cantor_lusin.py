"""Generalized Cantor sets, singular staircase functions and a finite-stage
Lusin-type antiderivative.

Cantor sets ``E(p_1, p_2, ...)`` are built on ``[0, 1]``: at generation ``k``
every parent interval loses a central gap of relative length ``1 - 1/p_k``,
leaving two children of relative length ``1/(2 p_k)``.

The Lusin construction works on dense node tables.  Given samples of a
bounded ``phi`` it returns a continuous ``Phi`` with ``|Phi| <= eps``,
``Phi(a) = Phi(b) = 0`` and ``Phi' = phi`` on a growing set of grid cells
``Q_n``.  Each stage glues affine copies of a zero-capacity staircase on a
geometric subdivision of every complementary component.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .capacity import BoundedSet1D, transfinite_diameter

__all__ = [
    "CantorSpec",
    "CantorStage",
    "StaircaseFunction",
    "ZeroCapacityReport",
    "FlattenResult",
    "LusinStage",
    "LusinResult",
    "cantor_stage",
    "cantor_eval",
    "cantor_function",
    "is_zero_capacity",
    "flatten_on_subdivision",
    "lusin_antiderivative",
    "quotient_audit",
    "capacity_audit",
    "builtin_phi",
    "parse_pk",
]


@dataclass(frozen=True)
class CantorSpec:
    """Generator for ``p_k > 1``.

    ``kind`` is ``"const"`` (``p_k = c``), ``"double_exp"``
    (``p_k = exp(2^k)``) or ``"custom"`` (explicit list, one entry per
    generation).
    """

    kind: str = "double_exp"
    c: float = 3.0
    values: tuple = ()
    depth: int = 12

    def __post_init__(self):
        if self.kind not in ("const", "double_exp", "custom"):
            raise ValueError(f"unknown generator {self.kind!r}")
        if self.kind == "custom":
            object.__setattr__(self, "values", tuple(float(v) for v in self.values))
            if len(self.values) < self.depth:
                object.__setattr__(self, "depth", len(self.values))
        if self.depth < 1:
            raise ValueError("depth must be at least 1")
        if np.any(self.log_p(self.depth) <= 0):
            raise ValueError("every p_k must exceed 1")

    def log_p(self, n: int) -> np.ndarray:
        """``log p_k`` for ``k = 1..n`` (kept in log form to avoid overflow)."""
        k = np.arange(1, n + 1)
        if self.kind == "const":
            return np.full(n, math.log(self.c))
        if self.kind == "double_exp":
            return np.ldexp(1.0, k)
        return np.log(np.asarray(self.values[:n], dtype=float))

    def child_ratios(self, n: int) -> np.ndarray:
        """Relative child lengths ``1/(2 p_k)``; underflows to 0 harmlessly."""
        with np.errstate(under="ignore"):
            return np.exp(-self.log_p(n) - math.log(2.0))


def parse_pk(text: str, depth: int = 12) -> CantorSpec:
    """``const:3``, ``dexp`` or ``list:2,3,5``."""
    kind, _, body = text.partition(":")
    kind = kind.strip().lower()
    if kind == "const":
        return CantorSpec("const", c=float(body), depth=depth)
    if kind in ("dexp", "double_exp"):
        return CantorSpec("double_exp", depth=depth)
    if kind == "list":
        vals = tuple(float(v) for v in body.split(",") if v.strip())
        return CantorSpec("custom", values=vals, depth=min(depth, len(vals)))
    raise ValueError(f"unknown p_k generator {text!r}")


@dataclass
class CantorStage:
    n: int
    intervals: np.ndarray  # shape (2**n, 2)

    @property
    def total_length(self) -> float:
        return float(np.sum(self.intervals[:, 1] - self.intervals[:, 0]))


def cantor_stage(spec: CantorSpec, n: int) -> CantorStage:
    if n < 0 or n > spec.depth:
        raise ValueError(f"generation {n} outside 0..{spec.depth}")
    left = np.array([0.0])
    length = 1.0
    q = spec.child_ratios(n)
    for k in range(n):
        child = length * q[k]
        left = np.column_stack([left, left + length - child]).ravel()
        length = child
    return CantorStage(n, np.column_stack([left, left + length]))


def cantor_eval(spec: CantorSpec, t, depth: int | None = None) -> np.ndarray:
    """Stage-``depth`` staircase at arbitrary points of ``[0, 1]``.

    Constant on every gap, linear across the stage-``depth`` intervals.
    """
    depth = spec.depth if depth is None else depth
    t = np.clip(np.asarray(t, dtype=float), 0.0, 1.0)
    q = spec.child_ratios(depth)
    val = np.zeros_like(t)
    s = t.copy()
    weight = 1.0
    live = np.ones(t.shape, dtype=bool)
    for k in range(depth):
        weight *= 0.5
        qk = q[k]
        lo = live & (s <= qk)
        hi = live & (s >= 1.0 - qk)
        gap = live & ~lo & ~hi
        val[gap] += weight
        val[hi] += weight
        if qk > 0:
            s = np.where(lo, s / qk, np.where(hi, 1.0 - (1.0 - s) / qk, s))
            live = lo | hi
        else:
            # children collapsed to their outer endpoints
            val[hi] += weight
            live = np.zeros_like(live)
    # linear across the deepest intervals
    val[live] += weight * s[live]
    return val


@dataclass
class StaircaseFunction:
    """Nondecreasing piecewise-linear function on ``[0, 1]``."""

    breakpoints: np.ndarray
    values: np.ndarray

    def __call__(self, x):
        return np.interp(x, self.breakpoints, self.values)


def cantor_function(spec: CantorSpec, n: int) -> StaircaseFunction:
    """Stage-``n`` approximant: ``j 2^-n`` on the ``j``-th gap."""
    st = cantor_stage(spec, n)
    m = st.intervals.shape[0]
    bp = st.intervals.ravel()
    vals = np.column_stack([np.arange(m), np.arange(1, m + 1)]).ravel() / m
    return StaircaseFunction(bp, vals.astype(float))


@dataclass
class ZeroCapacityReport:
    diverges: bool | None
    terms: list
    partial_sums: list


def is_zero_capacity(spec: CantorSpec, horizon: int) -> ZeroCapacityReport:
    """Partial sums of ``sum 2^-k log p_k``; divergence means zero capacity."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    if spec.kind == "custom":
        horizon = min(horizon, len(spec.values))
    k = np.arange(1, horizon + 1)
    terms = np.ldexp(spec.log_p(horizon), -k)
    diverges = {"const": False, "double_exp": True}.get(spec.kind)
    return ZeroCapacityReport(diverges, terms.tolist(), np.cumsum(terms).tolist())


# ---------------------------------------------------------------------------
# flattening
# ---------------------------------------------------------------------------

DEFAULT_FLAT_SPEC = CantorSpec("double_exp", depth=12)


@dataclass
class FlattenResult:
    F: np.ndarray
    G: np.ndarray
    cuts: np.ndarray


def _greedy_cuts(H: np.ndarray, half: float) -> np.ndarray:
    cuts = [0]
    lo = hi = H[0]
    start = 0
    for i in range(1, H.size):
        v = H[i]
        nlo, nhi = min(lo, v), max(hi, v)
        if nhi - nlo >= half and i - 1 > start:
            cuts.append(i - 1)
            start = i - 1
            lo, hi = min(H[i - 1], v), max(H[i - 1], v)
        else:
            lo, hi = nlo, nhi
    if cuts[-1] != H.size - 1:
        cuts.append(H.size - 1)
    return np.asarray(cuts)


def flatten_on_subdivision(H, eps: float, spec: CantorSpec | None = None) -> FlattenResult:
    """Cantor-type replacement ``F`` of a node table ``H``.

    The nodes are split greedily so that ``H`` oscillates by less than
    ``eps/2`` on each piece (a single cell is never split further); on each
    piece ``F`` rises from ``H(left)`` to ``H(right)`` along an affine copy
    of the staircase.  ``G = H - F`` vanishes at every cut.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    spec = DEFAULT_FLAT_SPEC if spec is None else spec
    H = np.asarray(H, dtype=float)
    cuts = _greedy_cuts(H, 0.5 * eps)
    F = np.empty_like(H)
    for s, e in zip(cuts[:-1], cuts[1:]):
        t = np.arange(e - s + 1) / (e - s)
        F[s:e + 1] = H[s] + (H[e] - H[s]) * cantor_eval(spec, t)
    F[cuts] = H[cuts]
    return FlattenResult(F, H - F, cuts)


# ---------------------------------------------------------------------------
# Lusin-type antiderivative
# ---------------------------------------------------------------------------

@dataclass
class LusinStage:
    n: int
    Q: BoundedSet1D
    bad: BoundedSet1D
    G: np.ndarray
    good_cells: np.ndarray
    admitted: int


@dataclass
class LusinResult:
    x: np.ndarray
    phi_samples: np.ndarray
    Phi: np.ndarray
    stages: list = field(default_factory=list)
    eps: float = 0.0

    @property
    def h(self) -> float:
        return float(self.x[1] - self.x[0])


def _runs(mask: np.ndarray):
    """Maximal runs of True as ``(start, stop)`` cell index pairs."""
    m = np.concatenate([[False], mask, [False]]).astype(np.int8)
    d = np.diff(m)
    return list(zip(np.flatnonzero(d == 1), np.flatnonzero(d == -1)))


def _cells_to_set(mask, x):
    return BoundedSet1D(tuple((x[s], x[e]) for s, e in _runs(mask)))


def _subdivision(u0: int, u1: int):
    """Nodes ``c^(j)`` accumulating geometrically at both ends of a run."""
    c0 = u0 + (u1 - u0) // 2
    right, left = [c0], [c0]
    j = 1
    while right[-1] < u1 - 1:
        node = u1 - max(1, int(round((u1 - c0) * 2.0 ** -j)))
        if node > right[-1]:
            right.append(node)
        j += 1
    j = 1
    while left[-1] > u0 + 1:
        node = u0 + max(1, int(round((c0 - u0) * 2.0 ** -j)))
        if node < left[-1]:
            left.append(node)
        j += 1
    pts = left[::-1] + right[1:]
    idx = list(range(-(len(left) - 1), len(right)))
    return pts, idx


def lusin_antiderivative(phi, eps: float, stages: int, a: float = 0.0, b: float = 1.0,
                         spec: CantorSpec | None = None) -> LusinResult:
    """Finite-stage Lusin construction on node samples of ``phi``.

    ``phi`` holds values at ``N + 1`` equally spaced nodes of ``[a, b]``; the
    derivative of a node table on a cell is its difference quotient.
    """
    phi = np.asarray(phi, dtype=float)
    if phi.ndim != 1 or phi.size < 3:
        raise ValueError("phi must be a 1-D table with at least 3 nodes")
    if not np.all(np.isfinite(phi)):
        raise ValueError("phi samples must be finite")
    if eps <= 0 or stages < 1:
        raise ValueError("need eps > 0 and stages >= 1")
    spec = DEFAULT_FLAT_SPEC if spec is None else spec
    ncell = phi.size - 1
    x = np.linspace(a, b, ncell + 1)
    h = (b - a) / ncell
    target = 0.5 * (phi[:-1] + phi[1:])
    osc = np.abs(np.diff(phi))
    kappa = min(1.0, 4.0 * eps / (b - a))

    Phi = np.zeros(ncell + 1)
    good = np.zeros(ncell, dtype=bool)
    result = LusinResult(x, phi, Phi, [], eps)
    for m in range(stages):
        g = target - np.diff(Phi) / h
        E = ~good & (osc < 2.0 ** -m)
        gm = np.where(E, g, 0.0)
        level = kappa * 2.0 ** -(m + 1)
        G = np.zeros(ncell + 1)
        for u0, u1 in _runs(~good):
            if u1 - u0 < 2:
                continue
            pts, idx = _subdivision(u0, u1)
            for (p, jp), (q, jq) in zip(zip(pts[:-1], idx[:-1]), zip(pts[1:], idx[1:])):
                bound = level * h * min(p - u0, u1 - q) / (1 + min(abs(jp), abs(jq)))
                if bound <= 0:
                    continue
                H = np.concatenate([[0.0], np.cumsum(gm[p:q]) * h])
                G[p:q + 1] = flatten_on_subdivision(H, bound, spec).G
        slope = np.diff(G) / h
        fresh = E & (np.abs(slope - gm) <= 1e-9 * (1.0 + np.abs(gm)))
        Phi = Phi + G
        good = good | fresh
        result.stages.append(LusinStage(
            m + 1, _cells_to_set(good, x), _cells_to_set(~good, x), G, good.copy(), int(fresh.sum())
        ))
    Phi[0] = Phi[-1] = 0.0
    result.Phi = Phi
    return result


def quotient_audit(res: LusinResult, stage: int | None = None, tol: float = 0.1) -> dict:
    """Central difference quotients of ``Phi`` against ``phi`` at nodes whose
    two adjacent cells lie in ``Q_stage``."""
    st = res.stages[-1 if stage is None else stage - 1]
    inner = np.flatnonzero(st.good_cells[:-1] & st.good_cells[1:]) + 1
    if inner.size == 0:
        return {"points": 0, "fraction": 0.0, "max_error": math.nan, "tol": tol}
    dq = (res.Phi[inner + 1] - res.Phi[inner - 1]) / (2.0 * res.h)
    err = np.abs(dq - res.phi_samples[inner])
    return {
        "points": int(inner.size),
        "fraction": float(np.mean(err <= tol)),
        "max_error": float(err.max()),
        "tol": tol,
    }


def capacity_audit(res: LusinResult, n_max: int = 16) -> list:
    """Capacity estimates of ``I \\ Q_n`` for every recorded stage."""
    out = []
    for st in res.stages:
        est = transfinite_diameter(st.bad, n_max) if not st.bad.is_empty else None
        value = est.value if est else 0.0
        wiener = est.wiener if est else 0.0
        out.append({
            "n": st.n,
            "bad_cells": int((~st.good_cells).sum()),
            "components": len(st.bad.pieces),
            "value": value,
            "wiener": wiener,
            "error_bar": est.error_bar if est else 0.0,
            "wiener_below_1_over_n": bool(wiener < 1.0 / st.n),
            "value_below_1_over_n": bool(value < 1.0 / st.n),
        })
    return out


def builtin_phi(name: str, n_cells: int = 2 ** 16, a: float = 0.0, b: float = 1.0,
                seed: int = 0) -> np.ndarray:
    """Node samples of the stock test functions ``zero``, ``const1``,
    ``sign`` and ``noise`` (seeded random steps bounded by 1)."""
    x = np.linspace(a, b, n_cells + 1)
    if name == "zero":
        return np.zeros_like(x)
    if name == "const1":
        return np.ones_like(x)
    if name == "sign":
        return np.sign(x - 0.5 * (a + b))
    if name == "noise":
        rng = np.random.default_rng(seed)
        levels = rng.uniform(-1.0, 1.0, 64)
        k = np.minimum((64 * (x - a) / (b - a)).astype(int), 63)
        return levels[k]
    raise ValueError(f"unknown builtin {name!r}")
