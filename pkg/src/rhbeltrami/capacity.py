"""Logarithmic capacity of finite unions of segments and circular arcs.

Two independent routes are provided: the transfinite diameter (Fekete
configurations plus extrapolation in ``n``) and a discrete equilibrium
problem (minimize the maximum of a logarithmic potential over the weight
simplex).  Both report ``value = exp(-V)`` together with the Wiener-scale
``1/V``, where ``V`` is the Robin constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog, minimize

TWO_PI = 2.0 * np.pi

__all__ = [
    "BoundedSet1D",
    "MassDistribution",
    "FeketeResult",
    "CapacityEstimate",
    "ThinnessReport",
    "vandermonde_product",
    "log_vandermonde",
    "fekete_points",
    "transfinite_diameter",
    "log_potential",
    "capacity_via_potential",
    "outer_capacity",
    "density_ratio",
    "is_log_thin",
    "parse_set_spec",
]


# ---------------------------------------------------------------------------
# sets
# ---------------------------------------------------------------------------

def _merge_line(pieces):
    out = []
    for a, b in sorted(pieces):
        if out and a <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], b))
        else:
            out.append((a, b))
    return out


def _split_circle(pieces):
    """Reduce arcs to subintervals of [0, 2pi] without wraparound."""
    flat = []
    for a, b in pieces:
        length = b - a
        if length >= TWO_PI:
            return [(0.0, TWO_PI)]
        s = a % TWO_PI
        e = s + length
        if e > TWO_PI:
            flat.append((s, TWO_PI))
            flat.append((0.0, e - TWO_PI))
        else:
            flat.append((s, e))
    return _merge_line(flat)


def _join_circle(flat):
    if not flat:
        return []
    if len(flat) == 1 and flat[0][0] <= 0.0 and flat[0][1] >= TWO_PI:
        return [(0.0, TWO_PI)]
    if len(flat) > 1 and flat[0][0] <= 0.0 and flat[-1][1] >= TWO_PI:
        head = flat[0]
        last = flat[-1]
        flat = flat[1:-1] + [(last[0], TWO_PI + head[1])]
        flat.sort()
    return flat


@dataclass(frozen=True)
class BoundedSet1D:
    """Finite union of closed segments or closed arcs.

    Pieces are stored in a parameter coordinate: the real coordinate for
    ``ambient="line"`` and the angle for ``ambient="circle"``.  A point with
    parameter ``t`` sits at ``offset + scale * t`` (line) or
    ``offset + scale * exp(i t)`` (circle), so translation, rotation and
    dilation act on ``offset``/``scale`` only and leave the pieces intact.
    """

    pieces: tuple
    ambient: str = "line"
    scale: complex = 1.0
    offset: complex = 0.0

    def __post_init__(self):
        if self.ambient not in ("line", "circle"):
            raise ValueError(f"unknown ambient {self.ambient!r}")
        raw = []
        for p in self.pieces:
            a, b = float(p[0]), float(p[1])
            if not (math.isfinite(a) and math.isfinite(b)):
                raise ValueError("piece endpoints must be finite")
            if self.ambient == "line" and b < a:
                a, b = b, a
            if self.ambient == "circle" and b < a:
                b += TWO_PI
            raw.append((a, b))
        if self.ambient == "line":
            norm = _merge_line(raw)
        else:
            norm = _join_circle(_split_circle(raw))
        if complex(self.scale) == 0:
            raise ValueError("scale must be nonzero")
        object.__setattr__(self, "pieces", tuple(norm))
        object.__setattr__(self, "scale", complex(self.scale))
        object.__setattr__(self, "offset", complex(self.offset))

    # constructors -----------------------------------------------------------
    @classmethod
    def interval(cls, a: float, b: float) -> "BoundedSet1D":
        return cls(((a, b),))

    @classmethod
    def intervals(cls, pieces) -> "BoundedSet1D":
        return cls(tuple(pieces))

    @classmethod
    def arcs(cls, pieces, radius: float = 1.0, center: complex = 0.0) -> "BoundedSet1D":
        return cls(tuple(pieces), "circle", radius, center)

    @classmethod
    def circle(cls, radius: float = 1.0, center: complex = 0.0) -> "BoundedSet1D":
        return cls(((0.0, TWO_PI),), "circle", radius, center)

    @classmethod
    def empty(cls, ambient: str = "line") -> "BoundedSet1D":
        return cls((), ambient)

    # geometry ---------------------------------------------------------------
    @property
    def is_empty(self) -> bool:
        return len(self.pieces) == 0

    @property
    def is_full_circle(self) -> bool:
        return self.ambient == "circle" and len(self.pieces) == 1 and (
            self.pieces[0][1] - self.pieces[0][0] >= TWO_PI
        )

    @property
    def param_length(self) -> float:
        return float(sum(b - a for a, b in self.pieces))

    @property
    def length(self) -> float:
        return abs(self.scale) * self.param_length

    @property
    def param_span(self) -> float:
        if self.is_empty:
            return 0.0
        if self.ambient == "circle":
            return min(TWO_PI, self.pieces[-1][1] - self.pieces[0][0]) if len(self.pieces) > 1 else (
                self.pieces[0][1] - self.pieces[0][0]
            )
        return self.pieces[-1][1] - self.pieces[0][0]

    def points(self, t) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        if self.ambient == "line":
            return self.offset + self.scale * t
        return self.offset + self.scale * np.exp(1j * t)

    def contains_param(self, t, tol: float = 1e-12) -> np.ndarray:
        t = np.atleast_1d(np.asarray(t, dtype=float))
        hit = np.zeros(t.shape, dtype=bool)
        for a, b in self.pieces:
            if self.ambient == "line":
                hit |= (t >= a - tol) & (t <= b + tol)
            else:
                s = (t - a) % TWO_PI
                hit |= (s <= b - a + tol) | (s >= TWO_PI - tol)
        return hit

    def without_points(self) -> "BoundedSet1D":
        """Drop degenerate pieces (finite sets carry no capacity)."""
        keep = tuple(p for p in self.pieces if p[1] > p[0])
        return BoundedSet1D(keep, self.ambient, self.scale, self.offset)

    # similarity maps --------------------------------------------------------
    def translated(self, c: complex) -> "BoundedSet1D":
        return BoundedSet1D(self.pieces, self.ambient, self.scale, self.offset + c)

    def rotated(self, angle: float) -> "BoundedSet1D":
        w = np.exp(1j * angle)
        return BoundedSet1D(self.pieces, self.ambient, self.scale * w, self.offset * w)

    def scaled(self, s: float) -> "BoundedSet1D":
        return BoundedSet1D(self.pieces, self.ambient, self.scale * s, self.offset * s)

    # set algebra in parameter coordinates -----------------------------------
    def _flat(self):
        if self.ambient == "line":
            return list(self.pieces)
        return _split_circle(self.pieces)

    def _rebuild(self, flat) -> "BoundedSet1D":
        return BoundedSet1D(tuple(flat), self.ambient, self.scale, self.offset)

    def intersect_interval(self, lo: float, hi: float) -> "BoundedSet1D":
        """Intersection with the parameter window ``[lo, hi]``."""
        if self.ambient == "circle":
            if hi - lo >= TWO_PI:
                return self
            shift = np.pi - 0.5 * (lo + hi)
            rot = _split_circle([(a + shift, b + shift) for a, b in self.pieces])
            lo2, hi2 = lo + shift, hi + shift
            cut = [(max(a, lo2), min(b, hi2)) for a, b in rot if min(b, hi2) >= max(a, lo2)]
            return self._rebuild([(a - shift, b - shift) for a, b in cut])
        cut = [(max(a, lo), min(b, hi)) for a, b in self.pieces if min(b, hi) >= max(a, lo)]
        return self._rebuild(cut)

    def complement_in(self, lo: float, hi: float) -> "BoundedSet1D":
        """Closure of ``[lo, hi]`` minus the set, for line sets."""
        if self.ambient != "line":
            raise ValueError("complement_in is defined for line sets")
        out = []
        cur = lo
        for a, b in self.pieces:
            if b <= lo or a >= hi:
                continue
            if a > cur:
                out.append((cur, a))
            cur = max(cur, b)
        if cur < hi:
            out.append((cur, hi))
        return self._rebuild(out)

    def fattened(self, eps: float) -> "BoundedSet1D":
        return self._rebuild([(a - eps, b + eps) for a, b in self.pieces])


def parse_set_spec(text: str) -> BoundedSet1D:
    """Parse ``interval:a,b[;a,b...]``, ``arc:t1,t2[;...]`` or ``circle:r``."""
    kind, _, body = text.partition(":")
    kind = kind.strip().lower()
    if kind == "circle":
        r = float(body) if body.strip() else 1.0
        return BoundedSet1D.circle(r)
    if kind not in ("interval", "arc"):
        raise ValueError(f"unknown set kind {kind!r}")
    pieces = []
    for chunk in body.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        a, b = (float(v) for v in chunk.split(","))
        pieces.append((a, b))
    if not pieces:
        raise ValueError("set spec has no pieces")
    return BoundedSet1D(tuple(pieces), "line" if kind == "interval" else "circle")


# ---------------------------------------------------------------------------
# products and Fekete configurations
# ---------------------------------------------------------------------------

def log_vandermonde(points) -> float:
    """``sum_{k<l} log|z_k - z_l|`` (``-inf`` for repeated points)."""
    z = np.asarray(points, dtype=complex).ravel()
    if z.size < 2:
        raise ValueError("need at least two points")
    d = np.abs(z[:, None] - z[None, :])
    iu = np.triu_indices(z.size, 1)
    with np.errstate(divide="ignore"):
        return float(np.sum(np.log(d[iu])))


def vandermonde_product(points) -> float:
    """Product of pairwise distances, accumulated in log space."""
    with np.errstate(over="ignore", under="ignore"):
        return float(np.exp(log_vandermonde(points)))


@dataclass
class FeketeResult:
    n: int
    points: np.ndarray
    v_n: float
    diameter_estimate: float
    log_v: float = field(default=0.0, repr=False)


def _pair_dist(E: BoundedSet1D, t):
    dt = t[:, None] - t[None, :]
    if E.ambient == "line":
        return np.abs(E.scale) * np.abs(dt)
    return np.abs(E.scale) * 2.0 * np.abs(np.sin(0.5 * dt))


def _alloc(lengths, n):
    lengths = np.asarray(lengths, dtype=float)
    share = n * lengths / lengths.sum()
    counts = np.floor(share).astype(int)
    rest = n - counts.sum()
    order = np.argsort(-(share - counts), kind="stable")
    counts[order[:rest]] += 1
    return counts


def _initial_params(E: BoundedSet1D, n: int):
    if E.is_full_circle:
        return TWO_PI * np.arange(n) / n
    lengths = [b - a for a, b in E.pieces]
    if sum(lengths) == 0:
        lengths = [1.0] * len(E.pieces)
    counts = _alloc(lengths, n)
    out = []
    for (a, b), c in zip(E.pieces, counts):
        if c == 1:
            out.append(np.array([0.5 * (a + b)]))
        elif c > 1:
            out.append(np.linspace(a, b, c))
    return np.concatenate(out)


def _candidates(E: BoundedSet1D):
    span = E.param_span
    step = 1e-3 * span if span > 0 else 1.0
    grids = []
    for a, b in E.pieces:
        m = max(2, int(math.ceil((b - a) / step)) + 1) if b > a else 1
        grids.append(np.linspace(a, b, m))
    return np.unique(np.concatenate(grids))


def _sum_log(E, cand, others):
    if E.ambient == "line":
        d = np.abs(cand[:, None] - others[None, :])
    else:
        d = 2.0 * np.abs(np.sin(0.5 * (cand[:, None] - others[None, :])))
    with np.errstate(divide="ignore"):
        return np.sum(np.log(d), axis=1)


def _exchange(E, t, cand, sweeps=4):
    for _ in range(sweeps):
        moved = False
        for i in range(t.size):
            others = np.delete(t, i)
            s = _sum_log(E, cand, others)
            j = int(np.argmax(s))
            cur = _sum_log(E, t[i:i + 1], others)[0]
            if s[j] > cur + 1e-13 * max(1.0, abs(cur)):
                t[i] = cand[j]
                moved = True
        if not moved:
            break
    return t


def _piece_bounds(E, t):
    bounds = []
    for x in t:
        for a, b in E.pieces:
            if E.ambient == "line":
                if a - 1e-12 <= x <= b + 1e-12:
                    bounds.append((a, b))
                    break
            else:
                s = (x - a) % TWO_PI
                if s <= b - a + 1e-12 or s >= TWO_PI - 1e-12:
                    # express x in the unwrapped coordinate of this piece
                    bounds.append((a, b))
                    break
        else:
            bounds.append((x, x))
    return bounds


def _polish(E, t):
    n = t.size
    line = E.ambient == "line"
    if not line:
        bounds = _piece_bounds(E, t)
        t = np.array([a + ((x - a) % TWO_PI) if b - a < TWO_PI else x
                      for x, (a, b) in zip(t, bounds)])
        if E.is_full_circle:
            bounds = [(None, None)] * n
    else:
        bounds = _piece_bounds(E, t)
    iu = np.triu_indices(n, 1)

    def fun(x):
        dx = x[:, None] - x[None, :]
        if line:
            d = np.abs(dx)
            np.fill_diagonal(d, 1.0)
            with np.errstate(divide="ignore"):
                val = -np.sum(np.log(d[iu]))
            with np.errstate(divide="ignore"):
                g = 1.0 / np.where(dx == 0, np.inf, dx)
        else:
            h = 0.5 * dx
            d = 2.0 * np.abs(np.sin(h))
            np.fill_diagonal(d, 1.0)
            with np.errstate(divide="ignore"):
                val = -np.sum(np.log(d[iu]))
            s = np.sin(h)
            with np.errstate(divide="ignore", invalid="ignore"):
                g = np.where(s == 0, 0.0, 0.5 * np.cos(h) / s)
        np.fill_diagonal(g, 0.0)
        if not np.isfinite(val):
            return 1e300, np.zeros_like(x)
        return val, -np.sum(g, axis=1)

    res = minimize(fun, t, jac=True, method="L-BFGS-B", bounds=bounds,
                   options={"maxiter": 5000, "ftol": 1e-15, "gtol": 1e-11})
    x = res.x
    if res.fun <= fun(t)[0]:
        return x
    return t


def fekete_points(E: BoundedSet1D, n: int) -> FeketeResult:
    """Approximate Fekete configuration of ``n`` points on ``E``.

    Equally spaced start (per piece, counts proportional to length), cyclic
    single-point exchange over a fixed candidate grid, then a bounded
    quasi-Newton polish of the log-product.  Fully deterministic.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if E.is_empty:
        raise ValueError("empty set")
    t = _initial_params(E, n)
    if not E.is_full_circle:
        t = _exchange(E, t.copy(), _candidates(E))
    if E.param_length > 0:
        t = _polish(E, t)
    t = np.sort(t)
    z = E.points(t)
    lv = log_vandermonde(z)
    diam = math.exp(2.0 * lv / (n * (n - 1))) if np.isfinite(lv) else 0.0
    with np.errstate(over="ignore", under="ignore"):
        v = float(np.exp(lv))
    return FeketeResult(n, z, v, diam, lv)


# ---------------------------------------------------------------------------
# capacity estimates
# ---------------------------------------------------------------------------

@dataclass
class CapacityEstimate:
    value: float
    robin_constant: float
    method: str
    error_bar: float
    n_sequence: tuple = ()
    diameter_sequence: tuple = ()

    @property
    def robin_infinite(self) -> bool:
        return math.isinf(self.robin_constant)

    @property
    def wiener(self) -> float:
        """Wiener-scale capacity ``1/max(V, 0+)``."""
        V = self.robin_constant
        if math.isinf(V):
            return 0.0
        return math.inf if V <= 0 else 1.0 / V

    def as_dict(self) -> dict:
        return {
            "value": self.value,
            "wiener": self.wiener,
            "robin_constant": self.robin_constant,
            "robin_infinite": self.robin_infinite,
            "method": self.method,
            "error_bar": self.error_bar,
            "n_sequence": list(self.n_sequence),
            "diameter_sequence": list(self.diameter_sequence),
        }


def _from_value(value, method, err, ns=(), ds=()):
    value = max(0.0, float(value))
    V = -math.log(value) if value > 0 else math.inf
    return CapacityEstimate(value, V, method, float(err), tuple(ns), tuple(ds))


def _aitken(s0, s1, s2):
    den = s2 - 2.0 * s1 + s0
    if den == 0 or not np.isfinite(den):
        return s2
    return s2 - (s2 - s1) ** 2 / den


def _tail_fit(ns, ds, cols):
    ns = np.asarray(ns, dtype=float)
    basis = {
        "one": np.ones_like(ns),
        "log": np.log(ns) / ns,
        "inv": 1.0 / ns,
        "inv2": 1.0 / ns ** 2,
    }
    A = np.column_stack([basis[c] for c in cols])
    coef, *_ = np.linalg.lstsq(A, np.asarray(ds), rcond=None)
    return float(coef[0])


def _extrapolate(ns, ds):
    """Limit of the diameter sequence and a two-estimate error bar.

    A least-squares fit ``L + (a log n + b)/n + c/n^2`` over the even ``n`` in
    the upper three quarters of the sequence gives the limit; the error bar is the larger of the
    change when the ``1/n^2`` term is dropped and the last increment of
    Aitken's transform on the dyadic subsequence.  A fit outside
    ``(0, min d_n]`` falls back to a two-term fit of ``log d_n`` with a widened error bar.
    """
    ns = np.asarray(ns)
    ds = np.asarray(ds, dtype=float)
    nmax = int(ns[-1])
    sel = ns >= max(4, nmax // 4)
    if sel.sum() < 5:
        sel = np.ones_like(ns, dtype=bool)
    # point allocation between pieces makes the sequence zigzag in n;
    # the even subsequence is smoother
    even = sel & (ns % 2 == 0)
    if even.sum() >= 5:
        sel = even
    full = _tail_fit(ns[sel], ds[sel], ("one", "log", "inv", "inv2"))
    short = _tail_fit(ns[sel], ds[sel], ("one", "log", "inv"))
    lookup = dict(zip(ns.tolist(), ds.tolist()))
    dy = [m for m in (nmax // 8, nmax // 4, nmax // 2, nmax) if m in lookup]
    if len(dy) >= 4:
        a1 = _aitken(*(lookup[m] for m in dy[1:]))
        a0 = _aitken(*(lookup[m] for m in dy[:3]))
        aitken_step = abs(a1 - a0)
    elif len(ds) >= 4:
        aitken_step = abs(_aitken(*ds[-3:]) - _aitken(*ds[-4:-1]))
    else:
        aitken_step = abs(ds[-1] - ds[-2])
    err = max(abs(full - short), aitken_step)
    ceiling = float(np.min(ds))
    if not 0.0 < full <= ceiling:
        # clustered sets (many short pieces) decay steeply in n and throw the
        # linear fit below zero; a fit of log d_n stays positive
        logfit = math.exp(_tail_fit(ns[sel], np.log(ds[sel]), ("one", "inv")))
        err = max(err, abs(logfit - max(full, 0.0)))
        full = logfit
    value = min(max(full, 0.0), ceiling)
    return value, err


def transfinite_diameter(E: BoundedSet1D, n_max: int = 32, n_min: int = 4) -> CapacityEstimate:
    """Capacity of ``E`` as the extrapolated limit of Fekete diameters."""
    if n_max < 4:
        raise ValueError("n_max must be at least 4")
    if E.is_empty:
        return _from_value(0.0, "transfinite", 0.0)
    core = E.without_points()
    if core.is_empty:
        # a finite set: V_n vanishes once n exceeds the number of points
        return _from_value(0.0, "transfinite", 0.0)
    ns = list(range(n_min, n_max + 1))
    ds = [fekete_points(core, n).diameter_estimate for n in ns]
    value, err = _extrapolate(ns, ds)
    return _from_value(value, "transfinite", err, ns, ds)


@dataclass
class MassDistribution:
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        self.nodes = np.asarray(self.nodes, dtype=complex).ravel()
        self.weights = np.asarray(self.weights, dtype=float).ravel()
        if self.nodes.shape != self.weights.shape:
            raise ValueError("nodes and weights differ in length")
        if np.any(self.weights < 0):
            raise ValueError("weights must be nonnegative")
        if abs(self.weights.sum() - 1.0) > 1e-12:
            raise ValueError("weights must sum to one")


def log_potential(nu: MassDistribution, z) -> np.ndarray | float:
    """``sum_i w_i log(1/|z - node_i|)``; ``+inf`` on charged nodes."""
    zz = np.atleast_1d(np.asarray(z, dtype=complex))
    d = np.abs(zz[:, None] - nu.nodes[None, :])
    w = nu.weights[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(w > 0, -w * np.log(d), 0.0)
    out = terms.sum(axis=1)
    return float(out[0]) if np.ndim(z) == 0 else out


def _cheb_nodes(a, b, m):
    k = np.arange(1, m + 1)
    return 0.5 * (a + b) - 0.5 * (b - a) * np.cos((2 * k - 1) * np.pi / (2 * m))


def _potential_grid(E: BoundedSet1D, node_count: int):
    if E.is_full_circle:
        t = TWO_PI * np.arange(node_count) / node_count
        ev = (t[:, None] + TWO_PI / node_count * (np.arange(10) + 0.5)[None, :] / 10).ravel()
        return t, ev
    lengths = np.array([b - a for a, b in E.pieces])
    counts = np.maximum(2, _alloc(lengths, node_count))
    nodes, ev = [], []
    for (a, b), m in zip(E.pieces, counts):
        x = _cheb_nodes(a, b, m)
        nodes.append(x)
        edges = np.concatenate([[a], x, [b]])
        frac = (np.arange(10) + 0.5) / 10
        ev.append((edges[:-1, None] + np.diff(edges)[:, None] * frac[None, :]).ravel())
    return np.concatenate(nodes), np.concatenate(ev)


def _min_sup_potential(E, node_count):
    t, ev = _potential_grid(E, node_count)
    zn, ze = E.points(t), E.points(ev)
    # pieces below float resolution can put an evaluation point on a node
    A = -np.log(np.maximum(np.abs(ze[:, None] - zn[None, :]), 1e-300))
    n = zn.size
    c = np.r_[np.zeros(n), 1.0]
    res = linprog(
        c,
        A_ub=np.c_[A, -np.ones(ze.size)],
        b_ub=np.zeros(ze.size),
        A_eq=np.r_[np.ones(n), 0.0][None, :],
        b_eq=[1.0],
        bounds=[(0, None)] * n + [(None, None)],
        method="highs",
    )
    if not res.success:
        raise RuntimeError(f"equilibrium LP failed: {res.message}")
    w = np.clip(res.x[:n], 0.0, None)
    return float(res.x[-1]), MassDistribution(zn, w / w.sum())


def capacity_via_potential(E: BoundedSet1D, node_count: int = 200,
                           return_measure: bool = False):
    """Capacity from the discrete equilibrium problem.

    Weights on fixed Chebyshev nodes minimize the largest potential over a
    grid ten times denser on ``E``; the min-max is a linear program.  The
    estimate is extrapolated linearly in ``1/node_count`` from runs at
    ``node_count`` and ``node_count // 2``.
    """
    if node_count < 2:
        raise ValueError("node_count must be at least 2")
    core = E.without_points()
    if core.is_empty:
        est = _from_value(0.0, "potential", 0.0)
        return (est, None) if return_measure else est
    V1, nu = _min_sup_potential(core, node_count)
    V0, _ = _min_sup_potential(core, max(2, node_count // 2))
    c1, c0 = math.exp(-V1), math.exp(-V0)
    value = 2.0 * c1 - c0
    est = _from_value(value, "potential", abs(c1 - c0))
    return (est, nu) if return_measure else est


def outer_capacity(E: BoundedSet1D, eps0: float, n_max: int = 16):
    """Capacities of open fattenings ``E + eps0 * 2^-k``, ``k = 0, 1, 2``."""
    seq = [transfinite_diameter(E.fattened(eps0 * 2.0 ** -k), n_max) for k in range(3)]
    return seq[-1], seq


def _scaled(est: CapacityEstimate, scale: str) -> float:
    if scale == "wiener":
        return est.wiener
    if scale == "value":
        return est.value
    raise ValueError(f"unknown scale {scale!r}")


def density_ratio(E: BoundedSet1D, x0: float, eps: float, n_max: int = 24,
                  scale: str = "wiener") -> float:
    """``C([x0-eps, x0+eps] \\ E) / C([x0-eps, x0+eps])`` clamped to [0, 1].

    ``scale="wiener"`` compares ``1/V``; ``scale="value"`` compares
    ``exp(-V)``.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    if E.ambient != "line":
        raise ValueError("density_ratio expects a line set")
    lo, hi = x0 - eps, x0 + eps
    rest = E.complement_in(lo, hi).without_points()
    if rest.is_empty:
        return 0.0
    whole = BoundedSet1D(((lo, hi),), "line", E.scale, E.offset)
    if rest.pieces == whole.pieces:
        return 1.0
    num = _scaled(transfinite_diameter(rest, n_max), scale)
    den = _scaled(transfinite_diameter(whole, n_max), scale)
    if math.isinf(den):
        return 1.0 if math.isinf(num) else 0.0
    return float(min(1.0, max(0.0, num / den)))


@dataclass
class ThinnessReport:
    deltas: list
    capacities: list
    terms: list
    verdict: str
    heuristic: bool = True


def is_log_thin(E: BoundedSet1D, zeta0: float, eps_sequence, n_max: int = 16,
                scale: str = "wiener") -> ThinnessReport:
    """Terms ``C(E ∩ A(zeta0, delta)) log(1/delta)`` along a shrinking sequence.

    ``zeta0`` is an angle.  The verdict only reads the trend of finitely
    many terms and is therefore flagged as heuristic.
    """
    deltas = [float(d) for d in eps_sequence]
    if any(d2 >= d1 for d1, d2 in zip(deltas, deltas[1:])):
        raise ValueError("eps_sequence must decrease")
    caps, terms = [], []
    for d in deltas:
        part = E.intersect_interval(zeta0 - d, zeta0 + d)
        c = _scaled(transfinite_diameter(part, n_max), scale) if not part.is_empty else 0.0
        caps.append(c)
        terms.append(c * math.log(1.0 / d))
    peak = max(terms) if terms else 0.0
    if peak == 0.0:
        verdict = "thin"
    elif terms[-1] <= 0.25 * peak and terms[-1] <= terms[0]:
        verdict = "thin"
    else:
        verdict = "not thin"
    return ThinnessReport(deltas, caps, terms, verdict)
