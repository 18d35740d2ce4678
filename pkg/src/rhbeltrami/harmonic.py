"""Harmonic and analytic fields on the unit disk.

Fields are truncated Fourier series ``u(r e^{it}) = sum c_n r^|n| e^{int}``.
Boundary samples on a uniform grid of ``M`` angles map to coefficients with
``|n| <= M/2`` (the Nyquist term split evenly between ``+-M/2``), so the
value at ``r = 0`` is exactly the grid mean.

Nontangential limits are estimated along three straight paths inside a
Stolz sector.  Each path is sampled at geometrically shrinking distances
``rho`` from the boundary point and the samples are extrapolated
quadratically in ``rho``; a limit counts as converged when the last few extrapolants
agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .cantor_lusin import CantorSpec, LusinResult, lusin_antiderivative

TWO_PI = 2.0 * np.pi

__all__ = [
    "BoundaryFunction",
    "DiskField",
    "StolzProbe",
    "ProbeResult",
    "poisson_extend",
    "angular_derivative",
    "conjugate",
    "analytic_completion",
    "hp_norm",
    "hp_profile",
    "probe_limit",
    "default_probe",
    "boundary_limits",
    "gehring_solution",
    "gehring_construct",
    "builtin_boundary",
]


@dataclass(frozen=True)
class BoundaryFunction:
    samples: np.ndarray
    tag: str = "measurable"

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=float).ravel()
        M = s.size
        if M < 2 or M & (M - 1):
            raise ValueError("sample count must be a power of two")
        if not np.all(np.isfinite(s)):
            raise ValueError("samples must be finite")
        if self.tag not in ("continuous", "bv", "measurable"):
            raise ValueError(f"unknown class tag {self.tag!r}")
        object.__setattr__(self, "samples", s)

    @property
    def M(self) -> int:
        return self.samples.size

    @property
    def theta(self) -> np.ndarray:
        return TWO_PI * np.arange(self.M) / self.M

    @classmethod
    def from_function(cls, f, M: int, tag: str = "continuous") -> "BoundaryFunction":
        return cls(f(TWO_PI * np.arange(M) / M), tag)


class DiskField:
    """Immutable truncated Fourier field on the disk.

    ``coeffs[n + N]`` holds ``c_n``.  ``r_max`` caps the radius at which the
    field may be evaluated (fields built from ``M`` samples use
    ``1 - 4/N``).
    """

    def __init__(self, coeffs, kind: str = "harmonic", r_max: float = 1.0):
        c = np.array(coeffs, dtype=complex).ravel()
        if c.size % 2 == 0:
            raise ValueError("coefficient array must have odd length 2N+1")
        if kind not in ("harmonic", "analytic"):
            raise ValueError(f"unknown kind {kind!r}")
        N = c.size // 2
        if kind == "analytic" and np.any(c[:N] != 0):
            raise ValueError("analytic fields have no negative modes")
        c.setflags(write=False)
        self._c = c
        self.kind = kind
        self.r_max = float(r_max)

    # access ---------------------------------------------------------------
    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def N(self) -> int:
        return self._c.size // 2

    def coef(self, n: int) -> complex:
        return complex(self._c[n + self.N]) if abs(n) <= self.N else 0.0j

    @property
    def modes(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    def with_coeffs(self, c, kind: str | None = None) -> "DiskField":
        return DiskField(c, self.kind if kind is None else kind, self.r_max)

    # arithmetic -------------------------------------------------------------
    def _align(self, other: "DiskField"):
        N = max(self.N, other.N)
        a = np.zeros(2 * N + 1, complex)
        b = np.zeros(2 * N + 1, complex)
        a[N - self.N:N + self.N + 1] = self._c
        b[N - other.N:N + other.N + 1] = other._c
        kind = "analytic" if self.kind == other.kind == "analytic" else "harmonic"
        return a, b, kind, min(self.r_max, other.r_max)

    def __add__(self, other):
        if isinstance(other, DiskField):
            a, b, kind, r = self._align(other)
            return DiskField(a + b, kind, r)
        c = self._c.copy()
        c[self.N] += other
        return self.with_coeffs(c)

    __radd__ = __add__

    def __neg__(self):
        return self.with_coeffs(-self._c)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        if isinstance(s, DiskField):
            raise TypeError("use pointwise evaluation for products of fields")
        return self.with_coeffs(self._c * s)

    __rmul__ = __mul__

    # evaluation ------------------------------------------------------------
    def _check_radius(self, z):
        r = np.abs(z)
        if np.any(r > self.r_max + 1e-12):
            raise ValueError(
                f"evaluation at |z| = {r.max():.6g} beyond r_max = {self.r_max:.6g}"
            )

    def evaluate(self, z, check: bool = True) -> np.ndarray:
        """Complex value of the series at ``z``."""
        z = np.asarray(z, dtype=complex)
        if check:
            self._check_radius(z)
        N = self.N
        pos = np.polynomial.polynomial.polyval(z, self._c[N:])
        if self.kind == "analytic" or N == 0:
            return pos
        neg = np.polynomial.polynomial.polyval(np.conj(z), np.r_[0.0, self._c[:N][::-1]])
        return pos + neg

    def __call__(self, z):
        v = self.evaluate(z)
        return v.real if self.kind == "harmonic" else v

    def circle_values(self, r: float, M: int, shift: float = 0.0) -> np.ndarray:
        """Values at ``r exp(i(2 pi k/M + shift))``, ``k = 0..M-1``, by one FFT."""
        if r > self.r_max + 1e-12:
            raise ValueError(f"radius {r} beyond r_max = {self.r_max}")
        n = self.modes
        a = self._c * r ** np.abs(n) * np.exp(1j * n * shift)
        buf = np.zeros(M, complex)
        np.add.at(buf, n % M, a)
        v = np.fft.ifft(buf) * M
        return v.real if self.kind == "harmonic" else v


def poisson_extend(Phi: BoundaryFunction) -> DiskField:
    """Discrete Poisson extension of grid samples."""
    M = Phi.M
    N = M // 2
    f = np.fft.fft(Phi.samples) / M
    c = np.zeros(2 * N + 1, complex)
    c[N:2 * N] = f[:N]
    c[1:N] = f[N + 1:]
    c[0] = c[2 * N] = 0.5 * f[N]
    return DiskField(c, "harmonic", max(0.0, 1.0 - 4.0 / N))


def angular_derivative(u: DiskField) -> DiskField:
    if u.kind != "harmonic":
        raise ValueError("angular_derivative expects a harmonic field")
    return u.with_coeffs(1j * u.modes * u.coeffs)


def conjugate(u: DiskField) -> DiskField:
    """Harmonic conjugate normalized to vanish at the origin."""
    if u.kind != "harmonic":
        raise ValueError("conjugate expects a harmonic field")
    return u.with_coeffs(-1j * np.sign(u.modes) * u.coeffs)


def analytic_completion(u: DiskField) -> DiskField:
    """``u + i v`` with ``v`` the conjugate of ``u`` (``v(0) = 0``)."""
    N = u.N
    c = np.zeros_like(u.coeffs)
    c[N] = u.coeffs[N]
    c[N + 1:] = 2.0 * u.coeffs[N + 1:]
    return DiskField(c, "analytic", u.r_max)


def hp_profile(u: DiskField, p: float, r_grid, K: int | None = None) -> np.ndarray:
    """``(int |u(r e^{it})|^p dt)^{1/p}`` for each ``r`` in ``r_grid``."""
    if p <= 0:
        raise ValueError("p must be positive")
    K = K or max(256, 4 * u.N)
    out = []
    for r in r_grid:
        v = np.abs(u.circle_values(float(r), K))
        out.append((np.sum(v ** p) * TWO_PI / K) ** (1.0 / p))
    return np.asarray(out)


def hp_norm(u: DiskField, p: float, r_grid, K: int | None = None) -> float:
    return float(np.max(hp_profile(u, p, r_grid, K)))


# ---------------------------------------------------------------------------
# nontangential probes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StolzProbe:
    """Probe at ``exp(i zeta)``; ``radii`` are the nominal radii ``1 - rho``."""

    zeta: float
    aperture: float
    radii: tuple

    def __post_init__(self):
        r = tuple(float(v) for v in self.radii)
        if not r:
            raise ValueError("probe needs at least one radius")
        if not (0 <= self.aperture < np.pi / 2):
            raise ValueError("aperture must lie in [0, pi/2)")
        if any(b <= a for a, b in zip(r, r[1:])) or r[-1] >= 1 or r[0] < 0:
            raise ValueError("radii must increase strictly inside [0, 1)")
        object.__setattr__(self, "radii", r)

    @property
    def rho(self) -> np.ndarray:
        return 1.0 - np.asarray(self.radii)

    @property
    def directions(self) -> np.ndarray:
        return np.array([-self.aperture, 0.0, self.aperture])

    def points(self) -> np.ndarray:
        """Complex probe points, shape ``(3, len(radii))``."""
        return np.exp(1j * self.zeta) * (
            1.0 - self.rho[None, :] * np.exp(1j * self.directions[:, None])
        )


def probe_rhos(N: int, aperture: float = np.pi / 4, count: int = 12, ratio: float = 0.8,
               margin: float = 10.0) -> np.ndarray:
    """Distances to the boundary ending where ``|z| = 1 - margin/N``."""
    c, d = math.cos(aperture), margin / N
    disc = c * c - (2.0 * d - d * d)
    if disc <= 0:
        raise ValueError("field resolution too low for a boundary probe")
    # smallest rho with |1 - rho e^{i aperture}| = 1 - margin/N
    rho_min = (c - math.sqrt(disc)) * (1.0 + 1e-9)
    return rho_min * ratio ** -np.arange(count - 1, -1, -1.0)


def default_probe(zeta: float, N: int, aperture: float = np.pi / 4, count: int = 12,
                  ratio: float = 0.8) -> StolzProbe:
    rho = probe_rhos(N, aperture, count, ratio)
    if rho[0] >= 1:
        raise ValueError("field resolution too low for a boundary probe")
    return StolzProbe(zeta, aperture, tuple(1.0 - rho))


@dataclass
class ProbeResult:
    limit: float | complex
    path_limits: np.ndarray
    values: np.ndarray
    estimates: np.ndarray
    residuals: np.ndarray
    converged: bool


def _extrapolate(values, rho):
    """Quadratic extrapolation to ``rho = 0`` from consecutive triples along
    the last axis."""
    r0, r1, r2 = rho[:-2], rho[1:-1], rho[2:]
    u0, u1, u2 = values[..., :-2], values[..., 1:-1], values[..., 2:]
    w0 = r1 * r2 / ((r1 - r0) * (r2 - r0))
    w1 = r0 * r2 / ((r0 - r1) * (r2 - r1))
    w2 = r0 * r1 / ((r0 - r2) * (r1 - r2))
    return w0 * u0 + w1 * u1 + w2 * u2


def _settled(est, limit, window, rtol):
    tail = est[..., -window:]
    spread = np.max(np.abs(tail[..., :, None] - tail[..., None, :]), axis=(-1, -2))
    return spread < rtol * (1.0 + np.abs(limit))


def probe_limit(f, probe: StolzProbe, window: int = 5, rtol: float = 1e-4) -> ProbeResult:
    """Nontangential limit of ``f`` (any vectorized callable) along ``probe``."""
    if len(probe.radii) < window + 2:
        raise ValueError(f"probe needs at least {window + 2} radii")
    z = probe.points()
    vals = np.asarray(f(z))
    est = _extrapolate(vals, probe.rho)
    path_limits = est[:, -1]
    limit = path_limits[1]
    ok = bool(np.all(_settled(est, limit, window, rtol)))
    agree = bool(np.all(np.abs(path_limits - limit) < rtol * (1.0 + abs(limit))))
    return ProbeResult(limit, path_limits, vals, est, np.abs(vals - limit), ok and agree)


def boundary_limits(u: DiskField, M: int, aperture: float = np.pi / 4, count: int = 12,
                    ratio: float = 0.8, window: int = 5, rtol: float = 1e-4):
    """Probe limits at every grid angle ``2 pi k / M`` at once.

    Returns ``(limits, converged)``.  Points ``exp(i t)(1 - rho e^{i psi})``
    lie on a circle with an angular offset, so each (rho, psi) pair costs one
    FFT.
    """
    rho = probe_rhos(u.N, aperture, count, ratio)
    vals = np.empty((3, rho.size, M), dtype=complex if u.kind == "analytic" else float)
    for i, psi in enumerate((-aperture, 0.0, aperture)):
        for j, r in enumerate(rho):
            w = 1.0 - r * np.exp(1j * psi)
            vals[i, j] = u.circle_values(abs(w), M, shift=np.angle(w))
    est = _extrapolate(np.moveaxis(vals, 2, 0), rho)  # (M, 3, J-1)
    path_limits = est[..., -1]
    limit = path_limits[:, 1]
    ok = np.all(_settled(est, limit[:, None], window, rtol), axis=1)
    agree = np.all(np.abs(path_limits - limit[:, None]) < rtol * (1.0 + np.abs(limit[:, None])), axis=1)
    return limit, ok & agree


# ---------------------------------------------------------------------------
# Gehring-type solutions
# ---------------------------------------------------------------------------

@dataclass
class GehringResult:
    u: DiskField
    U: DiskField
    lusin: LusinResult = field(repr=False)


def gehring_construct(phi: BoundaryFunction, eps: float, stages: int,
                      spec: CantorSpec | None = None) -> GehringResult:
    """Lusin antiderivative on ``[0, 2 pi]``, Poisson extension, then the
    angular derivative."""
    nodes = np.r_[phi.samples, phi.samples[0]]
    lus = lusin_antiderivative(nodes, eps, stages, 0.0, TWO_PI, spec)
    U = poisson_extend(BoundaryFunction(lus.Phi[:-1], "continuous"))
    return GehringResult(angular_derivative(U), U, lus)


def gehring_solution(phi: BoundaryFunction, eps: float, stages: int,
                     spec: CantorSpec | None = None) -> DiskField:
    return gehring_construct(phi, eps, stages, spec).u


def builtin_boundary(name: str, M: int) -> BoundaryFunction:
    """Stock boundary data: ``zero``, ``const1``, ``cos``, ``sin``, ``step``
    (``+1`` on the upper half circle, ``-1`` below), ``square``."""
    t = TWO_PI * np.arange(M) / M
    table = {
        "zero": (np.zeros(M), "continuous"),
        "const1": (np.ones(M), "continuous"),
        "cos": (np.cos(t), "continuous"),
        "sin": (np.sin(t), "continuous"),
        "step": (np.where(t < np.pi, 1.0, -1.0), "bv"),
        "square": (np.where((t >= np.pi / 2) & (t < 3 * np.pi / 2), 1.0, 0.0), "bv"),
    }
    if name not in table:
        raise ValueError(f"unknown builtin boundary data {name!r}")
    s, tag = table[name]
    return BoundaryFunction(s, tag)
