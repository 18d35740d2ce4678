"""Beltrami equation ``f_zbar = mu f_z`` with ``mu`` supported in the unit disk.

A planar solution ``h = z + C[omega]`` comes from the Neumann series for
``omega = mu + mu S[omega]`` (``S`` the Beurling transform, applied as the
Fourier multiplier ``conj(xi)/xi`` on a periodic lattice, ``C`` the Cauchy
transform by zero-padded direct convolution).  Composing with the Riemann
map of ``h(D)`` gives a self-map ``H`` of the disk, and a Riemann-Hilbert
problem with data pushed through ``H`` yields ``f = F o H``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import ndimage, signal
from scipy.interpolate import Akima1DInterpolator, CubicSpline

from .harmonic import BoundaryFunction
from .rh_analytic import RHSolution, ResidualReport, UnimodularBV, bv_argument, rh_solve

TWO_PI = 2.0 * np.pi

__all__ = [
    "BeltramiCoefficient",
    "PlanarQCMap",
    "RegularRHSolution",
    "NonContractionError",
    "distortion_quotient",
    "solve_qc",
    "disk_normalize",
    "rh_beltrami",
    "beltrami_residual",
    "regularity_audit",
    "builtin_mu",
]


class NonContractionError(RuntimeError):
    """The Neumann iteration stopped contracting."""


# ---------------------------------------------------------------------------
# coefficient and lattice
# ---------------------------------------------------------------------------

def _nodes(n: int, L: float) -> np.ndarray:
    return -L + (2.0 * L / n) * np.arange(n)


@dataclass(frozen=True)
class BeltramiCoefficient:
    """Samples of ``mu`` on the ``n x n`` lattice ``x_j = -L + j h``.

    ``mu[j, i]`` is the value at ``x_i + i x_j``.  Values outside the open
    unit disk must vanish and ``k_bound = max |mu| < 1``.
    """

    mu: np.ndarray
    L: float = 4.0
    k_bound: float = field(init=False)

    def __post_init__(self):
        mu = np.array(self.mu, dtype=complex)
        if mu.ndim != 2 or mu.shape[0] != mu.shape[1]:
            raise ValueError("mu must be a square lattice table")
        if not np.all(np.isfinite(mu)):
            raise ValueError("mu must be finite")
        Z = self.grid(mu.shape[0], self.L)
        if np.any(mu[np.abs(Z) >= 1.0] != 0):
            raise ValueError("mu must vanish outside the unit disk")
        k = float(np.max(np.abs(mu))) if mu.size else 0.0
        if k >= 1.0:
            raise ValueError(f"degenerate coefficient: max |mu| = {k} >= 1")
        mu.setflags(write=False)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "k_bound", k)

    @staticmethod
    def grid(n: int, L: float) -> np.ndarray:
        x = _nodes(n, L)
        return x[None, :] + 1j * x[:, None]

    @property
    def n(self) -> int:
        return self.mu.shape[0]

    @property
    def h(self) -> float:
        return 2.0 * self.L / self.n

    @property
    def x(self) -> np.ndarray:
        return _nodes(self.n, self.L)

    @property
    def Z(self) -> np.ndarray:
        return self.grid(self.n, self.L)

    @classmethod
    def from_function(cls, fn, n: int = 512, L: float = 4.0) -> "BeltramiCoefficient":
        Z = cls.grid(n, L)
        inside = np.abs(Z) < 1.0
        mu = np.zeros_like(Z)
        mu[inside] = fn(Z[inside])
        return cls(mu, L)

    @classmethod
    def zero(cls, n: int = 512, L: float = 4.0) -> "BeltramiCoefficient":
        return cls(np.zeros((n, n), complex), L)

    @classmethod
    def radial(cls, k: float, n: int = 512, L: float = 4.0) -> "BeltramiCoefficient":
        """``k z / zbar`` on the disk (radial stretch ``z |z|^a``)."""
        def fn(z):
            out = np.zeros_like(z)
            nz = z != 0
            out[nz] = k * z[nz] / np.conj(z[nz])
            return out
        return cls.from_function(fn, n, L)

    @classmethod
    def constant(cls, k: complex, n: int = 512, L: float = 4.0) -> "BeltramiCoefficient":
        return cls.from_function(lambda z: np.full(z.shape, k, complex), n, L)


def builtin_mu(text: str, n: int = 512, L: float = 4.0) -> BeltramiCoefficient:
    """Parse ``zero``, ``radial:k`` or ``const:k`` (``builtin:`` prefix optional)."""
    text = text.removeprefix("builtin:")
    kind, _, arg = text.partition(":")
    if kind == "zero":
        return BeltramiCoefficient.zero(n, L)
    if kind == "radial":
        return BeltramiCoefficient.radial(float(arg), n, L)
    if kind == "const":
        return BeltramiCoefficient.constant(complex(arg), n, L)
    raise ValueError(f"unknown mu {text!r}")


def distortion_quotient(mu: BeltramiCoefficient) -> np.ndarray:
    """Pointwise ``K = (1 + |mu|) / (1 - |mu|)``."""
    a = np.abs(mu.mu)
    return (1.0 + a) / (1.0 - a)


# ---------------------------------------------------------------------------
# planar solver
# ---------------------------------------------------------------------------

def _beurling_multiplier(n: int, h: float) -> np.ndarray:
    k = TWO_PI * np.fft.fftfreq(n, d=h)
    xi = k[None, :] + 1j * k[:, None]
    m = np.zeros_like(xi)
    nz = xi != 0
    m[nz] = np.conj(xi[nz]) / xi[nz]
    return m


def beurling(omega: np.ndarray, h: float) -> np.ndarray:
    """Periodic Beurling transform of a lattice table."""
    m = _beurling_multiplier(omega.shape[0], h)
    return np.fft.ifft2(m * np.fft.fft2(omega))


def cauchy_transform(omega: np.ndarray, h: float) -> np.ndarray:
    """``(1/pi) sum omega(zeta) h^2 / (z - zeta)`` over the lattice.

    The singular cell uses the cell average of the kernel, which vanishes
    by symmetry.
    """
    n = omega.shape[0]
    off = h * np.arange(-(n - 1), n)
    D = off[None, :] + 1j * off[:, None]
    K = np.zeros_like(D)
    nz = D != 0
    K[nz] = h * h / (np.pi * D[nz])
    return signal.fftconvolve(omega, K, mode="same")


@dataclass
class PlanarQCMap:
    """Lattice samples of a quasiconformal map with derivative tables.

    A planar map carries the Neumann iteration record.  The disk-normalized
    version returned by :func:`disk_normalize` additionally holds the power
    series of the inverse Riemann map and the boundary correspondence; its
    lattice values are NaN outside the unit disk.
    """

    x: np.ndarray
    values: np.ndarray
    h_z: np.ndarray
    h_zbar: np.ndarray
    h0: complex
    h1: complex
    k_bound: float
    ratios: np.ndarray = field(default_factory=lambda: np.zeros(0))
    iterations: int = 0
    source: "PlanarQCMap | None" = field(default=None, repr=False)
    riemann: np.ndarray | None = field(default=None, repr=False)
    boundary_theta: np.ndarray | None = field(default=None, repr=False)
    boundary_psi: np.ndarray | None = field(default=None, repr=False)
    boundary_back: np.ndarray | None = field(default=None, repr=False)
    theodorsen_steps: int = 0
    _spline: tuple | None = field(default=None, init=False, repr=False)

    @property
    def n(self) -> int:
        return self.x.size

    @property
    def h(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def L(self) -> float:
        return float(-self.x[0])

    @property
    def Z(self) -> np.ndarray:
        return self.x[None, :] + 1j * self.x[:, None]

    @property
    def is_disk_map(self) -> bool:
        return self.riemann is not None

    def jacobian(self) -> np.ndarray:
        return np.abs(self.h_z) ** 2 - np.abs(self.h_zbar) ** 2

    def interpolate(self, z) -> np.ndarray:
        """Cubic-spline interpolation of the lattice values at ``z``."""
        if self.is_disk_map:
            raise ValueError("interpolate the planar source map instead")
        if self._spline is None:
            self._spline = (ndimage.spline_filter(self.values.real, 3),
                            ndimage.spline_filter(self.values.imag, 3))
        z = np.asarray(z, dtype=complex)
        coords = np.array([(z.imag.ravel() - self.x[0]) / self.h,
                           (z.real.ravel() - self.x[0]) / self.h])
        re = ndimage.map_coordinates(self._spline[0], coords, order=3, prefilter=False, mode="nearest")
        im = ndimage.map_coordinates(self._spline[1], coords, order=3, prefilter=False, mode="nearest")
        return (re + 1j * im).reshape(z.shape)

    def __call__(self, z) -> np.ndarray:
        if not self.is_disk_map:
            return self.interpolate(z)
        z = np.asarray(z, dtype=complex)
        if np.any(np.abs(z) > 1.0 + 1e-12):
            raise ValueError("the disk map is defined on the closed unit disk only")
        return _riemann_inverse(self, self.source.interpolate(z))


def _lattice_value(x: np.ndarray, table: np.ndarray, z: complex) -> complex:
    h = x[1] - x[0]
    i = (z.real - x[0]) / h
    j = (z.imag - x[0]) / h
    if abs(i - round(i)) < 1e-9 and abs(j - round(j)) < 1e-9:
        return complex(table[int(round(j)), int(round(i))])
    re = ndimage.map_coordinates(table.real, [[j], [i]], order=1)[0]
    im = ndimage.map_coordinates(table.imag, [[j], [i]], order=1)[0]
    return complex(re, im)


def solve_qc(mu: BeltramiCoefficient, tol: float = 1e-8, max_iter: int | None = None) -> PlanarQCMap:
    """Normalized planar solution of ``h_zbar = mu h_z`` with ``h(0)=0, h(1)=1``.

    Raises
    ------
    NonContractionError
        If a successive-difference ratio exceeds ``k_bound + 0.05`` or the
        iteration fails to reach ``tol``.
    """
    if mu.k_bound >= 1.0:
        raise NonContractionError("k_bound >= 1")
    h = mu.h
    m = mu.mu
    ratios = []
    if mu.k_bound == 0.0:
        omega = np.zeros_like(m)
        it = 0
    else:
        if max_iter is None:
            max_iter = int(math.ceil(math.log(tol) / math.log(mu.k_bound))) + 50
        mult = _beurling_multiplier(mu.n, h)
        omega = m.copy()
        prev = None
        it = 0
        while True:
            it += 1
            new = m + m * np.fft.ifft2(mult * np.fft.fft2(omega))
            d = math.sqrt(float(np.sum(np.abs(new - omega) ** 2)) * h * h)
            if prev is not None and prev > 0:
                r = d / prev
                ratios.append(r)
                if r > mu.k_bound + 0.05 and d > 1e3 * np.finfo(float).eps:
                    raise NonContractionError(
                        f"iteration {it}: difference ratio {r:.4f} exceeds k + 0.05 = {mu.k_bound + 0.05:.4f}")
            omega, prev = new, d
            if d < tol:
                break
            if it >= max_iter:
                raise NonContractionError(f"no convergence to {tol} after {it} iterations (last step {d:.3e})")
    Z = mu.Z
    raw = Z + cauchy_transform(omega, h)
    x = mu.x
    h0 = _lattice_value(x, raw, 0.0)
    h1 = _lattice_value(x, raw, 1.0)
    scale = h1 - h0
    values = (raw - h0) / scale
    hz = (1.0 + np.fft.ifft2(_beurling_multiplier(mu.n, h) * np.fft.fft2(omega))) / scale
    hzb = omega / scale
    return PlanarQCMap(x, values, hz, hzb, _lattice_value(x, values, 0.0),
                       _lattice_value(x, values, 1.0), mu.k_bound,
                       np.asarray(ratios), it)


# ---------------------------------------------------------------------------
# Riemann map of the image domain
# ---------------------------------------------------------------------------

def _conj_periodic(v: np.ndarray) -> np.ndarray:
    """Boundary values of the harmonic conjugate of periodic samples."""
    M = v.size
    c = np.fft.fft(v)
    n = np.fft.fftfreq(M, 1.0 / M)
    c = -1j * np.sign(n) * c
    if M % 2 == 0:
        c[M // 2] = 0.0
    return np.fft.ifft(c).real


def _star_polar(curve: np.ndarray):
    """Polar description of a closed curve winding once around 0.

    Certifies the polygon is a Jordan curve by requiring strictly increasing
    polar angle with total increase ``2 pi``.
    """
    if np.any(np.abs(curve) == 0):
        raise ValueError("image curve passes through the origin")
    phi = np.unwrap(np.angle(curve))
    steps = np.diff(np.r_[phi, phi[0] + TWO_PI])
    if np.any(steps <= 0) or np.any(steps >= np.pi):
        raise ValueError("image curve self-intersects or is not star-shaped on the grid; refine the lattice")
    return phi, np.abs(curve)


def _periodic_spline(x, y):
    """Periodic cubic spline through ``(x_k, y_k)``; ``x`` increasing over
    less than one period starting at ``x[0]``."""
    x0 = float(x[0])
    sp = CubicSpline(np.r_[x, x0 + TWO_PI], np.r_[y, y[0]], bc_type="periodic")
    return lambda q: sp(x0 + np.mod(np.asarray(q, float) - x0, TWO_PI))


def _riemann_inverse(H: PlanarQCMap, zeta, iters: int = 60) -> np.ndarray:
    """Solve ``F(w) = zeta`` for ``w`` in the disk by Newton's method."""
    zeta = np.asarray(zeta, dtype=complex)
    c = H.riemann
    dc = P.polyder(c)
    radius, t_of = H._polar
    ang = np.angle(zeta)
    w = np.minimum(np.abs(zeta) / radius(ang), 1.0) * np.exp(1j * t_of(ang))
    for _ in range(iters):
        step = (P.polyval(w, c) - zeta) / P.polyval(w, dc)
        w = w - step
        r = np.abs(w)
        w[r > 1.0] /= r[r > 1.0]
        if np.max(np.abs(step), initial=0.0) < 1e-14:
            break
    return w


def _band_limit(curve: np.ndarray, cutoff: float) -> np.ndarray:
    M = curve.size
    n = np.fft.fftfreq(M, 1.0 / M)
    return np.fft.ifft(np.fft.fft(curve) * np.exp(-(np.abs(n) / cutoff) ** 8))


def disk_normalize(h: PlanarQCMap, M: int = 1024, tol: float = 1e-12,
                   max_iter: int = 500, band: float | None = None) -> PlanarQCMap:
    """Compose ``h`` with the Riemann map ``g`` of ``h(D)`` onto the disk.

    ``g(0)=0`` and ``g(1)=1``.  The inverse map ``F = g^{-1}`` is found by
    Theodorsen's iteration ``theta = t + K[log R(theta)]`` (``K`` the
    periodic conjugation operator, ``R`` the polar radius of the image
    curve) and stored as a power series.  Lattice values of ``H = g o h``
    are computed inside the unit disk by Newton inversion of ``F``.

    The image curve is band-limited to ``band`` Fourier modes (default: a
    quarter of the modes the lattice resolves on the unit circle), since
    finer structure of the interpolated curve is lattice noise.  Polar
    radius and the angle correspondences are periodic cubic splines.
    """
    if h.is_disk_map:
        raise ValueError("already disk-normalized")
    t = TWO_PI * np.arange(M) / M
    if band is None:
        band = 0.25 * np.pi / h.h
    curve = _band_limit(h.interpolate(np.exp(1j * t)), band)
    phi, rho = _star_polar(curve)
    phi0 = phi[0]
    logR = _periodic_spline(phi, np.log(rho))

    theta = t + phi0
    steps = 0
    for steps in range(1, max_iter + 1):
        k = _conj_periodic(logR(theta))
        new = t + k - k[0] + phi0
        d = float(np.max(np.abs(new - theta)))
        theta = new
        if d < tol:
            break
    else:
        raise ValueError(f"Theodorsen iteration did not converge (last change {d:.3e})")
    if np.any(np.diff(theta) <= 0):
        raise ValueError("boundary correspondence is not monotone")
    bvals = np.exp(logR(theta) + 1j * theta)
    coef = np.fft.fft(bvals) / M
    c = np.zeros(M // 2, complex)
    c[1:] = coef[1:M // 2]

    # polar angle -> disk angle (inverse of theta(t)), and its composition
    # with the z-angle -> polar angle correspondence of the image curve
    dt = _periodic_spline(theta, t - (theta - phi0))
    t_of = lambda q: (q - phi0) + dt(q)
    dz = _periodic_spline(phi, t - (phi - phi0))
    z_of = lambda q: (q - phi0) + dz(q)
    psi = t_of(phi)
    back = z_of(theta)

    Z = h.Z
    inside = np.abs(Z) < 1.0
    nan = np.full(Z.shape, np.nan + 0j)
    out = PlanarQCMap(h.x, nan.copy(), nan.copy(), nan.copy(), 0j, 1 + 0j, h.k_bound,
                      h.ratios, h.iterations, source=h, riemann=c, boundary_theta=t,
                      boundary_psi=psi, boundary_back=back, theodorsen_steps=steps)
    out._polar = (lambda q: np.exp(logR(q)), t_of)
    w = _riemann_inverse(out, h.values[inside])
    dF = P.polyval(w, P.polyder(c))
    out.values[inside] = w
    out.h_z[inside] = h.h_z[inside] / dF
    out.h_zbar[inside] = h.h_zbar[inside] / dF
    out.h0 = complex(_riemann_inverse(out, np.array([h.h0]))[0])
    out.h1 = complex(_riemann_inverse(out, np.array([h.h1]))[0])
    return out


def _uniform_periodic(table, q):
    """Evaluate ``table(t) - t`` (periodic, on the uniform grid) plus ``q``."""
    M = table.size
    t = TWO_PI * np.arange(M) / M
    return np.asarray(q, float) + _periodic_spline(t, table - t)(q)


def boundary_map(H: PlanarQCMap, theta) -> np.ndarray:
    """Angle of ``H(e^{i theta})``, continuous in ``theta``."""
    return _uniform_periodic(H.boundary_psi, theta)


def boundary_map_inverse(H: PlanarQCMap, s) -> np.ndarray:
    """Angle ``theta`` with ``H(e^{i theta}) = e^{i s}``."""
    return _uniform_periodic(H.boundary_back, s)


# ---------------------------------------------------------------------------
# composed Riemann-Hilbert solution
# ---------------------------------------------------------------------------

@dataclass
class RegularRHSolution:
    F: RHSolution
    H: PlanarQCMap
    mu: BeltramiCoefficient
    report: ResidualReport
    pulled_angles: np.ndarray
    transported_lambda: np.ndarray = field(repr=False, default=None)
    transported_phi: np.ndarray = field(repr=False, default=None)

    def f(self, z):
        return self.F(self.H(z))

    __call__ = f

    def lattice_values(self, radius: float = 0.95) -> tuple[np.ndarray, np.ndarray]:
        """``f = F o H`` on lattice points with ``|z| <= radius`` (NaN elsewhere)."""
        Z = self.H.Z
        # H is only defined on the closed disk and F's series stops short of it
        w = np.abs(self.H.values)
        r_max = min(self.F.g.r_max, self.F.B.r_max)
        with np.errstate(invalid="ignore"):
            mask = (np.abs(Z) <= radius) & (w <= r_max)
        out = np.full(Z.shape, np.nan + 0j)
        out[mask] = self.F(self.H.values[mask])
        return Z, out


def _periodic_makima(samples, q, drift=0.0, pad=4):
    """C1 interpolation of grid samples that do not overshoot at jumps;
    ``samples[k + M] = samples[k] + drift``."""
    M = samples.size
    k = np.arange(-pad, M + pad)
    y = samples[k % M] + drift * np.floor_divide(k, M)
    f = Akima1DInterpolator(TWO_PI * k / M, y, method="makima")
    return f(np.mod(q, TWO_PI))


def _transport(H: PlanarQCMap, lam: UnimodularBV, phi: BoundaryFunction, M: int):
    """Tables of ``lambda o H^{-1}`` and ``phi o H^{-1}`` on the ``M``-grid."""
    s = TWO_PI * np.arange(M) / M
    back = H.boundary_back if H.boundary_back.size == M else boundary_map_inverse(H, s)
    arg = bv_argument(lam)
    Lam = np.exp(1j * _periodic_makima(arg.alpha, back, TWO_PI * arg.winding))
    Phi = _periodic_makima(phi.samples, back)
    return Lam, Phi


def rh_beltrami(mu: BeltramiCoefficient, lam: UnimodularBV, phi, tol: float = 1e-8,
                eps: float = 0.05, stages: int = 0, audit_count: int = 64,
                audit_tol: float = 1e-2) -> RegularRHSolution:
    """Solve ``Re(conj(lambda) f) = phi`` with ``f_zbar = mu f_z`` in the disk.

    The data are transported to the image disk of ``H``, an analytic
    problem is solved there, and ``f = F o H``.  The residual audit runs
    along nontangential probes in the image disk, which are the images of
    probes ending at ``H^{-1}`` of the audit angles; those pulled-back
    angles are stored alongside the report.
    """
    if not isinstance(phi, BoundaryFunction):
        phi = BoundaryFunction(np.asarray(phi, float))
    if phi.M != lam.M:
        raise ValueError("lambda and phi must share the grid")
    M = lam.M
    H = disk_normalize(solve_qc(mu, tol), M=M)
    Lam, Phi = _transport(H, lam, phi, M)
    F = rh_solve(UnimodularBV(Lam), BoundaryFunction(Phi), eps, stages, audit_count, audit_tol)
    pulled = np.mod(boundary_map_inverse(H, F.report.angles), TWO_PI)
    return RegularRHSolution(F, H, mu, F.report, pulled, Lam, Phi)


def _fd(values: np.ndarray, h: float):
    """Central differences ``(f_z, f_zbar)``; NaN on the outer ring."""
    fx = np.full(values.shape, np.nan + 0j)
    fy = np.full(values.shape, np.nan + 0j)
    fx[:, 1:-1] = (values[:, 2:] - values[:, :-2]) / (2 * h)
    fy[1:-1, :] = (values[2:, :] - values[:-2, :]) / (2 * h)
    return 0.5 * (fx - 1j * fy), 0.5 * (fx + 1j * fy)


def beltrami_residual(sol: RegularRHSolution, radius: float = 0.9) -> dict:
    """Finite-difference check of ``f_zbar = mu f_z`` inside ``|z| <= radius``.

    Also compares against the chain-rule bound
    ``|(F o H)_zbar - mu (F o H)_z| = |F'(H)| |H_zbar - mu H_z|``.
    """
    H = sol.H
    h = H.h
    Z, fv = sol.lattice_values(radius + 2 * h)
    fz, fzb = _fd(fv, h)
    Hz, Hzb = _fd(H.values, h)
    mask = np.abs(Z) <= radius
    mu = sol.mu.mu
    res = (fzb - mu * fz)[mask]
    hres = (Hzb - mu * Hz)[mask]
    w = H.values[mask]
    d = 1e-6
    dF = (sol.F(w + d) - sol.F(w - d)) / (2 * d)
    norm = lambda a: math.sqrt(float(np.sum(np.abs(a) ** 2)) * h * h)
    return {
        "radius": radius,
        "residual": norm(res),
        "fz_norm": norm(fz[mask]),
        "relative": norm(res) / norm(fz[mask]),
        "H_residual": norm(hres),
        "chain_rule_bound": float(np.max(np.abs(dF))) * norm(hres),
        "chain_rule_gap": norm(res - dF * hres),
    }


def regularity_audit(sol: RegularRHSolution, radius: float = 0.9, grid: int = 129,
                     triangles: int = 200, seed: int = 0) -> dict:
    """Jacobian signs of ``H``, zeros of ``F'`` and local injectivity of ``f``.

    Zeros of ``F'`` are counted cell by cell with the argument principle on
    a square grid over ``|w| <= radius``, so each zero is isolated to one
    cell.  Injectivity is spot-checked on small random triangles: a
    sense-preserving local homeomorphism keeps their orientation.
    """
    H = sol.H
    J = np.abs(H.h_z) ** 2 - np.abs(H.h_zbar) ** 2
    Z = H.Z
    mask = np.abs(Z) <= radius
    Jm = J[mask]

    s = np.linspace(-radius / math.sqrt(2), radius / math.sqrt(2), grid)
    W = s[None, :] + 1j * s[:, None]
    d = 1e-6
    dF = (sol.F.f(W + d) - sol.F.f(W - d)) / (2 * d)
    ang = np.angle(dF)

    def wrap(a):
        return (a + np.pi) % TWO_PI - np.pi

    turn = (wrap(ang[:-1, 1:] - ang[:-1, :-1]) + wrap(ang[1:, 1:] - ang[:-1, 1:])
            + wrap(ang[1:, :-1] - ang[1:, 1:]) + wrap(ang[:-1, :-1] - ang[1:, :-1]))
    zeros = np.rint(turn / TWO_PI).astype(int)

    rng = np.random.default_rng(seed)
    r = 0.8 * np.sqrt(rng.random(triangles))
    c = r * np.exp(1j * TWO_PI * rng.random(triangles))
    size = 0.01
    verts = c[:, None] + size * np.exp(1j * (TWO_PI * np.arange(3) / 3))[None, :]
    img = sol.f(verts)
    e1 = img[:, 1] - img[:, 0]
    e2 = img[:, 2] - img[:, 0]
    orient = (np.conj(e1) * e2).imag
    return {
        "jacobian_positive_fraction": float(np.mean(Jm > 0)),
        "jacobian_min": float(np.min(Jm)),
        "jacobian_nonpositive_points": int(np.sum(Jm <= 0)),
        "fprime_zero_count": int(np.sum(np.abs(zeros))),
        "fprime_zero_cells": [complex(W[j, i]) for j, i in zip(*np.nonzero(zeros))],
        "triangles": triangles,
        "orientation_preserved_fraction": float(np.mean(orient > 0)),
    }
