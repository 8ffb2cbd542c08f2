"""Determinant / permanent coordinates on the space of ideal tetrahedra.

For ``(r, s, t)`` in ``Delta`` the doubly stochastic Gram matrix has
determinant ``alpha = -(r+s+t)(-r+s+t)(r-s+t)(r+s-t)`` and permanent
``omega**2`` with ``omega = r**2 + s**2 + t**2``.  The pair ``(alpha, omega)``
ranges over a curvilinear triangle ``S`` with corners ``(-1/27, 1/3)``
(regular tetrahedron), ``(0, 3/8)`` and ``(0, 1/2)``, and determines the
tetrahedron up to relabelling.  The volume is decreasing in ``alpha`` and
increasing in ``omega``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import optimize

from . import _backend
from .errors import (
    BoundaryPoint,
    ComplexRoots,
    DomainError,
    EmptyIntersection,
    OutsideRegion,
)
from .lobachevsky import lobachevsky
from .tetra import (
    SQRT3,
    DihedralAngles,
    PlaneCoords,
    TriangleCoords,
    minus_det,
    plane_to_delta,
)

#: Boundary tolerance for membership in ``S``.
REGION_TOL = 1e-12
#: Arguments of arccos within this distance of +-1 are clamped.
KAPPA_CLAMP_TOL = 1e-9
#: Inside this distance of the regular corner, invert returns (0, 0).
CORNER_RADIUS = 1e-10

REGULAR = (-1.0 / 27.0, 1.0 / 3.0)
FLAT_REGULAR = (0.0, 3.0 / 8.0)
DOUBLE_PAIR = (0.0, 0.5)

#: Volume of the regular ideal tetrahedron, ``3 L(pi/3)``.
MAX_VOLUME = 3.0 * lobachevsky(math.pi / 3)


@dataclass(frozen=True)
class SeidelCoords:
    """``alpha = det G`` and ``omega = sqrt(per G)`` (the positive root)."""

    alpha: float
    omega: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.omega)):
            raise DomainError("coordinates must be finite")
        if self.omega < 0.0:
            raise DomainError("omega is the positive square root of the permanent")

    def __iter__(self):
        return iter((self.alpha, self.omega))


@dataclass(frozen=True)
class VolumeDerivatives:
    d_alpha: float
    d_omega: float


@dataclass(frozen=True)
class RegionS:
    """Boundary description of ``S``.

    ``S`` is bounded below in ``alpha`` by ``f1`` (curve c1, isosceles) and
    above by ``f2`` (curve c2, isosceles) for ``omega <= 3/8`` or by
    ``alpha = 0`` (curve c3, degenerate) for ``omega >= 3/8``.
    """

    f1: Callable[[float], float]
    f2: Callable[[float], float]
    corners: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class ExtremalResult:
    argmin_per: TriangleCoords
    min_per: float
    argmin_det: TriangleCoords
    min_det: float
    n_outside: int
    min_det_outside: float


def _as_seidel(sc) -> SeidelCoords:
    return sc if isinstance(sc, SeidelCoords) else SeidelCoords(*sc)


def forward(coords: TriangleCoords) -> SeidelCoords:
    """Determinant and square root of the permanent of the Gram matrix of ``coords``."""
    if not isinstance(coords, TriangleCoords):
        coords = TriangleCoords(*coords)
    r, s, t = coords
    return SeidelCoords(-minus_det(r, s, t), r * r + s * s + t * t)


# -- region S ---------------------------------------------------------------


def f1(y):
    """Lower boundary ``alpha = f1(omega)`` on ``[1/3, 1/2]``."""
    u = np.maximum(6.0 * np.asarray(y, dtype=float) - 2.0, 0.0)
    val = -(2.0 * u**1.5 - 3.0 * u + 1.0) / 27.0
    return float(val) if np.ndim(val) == 0 else val


def f2(y):
    """Upper boundary ``alpha = f2(omega)`` on ``[1/3, 3/8]``."""
    u = np.maximum(6.0 * np.asarray(y, dtype=float) - 2.0, 0.0)
    val = -(-2.0 * u**1.5 - 3.0 * u + 1.0) / 27.0
    return float(val) if np.ndim(val) == 0 else val


def region_boundary() -> RegionS:
    return RegionS(f1=f1, f2=f2, corners=(REGULAR, FLAT_REGULAR, DOUBLE_PAIR))


def region_contains(sc, tol: float = REGION_TOL) -> bool:
    """Membership in ``S``, with boundary tolerance ``tol``."""
    alpha, omega = sc
    return bool(region_contains_array(alpha, omega, tol))


def region_contains_array(alpha, omega, tol: float = REGION_TOL) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=float)
    omega = np.asarray(omega, dtype=float)
    y = np.clip(omega, 1.0 / 3.0, 0.5)
    lower = f1(y)
    upper = np.where(y <= 0.375, f2(np.minimum(y, 0.375)), 0.0)
    inside = (
        (omega >= 1.0 / 3.0 - tol)
        & (omega <= 0.5 + tol)
        & (alpha >= lower - tol)
        & (alpha <= upper + tol)
    )
    return inside


def on_boundary(sc, tol: float = REGION_TOL) -> bool:
    """Whether ``sc`` lies within ``tol`` of one of the curves c1, c2, c3."""
    alpha, omega = sc
    y = min(max(omega, 1.0 / 3.0), 0.5)
    if abs(alpha - f1(y)) <= tol:
        return True
    if y <= 0.375 and abs(alpha - f2(y)) <= tol:
        return True
    return y >= 0.375 and abs(alpha) <= tol


def alpha_range(omega: float) -> tuple[float, float]:
    """Intersection of the horizontal line ``omega = const`` with ``S``."""
    if not 1.0 / 3.0 <= omega <= 0.5:
        raise EmptyIntersection(f"omega = {omega!r} misses S (needs 1/3 <= omega <= 1/2)")
    upper = f2(omega) if omega <= 0.375 else 0.0
    return f1(omega), upper


def omega_range(alpha: float) -> tuple[float, float]:
    """Intersection of the vertical line ``alpha = const`` with ``S``.

    Inverts ``f2`` and ``f1`` through ``w = sqrt(6 omega - 2)``:
    ``f1 = -(w-1)^2 (2w+1) / 27`` and ``f2 = (w+1)^2 (2w-1) / 27``.
    """
    if not -1.0 / 27.0 <= alpha <= 0.0:
        raise EmptyIntersection(f"alpha = {alpha!r} misses S (needs -1/27 <= alpha <= 0)")
    m = -27.0 * alpha

    def solve(fn, a, b):
        fa, fb = fn(a), fn(b)
        if fa == 0.0:
            return a
        if fb == 0.0:
            return b
        return optimize.brentq(fn, a, b, xtol=1e-16, rtol=4 * np.finfo(float).eps)

    w_low = solve(lambda w: (w + 1.0) ** 2 * (2.0 * w - 1.0) + m, 0.0, 0.5)
    w_high = solve(lambda w: (w - 1.0) ** 2 * (2.0 * w + 1.0) - m, 0.0, 1.0)
    return (w_low**2 + 2.0) / 6.0, (w_high**2 + 2.0) / 6.0


def sweep(axis: str, value: float, samples: int) -> tuple[np.ndarray, np.ndarray]:
    """Volume along the chord of ``S`` where ``axis`` (``"alpha"`` or ``"omega"``) is fixed.

    Returns the varying coordinate, spanning the whole chord from endpoint to
    endpoint, and the volume at each sample.
    """
    if samples < 2:
        raise DomainError("a sweep needs at least 2 samples")
    if axis == "omega":
        lo, hi = alpha_range(value)
        xs = np.linspace(lo, hi, samples)
        vols = volume_array(xs, value)
    elif axis == "alpha":
        lo, hi = omega_range(value)
        xs = np.linspace(lo, hi, samples)
        vols = volume_array(value, xs)
    else:
        raise DomainError(f"unknown axis {axis!r}; use 'alpha' or 'omega'")
    xs[0], xs[-1] = lo, hi
    return xs, vols


# -- inversion ----------------------------------------------------------------


def _check_region(sc: SeidelCoords, tol: float):
    if not region_contains(sc, tol):
        raise OutsideRegion(f"({sc.alpha!r}, {sc.omega!r}) is not in S")


def _kappa_arg(alpha, omega):
    return (-27.0 * alpha + 18.0 * omega - 7.0) / (
        4.0 * math.sqrt(2.0) * (3.0 * omega - 1.0) ** 1.5
    )


def invert(sc, tol: float = REGION_TOL) -> PlaneCoords:
    """The unique ``(c, d)`` with ``c >= 0`` and ``d >= c / sqrt(3)`` mapping to ``sc``.

    Solves the cubic for ``2 sqrt(3) d`` by the trigonometric method and
    keeps the root selected by ``k = 0``, which is the one in the
    fundamental domain ``r <= s <= t``.

    Within ``CORNER_RADIUS`` of a corner of ``S`` the exact corner value is
    returned.  Along the curves c1 and c3 the arccos argument is +-1, where
    rounding of order 1e-16 in the input moves ``kappa`` by about 1e-8, so
    boundary points are accurate to roughly 1e-9 rather than to rounding.
    Closer than about 1e-5 to that corner the angle ``kappa`` loses digits
    (the cubic's discriminant scale shrinks like ``(3 omega - 1)^1.5``), but
    the radius ``sqrt(2 omega - 2/3)`` shrinks too, so ``(c, d)`` stays
    accurate in absolute terms.
    """
    sc = _as_seidel(sc)
    _check_region(sc, tol)
    alpha, omega = sc
    if math.hypot(alpha - REGULAR[0], omega - REGULAR[1]) < CORNER_RADIUS:
        return PlaneCoords(0.0, 0.0)
    # the other two corners sit where arccos is worst conditioned
    if math.hypot(alpha - DOUBLE_PAIR[0], omega - DOUBLE_PAIR[1]) < CORNER_RADIUS:
        return PlaneCoords(0.0, SQRT3 / 3.0)
    if math.hypot(alpha - FLAT_REGULAR[0], omega - FLAT_REGULAR[1]) < CORNER_RADIUS:
        return PlaneCoords(0.25, SQRT3 / 12.0)
    arg = _kappa_arg(alpha, omega)
    # sc is in S, so |arg| <= 1 analytically and any excess is rounding
    arg = min(1.0, max(-1.0, arg))
    kappa = math.acos(arg) / 3.0
    radius = math.sqrt(max(2.0 * omega - 2.0 / 3.0, 0.0))
    return _snap_to_chart(radius * math.sin(kappa), radius * math.cos(kappa))


def _snap_to_chart(c: float, d: float) -> PlaneCoords:
    # kappa is sqrt-sensitive where the arccos argument is +-1, so points of
    # c3 can land ~1e-8 past the edge t = 1/2 of the chart; project back.
    # kappa in [0, pi/3] keeps (c, d) in the fundamental domain, where this
    # edge (sqrt(3) c + d = sqrt(3)/3) is the only one that can be crossed.
    excess = (SQRT3 * c + d - SQRT3 / 3.0) / 2.0
    if excess > 0.0:
        c -= excess * SQRT3 / 2.0
        d -= excess / 2.0
        if c < 0.0:
            c, d = 0.0, SQRT3 / 3.0
    return PlaneCoords(c, d)


def invert_array(alpha, omega) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`invert` without the membership check."""
    alpha = np.asarray(alpha, dtype=float)
    omega = np.asarray(omega, dtype=float)
    u = np.maximum(3.0 * omega - 1.0, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        arg = (-27.0 * alpha + 18.0 * omega - 7.0) / (4.0 * math.sqrt(2.0) * u**1.5)
    corner = np.hypot(alpha - REGULAR[0], omega - REGULAR[1]) < CORNER_RADIUS
    arg = np.where(corner, 1.0, np.clip(arg, -1.0, 1.0))
    kappa = np.arccos(arg) / 3.0
    radius = np.sqrt(2.0 * u / 3.0)
    c, d = radius * np.sin(kappa), radius * np.cos(kappa)
    excess = np.maximum((SQRT3 * c + d - SQRT3 / 3.0) / 2.0, 0.0)
    return np.maximum(c - excess * SQRT3 / 2.0, 0.0), d - excess / 2.0


def invert_via_cubic(sc, tol: float = 1e-14) -> TriangleCoords:
    """Sorted roots of ``w^3 - w^2 + (1 - omega)/2 w - (alpha - 2 omega + 1)/8``.

    The roots are bracketed between the two critical points of the cubic and
    refined by Brent's method.  When a critical value vanishes (to ``tol``)
    the corresponding root is double and the third follows from the sum of
    roots being 1.

    Raises:
        ComplexRoots: the cubic has a complex pair or a negative root.
    """
    sc = _as_seidel(sc)
    alpha, omega = sc
    e1 = (1.0 - omega) / 2.0
    e3 = (alpha - 2.0 * omega + 1.0) / 8.0

    def p(w):
        return ((w - 1.0) * w + e1) * w - e3

    disc = 1.0 - 3.0 * e1
    if disc < -tol:
        raise ComplexRoots(f"({alpha!r}, {omega!r}): the cubic has no critical points")
    root = math.sqrt(max(disc, 0.0))
    w_minus, w_plus = (1.0 - root) / 3.0, (1.0 + root) / 3.0
    p_max, p_min = p(w_minus), p(w_plus)
    if p_max < -tol or p_min > tol:
        raise ComplexRoots(f"({alpha!r}, {omega!r}): the cubic has a complex pair")
    if p_max <= 0.0:
        r = s = w_minus
        t = 1.0 - 2.0 * w_minus
    elif p_min >= 0.0:
        s = t = w_plus
        r = 1.0 - 2.0 * w_plus
    else:
        kw = dict(xtol=1e-16, rtol=4 * np.finfo(float).eps, maxiter=200)
        r = optimize.brentq(p, -1.0, w_minus, **kw)
        s = optimize.brentq(p, w_minus, w_plus, **kw)
        t = optimize.brentq(p, w_plus, 2.0, **kw)
    r, s, t = sorted((r, s, t))
    if r < -1e-9:
        raise ComplexRoots(f"({alpha!r}, {omega!r}): negative root {r!r}")
    return TriangleCoords.normalized(max(r, 0.0), s, t)


def plane_equations_residual(pc: PlaneCoords, sc) -> float:
    """Largest residual of the two equations expressing ``(alpha, omega)`` in ``(c, d)``."""
    c, d = pc
    alpha, omega = _as_seidel(sc)
    a_res = (2 * SQRT3 * d + 1) * (9 * c * c - (SQRT3 * d - 1) ** 2) / 27 - alpha
    w_res = (3 * c * c + 3 * d * d + 2) / 6 - omega
    return max(abs(a_res), abs(w_res))


# -- volume -------------------------------------------------------------------


def volume_from_angles(angles: DihedralAngles) -> float:
    """Milnor's formula ``L(theta1) + L(theta2) + L(theta3)``."""
    th1, th2, th3 = angles
    return lobachevsky(th1) + lobachevsky(th2) + lobachevsky(th3)


def volume(sc, tol: float = REGION_TOL) -> float:
    """Volume of the ideal tetrahedron with coordinates ``sc`` in ``S``.

    The triangle area entering the angles is taken from ``alpha`` directly,
    so degenerate tetrahedra (``alpha = 0``) get exactly zero volume.
    """
    sc = _as_seidel(sc)
    _check_region(sc, tol)
    alpha, omega = sc
    if abs(alpha - DOUBLE_PAIR[0]) <= tol and abs(omega - DOUBLE_PAIR[1]) <= tol:
        return 0.0
    rst = plane_to_delta(invert(sc, tol))
    if rst.is_vertex():
        return 0.0
    r, s, t = rst
    return _backend.ideal_volume(r, s, t, math.sqrt(max(-alpha, 0.0)))


def volume_array(alpha, omega) -> np.ndarray:
    """Vectorised :func:`volume`; points outside ``S`` give ``nan``."""
    alpha, omega = np.broadcast_arrays(
        np.asarray(alpha, dtype=float), np.asarray(omega, dtype=float)
    )
    inside = region_contains_array(alpha, omega)
    c, d = invert_array(alpha, omega)
    r = np.maximum((1.0 - SQRT3 * d) / 3.0, 0.0)
    s = (2.0 - 3.0 * c + SQRT3 * d) / 6.0
    t = (2.0 + 3.0 * c + SQRT3 * d) / 6.0
    k = np.sqrt(np.maximum(-alpha, 0.0))
    vertex = r <= 1e-12
    with np.errstate(divide="ignore", invalid="ignore"):
        vol = _backend.ideal_volume_array(r, s, t, k)
    vol = np.where(vertex, 0.0, vol)
    return np.where(inside, vol, np.nan)


def volume_from_coords(coords: TriangleCoords) -> float:
    """Volume straight from ``(r, s, t)``, without passing through ``S``."""
    if not isinstance(coords, TriangleCoords):
        coords = TriangleCoords(*coords)
    if coords.is_vertex():
        return 0.0
    r, s, t = coords
    return _backend.ideal_volume(r, s, t, math.sqrt(max(minus_det(r, s, t), 0.0)))


def volume_derivatives(sc, tol: float = REGION_TOL) -> VolumeDerivatives:
    """Closed-form partial derivatives of the volume on the interior of ``S``.

    Raises:
        BoundaryPoint: ``sc`` is on c1, c2 or c3, where the formulas are singular.
    """
    sc = _as_seidel(sc)
    _check_region(sc, tol)
    if on_boundary(sc, tol):
        raise BoundaryPoint(f"({sc.alpha!r}, {sc.omega!r}) lies on the boundary of S")
    alpha = sc.alpha
    c, d = invert(sc, tol)
    r, s, t = plane_to_delta(PlaneCoords(c, d))
    q = 3 * d * d - c * c
    if c <= 0.0 or q <= 0.0 or alpha >= 0.0 or min(r, s, t) <= 0.0:
        raise BoundaryPoint(f"({sc.alpha!r}, {sc.omega!r}) is numerically on the boundary")
    m = c * (3 * d - SQRT3) * (21 * d * d + 4 * SQRT3 * d + 9 * c * c - 2)
    n = SQRT3 * (
        -27 * c**4
        + 9 * c * c * (3 * d * d + SQRT3 * d + 1)
        + d * (18 * d**3 + 9 * SQRT3 * d * d - 9 * d - 2 * SQRT3)
    )
    p = 2 * c * (SQRT3 * d - 1)
    qq = -3 * c * c + d * (3 * d + 2 * SQRT3)
    log_st_r2 = math.log(s * t / (r * r))
    log_t_s = math.log(t / s)
    root = math.sqrt(-alpha)
    rst = r * s * t
    d_alpha = SQRT3 / (648 * c * q * rst * root) * (m * log_st_r2 + n * log_t_s)
    d_omega = root / (12 * c * q * rst) * (p * log_st_r2 + qq * log_t_s)
    return VolumeDerivatives(d_alpha, d_omega)


# -- the positivity kernel ------------------------------------------------------


def kprime(a: float, b: float) -> float:
    """``(a+b)(a-1) log(a+b) - a(a+b-1) log(a)`` for ``a > 1``, ``0 < b < 1``."""
    if not (a > 1.0 and 0.0 < b < 1.0):
        raise DomainError(f"kprime needs a > 1 and 0 < b < 1, got a={a!r}, b={b!r}")
    return (a + b) * (a - 1.0) * math.log(a + b) - a * (a + b - 1.0) * math.log(a)


def kprime_series(a, b, rel_tol: float = 1e-17, max_terms: int = 200_000):
    """``(a-1)(a+b-1) sum_n (x^(n-1) - y^(n-1)) / n`` with ``x = (a+b-1)/(a+b)``, ``y = (a-1)/a``.

    Accepts arrays; summation stops once every remaining term is below
    ``rel_tol`` relative to the partial sum.
    """
    a, b = np.broadcast_arrays(np.asarray(a, dtype=float), np.asarray(b, dtype=float))
    x = (a + b - 1.0) / (a + b)
    y = (a - 1.0) / a
    total = np.zeros_like(x)
    xp = np.ones_like(x)
    yp = np.ones_like(y)
    for n in range(1, max_terms + 1):
        term = (xp - yp) / n
        total += term
        xp = xp * x
        yp = yp * y
        # remaining tail is bounded by x^n / (n (1 - x))
        if np.all(xp / (n * (1.0 - x)) <= rel_tol * np.abs(total)):
            break
    val = (a - 1.0) * (a + b - 1.0) * total
    return float(val) if val.ndim == 0 else val


# -- extremal matrices ----------------------------------------------------------


def permanent_z4(r, s, t):
    """Permanent of the symmetric doubly stochastic zero-diagonal 4x4 matrix."""
    return (r * r + s * s + t * t) ** 2


def determinant_z4(r, s, t):
    return -(r + s + t) * (-r + s + t) * (r - s + t) * (r + s - t)


def _local_refine(fn, r0, s0, h0, levels=14, m=21):
    r_best, s_best = r0, s0
    h = h0
    for _ in range(levels):
        offs = np.linspace(-h, h, m)
        rr, ss = np.meshgrid(r_best + offs, s_best + offs, indexing="ij")
        tt = 1.0 - rr - ss
        ok = (rr >= 0) & (ss >= 0) & (tt >= 0)
        vals = np.where(ok, fn(rr, ss, tt), np.inf)
        i = np.unravel_index(np.argmin(vals), vals.shape)
        r_best, s_best = float(rr[i]), float(ss[i])
        h /= 5.0
    t_best = 1.0 - r_best - s_best
    return (r_best, s_best, t_best), float(fn(r_best, s_best, t_best))


def extremal_scan(grid_n: int) -> ExtremalResult:
    """Brute-force minima of permanent and determinant over the simplex.

    The simplex ``r + s + t = 1, r, s, t >= 0`` parametrises every symmetric
    doubly stochastic 4x4 matrix with zero diagonal.  A barycentric grid of
    step ``1/grid_n`` is scanned, then the best cell is refined locally.  Also
    reports grid points violating the triangle inequalities and the smallest
    determinant among them.
    """
    if grid_n < 10:
        raise DomainError("grid_n must be at least 10")
    i, j = np.meshgrid(np.arange(grid_n + 1), np.arange(grid_n + 1), indexing="ij")
    keep = i + j <= grid_n
    r = i[keep] / grid_n
    s = j[keep] / grid_n
    t = (grid_n - i[keep] - j[keep]) / grid_n
    per = permanent_z4(r, s, t)
    det = determinant_z4(r, s, t)
    outside = (r > s + t) | (s > r + t) | (t > r + s)
    results = []
    for fn, vals in ((permanent_z4, per), (determinant_z4, det)):
        k = int(np.argmin(vals))
        point, value = _local_refine(fn, r[k], s[k], 1.0 / grid_n)
        results.append((TriangleCoords.normalized(*point), value))
    return ExtremalResult(
        argmin_per=results[0][0],
        min_per=results[0][1],
        argmin_det=results[1][0],
        min_det=results[1][1],
        n_outside=int(np.count_nonzero(outside)),
        min_det_outside=float(det[outside].min()) if outside.any() else math.inf,
    )
