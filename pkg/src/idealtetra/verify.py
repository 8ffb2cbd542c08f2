"""Invariant suites run by ``idealtetra verify``.

Every suite is deterministic given its ``numpy.random.Generator`` and returns
a :class:`SuiteReport` listing each property checked, how many samples it
covered and the worst residual seen.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import exterior as ex
from . import minkowski as mk
from . import seidel as sd
from . import tetra as tt
from .lobachevsky import lobachevsky, lobachevsky_quadrature

# vertices of the fundamental domain in the (c, d) chart
_D1_CORNERS = np.array([[0.0, 0.0], [0.0, tt.SQRT3 / 3.0], [0.25, tt.SQRT3 / 12.0]])

SUITES = ("hodge", "gram", "lobachevsky", "roundtrip", "monotonicity", "extremal")


@dataclass
class Check:
    name: str
    passed: bool
    count: int
    worst: float
    limit: float | None = None


@dataclass
class SuiteReport:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, count, worst, limit=None, passed=None):
        if passed is None:
            passed = worst <= limit
        self.checks.append(Check(name, bool(passed), int(count), float(worst), limit))


# -- sampling -------------------------------------------------------------------


def _from_barycentric(w) -> tt.TriangleCoords:
    c, d = np.asarray(w) @ _D1_CORNERS
    return tt.plane_to_delta(tt.PlaneCoords(float(c), float(d)))


def delta1_grid(n_points: int = 200) -> list[tt.TriangleCoords]:
    """Interior points of ``Delta_1`` (``r < s < t < 1/2``) on a triangular lattice.

    Uses the smallest lattice with at least ``n_points`` strictly interior
    nodes and returns the first ``n_points`` of them.
    """
    k = 3
    while (k - 1) * (k - 2) // 2 < n_points:
        k += 1
    pts = []
    for i in range(1, k):
        for j in range(1, k - i):
            pts.append(_from_barycentric((i / k, j / k, (k - i - j) / k)))
    return pts[:n_points]


def random_delta1(rng: np.random.Generator, n: int, margin: float = 0.05) -> list[tt.TriangleCoords]:
    """Random points of ``Delta_1`` whose barycentric weights all exceed ``margin``."""
    out = []
    while len(out) < n:
        w = rng.dirichlet((1.0, 1.0, 1.0))
        if w.min() > margin:
            out.append(_from_barycentric(w))
    return out


def random_interior_s(rng: np.random.Generator, n: int, margin: float = 0.05) -> list[sd.SeidelCoords]:
    return [sd.forward(x) for x in random_delta1(rng, n, margin)]


def _random_multivector(rng, grade):
    return ex.MultiVector(grade, rng.standard_normal(len(ex.BLADES[grade])))


# -- suites ---------------------------------------------------------------------


def suite_hodge(rng: np.random.Generator, n: int = 1000) -> SuiteReport:
    rep = SuiteReport("hodge")
    sigma = ex.SIGMA
    omega = ex.VOLUME_ELEMENT
    w1 = w2 = w3 = w4 = w5 = 0.0
    for _ in range(n):
        k = int(rng.integers(0, 5))
        a, b = _random_multivector(rng, k), _random_multivector(rng, k)
        c = _random_multivector(rng, 4 - k)
        sign = (-1) ** (k * (4 - k))
        # a ^ *b = b ^ *a
        lhs = ex.wedge(a, ex.hodge_star(b))
        rhs = ex.wedge(b, ex.hodge_star(a))
        w1 = max(w1, float(np.max(np.abs(lhs.components - rhs.components))))
        # <a, b> = sigma * *(a ^ *b)
        w2 = max(w2, abs(ex.induced_inner(a, b) - sigma * float(ex.hodge_star(lhs))))
        # <a, *c> = (-1)^{k(4-k)} <*a, c>
        w3 = max(
            w3,
            abs(ex.induced_inner(a, ex.hodge_star(c)) - sign * ex.induced_inner(ex.hodge_star(a), c)),
        )
        # **a = (-1)^{k(4-k)} sigma a
        ss = ex.hodge_star(ex.hodge_star(a))
        w4 = max(w4, float(np.max(np.abs(ss.components - sign * sigma * a.components))))
        # defining identity x ^ *a = <x, a> omega
        x = _random_multivector(rng, k)
        lhs = ex.wedge(x, ex.hodge_star(a))
        w5 = max(w5, float(np.max(np.abs(lhs.components - ex.induced_inner(x, a) * omega.components))))
    rep.add("wedge-star symmetry", n, w1, 1e-12)
    rep.add("inner product via star", n, w2, 1e-12)
    rep.add("star adjointness", n, w3, 1e-12)
    rep.add("double star", n, w4, 1e-12)
    rep.add("defining identity", n, w5, 1e-12)
    exact = 0
    for k, blades in enumerate(ex.BLADES):
        for blade in blades:
            e = ex.MultiVector.blade(*(i + 1 for i in blade))
            ss = ex.hodge_star(ex.hodge_star(e))
            exact += int(np.array_equal(ss.components, (-1) ** (k * (4 - k)) * ex.SIGMA * e.components))
    rep.add("double star on basis blades (exact)", 16, 16 - exact, passed=exact == 16)
    return rep


def edge_angles(T: tt.LabelledTetrahedron) -> tuple[float, float, float]:
    """Dihedral angles at the edges 12, 13, 14 from the vertex formula."""
    v = list(T)
    return (
        ex.dihedral_angle(v[0], v[1], v[2], v[3]),
        ex.dihedral_angle(v[0], v[2], v[1], v[3]),
        ex.dihedral_angle(v[0], v[3], v[1], v[2]),
    )


def suite_gram(rng: np.random.Generator, n: int = 100) -> SuiteReport:
    rep = SuiteReport("gram")
    w_gram = w_coords = w_angle = w_polar = w_scale = 0.0
    for x in random_delta1(rng, n, margin=0.02):
        # random relabelling inside Delta, not only Delta_1
        x = tt.TriangleCoords(*rng.permutation(list(x)))
        T = tt.synthesize(x)
        g = mk.gram(list(T))
        w_gram = max(w_gram, float(np.max(np.abs(g - x.gram()))))
        y = tt.doubly_stochastic_coords(T)
        w_coords = max(w_coords, max(abs(a - b) for a, b in zip(x, y)))
        want = tt.angles_from_coords(x)
        got = edge_angles(T)
        w_angle = max(w_angle, max(abs(a - b) for a, b in zip(want, got)))
        v = list(T)
        w_polar = max(w_polar, abs(ex.dihedral_angle_polar(*v) - got[0]))
        scaled = tt.LabelledTetrahedron([vi * s for vi, s in zip(v, rng.uniform(-5, 5, 4))])
        y2 = tt.doubly_stochastic_coords(scaled)
        w_scale = max(w_scale, max(abs(a - b) for a, b in zip(y, y2)))
    rep.add("synthesized Gram pattern", n, w_gram, 1e-12)
    rep.add("doubly stochastic round trip", n, w_coords, 1e-10)
    rep.add("vertex formula vs coordinate angles", 3 * n, w_angle, 1e-9)
    rep.add("polar-point angle route", n, w_polar, 1e-9)
    rep.add("representative scale invariance", n, w_scale, 1e-12)
    return rep


def suite_lobachevsky(rng: np.random.Generator, n: int = 10_000, n_grid: int = 1000) -> SuiteReport:
    rep = SuiteReport("lobachevsky")
    x = rng.uniform(-10.0, 10.0, n)
    odd = float(np.max(np.abs(lobachevsky(x) + lobachevsky(-x))))
    per = float(np.max(np.abs(lobachevsky(x + math.pi) - lobachevsky(x))))
    rep.add("oddness", n, odd, 1e-12)
    rep.add("pi-periodicity", n, per, 1e-12)
    grid = np.linspace(0.0, math.pi, n_grid)
    fast = lobachevsky(grid)
    worst = max(abs(lobachevsky_quadrature(float(t), 1e-13) - f) for t, f in zip(grid, fast))
    rep.add("quadrature agreement", n_grid, worst, 1e-11)
    inner = grid[(grid > 1e-3) & (grid < math.pi - 1e-3) & (np.abs(grid - math.pi / 2) > 1e-3)]
    vals = lobachevsky(inner)
    bad = int(np.count_nonzero(np.sign(vals) != np.where(inner < math.pi / 2, 1.0, -1.0)))
    rep.add("sign structure", inner.size, bad, passed=bad == 0)
    return rep


def suite_roundtrip(rng: np.random.Generator, n_points: int = 200) -> SuiteReport:
    rep = SuiteReport("roundtrip")
    w_rt = w_cubic = w_res = w_ineq = 0.0
    for x in delta1_grid(n_points):
        sc = sd.forward(x)
        pc = sd.invert(sc)
        y = tt.canonicalize(tt.plane_to_delta(pc))
        z = sd.invert_via_cubic(sc)
        w_rt = max(w_rt, max(abs(a - b) for a, b in zip(x, y)))
        w_cubic = max(w_cubic, max(abs(a - b) for a, b in zip(y, z)))
        w_res = max(w_res, sd.plane_equations_residual(pc, sc))
    rep.add("forward / invert round trip", n_points, w_rt, 1e-9)
    rep.add("cubic root oracle", n_points, w_cubic, 1e-9)
    rep.add("plane-chart equations residual", n_points, w_res, 1e-10)
    n_ineq = 1000
    for _ in range(n_ineq):
        x = _from_barycentric(rng.dirichlet((1.0, 1.0, 1.0)))
        c, d = tt.delta_to_plane(x)
        alpha = (2 * tt.SQRT3 * d + 1) * (9 * c * c - (tt.SQRT3 * d - 1) ** 2) / 27
        omega = (3 * c * c + 3 * d * d + 2) / 6
        a0 = 6 * (1 - 3 * omega)
        b0 = 27 * alpha - 18 * omega + 7
        lhs = b0 * b0 / 4 + a0**3 / 27
        rhs = -27 * c * c * (3 * d * d - c * c) ** 2
        w_ineq = max(w_ineq, abs(lhs - rhs), lhs)
    rep.add("discriminant identity and sign", n_ineq, w_ineq, 1e-10)
    return rep


def chord_values(n_chords: int = 20) -> tuple[np.ndarray, np.ndarray]:
    """Fixed values for horizontal (omega) and vertical (alpha != 0) chords."""
    k = (np.arange(n_chords) + 0.5) / n_chords
    return 1.0 / 3.0 + k / 6.0, -k / 27.0


def central_difference(sc: sd.SeidelCoords, h: float = 1e-6) -> tuple[float, float]:
    a, w = sc
    da = (sd.volume((a + h, w)) - sd.volume((a - h, w))) / (2 * h)
    dw = (sd.volume((a, w + h)) - sd.volume((a, w - h))) / (2 * h)
    return da, dw


def suite_monotonicity(
    rng: np.random.Generator, n: int = 500, n_fd: int = 50, n_chords: int = 20, samples: int = 50
) -> SuiteReport:
    rep = SuiteReport("monotonicity")
    pts = random_interior_s(rng, n)
    derivs = [sd.volume_derivatives(p) for p in pts]
    max_da = max(d.d_alpha for d in derivs)
    min_dw = min(d.d_omega for d in derivs)
    rep.add("d vol / d alpha < 0 (max value)", n, max_da, passed=max_da < 0)
    rep.add("d vol / d omega > 0 (min value)", n, min_dw, passed=min_dw > 0)
    worst = 0.0
    for p, d in zip(pts[:n_fd], derivs[:n_fd]):
        fa, fw = central_difference(p)
        worst = max(worst, abs(fa - d.d_alpha) / abs(d.d_alpha), abs(fw - d.d_omega) / abs(d.d_omega))
    rep.add("finite-difference agreement (relative)", n_fd, worst, 1e-5)
    omegas, alphas = chord_values(n_chords)
    margin = math.inf
    for w in omegas:
        _, v = sd.sweep("omega", float(w), samples)
        margin = min(margin, float(np.min(v[:-1] - v[1:])))
    rep.add("decreasing along omega = const (min step)", n_chords, margin, passed=margin > 1e-12)
    margin = math.inf
    for a in alphas:
        _, v = sd.sweep("alpha", float(a), samples)
        margin = min(margin, float(np.min(v[1:] - v[:-1])))
    rep.add("increasing along alpha = const (min step)", n_chords, margin, passed=margin > 1e-12)
    return rep


def suite_extremal(rng: np.random.Generator, grid_n: int = 400) -> SuiteReport:
    rep = SuiteReport("extremal")
    res = sd.extremal_scan(grid_n)
    center = np.full(3, 1.0 / 3.0)
    d_per = float(np.max(np.abs(np.array(tuple(res.argmin_per)) - center)))
    d_det = float(np.max(np.abs(np.array(tuple(res.argmin_det)) - center)))
    rep.add("permanent argmin distance to centre", 1, d_per, 1e-4)
    rep.add("determinant argmin distance to centre", 1, d_det, 1e-4)
    rep.add("min permanent - 1/9", 1, abs(res.min_per - 1.0 / 9.0), 1e-6)
    rep.add("min determinant + 1/27", 1, abs(res.min_det + 1.0 / 27.0), 1e-6)
    rep.add(
        "determinant >= 0 off the triangle (min value)",
        res.n_outside,
        res.min_det_outside,
        passed=res.min_det_outside >= 0.0,
    )
    return rep


_RUNNERS = {
    "hodge": suite_hodge,
    "gram": suite_gram,
    "lobachevsky": suite_lobachevsky,
    "roundtrip": suite_roundtrip,
    "monotonicity": suite_monotonicity,
    "extremal": suite_extremal,
}


def run(suite: str, seed: int = 0) -> list[SuiteReport]:
    """Run one suite, or every suite for ``"all"``, each with its own seeded generator."""
    names = SUITES if suite == "all" else (suite,)
    reports = []
    for name in names:
        if name not in _RUNNERS:
            raise KeyError(name)
        reports.append(_RUNNERS[name](np.random.default_rng(seed)))
    return reports
