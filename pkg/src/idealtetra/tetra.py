"""Labelled ideal tetrahedra and their doubly stochastic Gram coordinates.

A labelled ideal tetrahedron admitting a doubly stochastic Gram matrix has a
unique one, of the form::

    [[0, r, s, t],
     [r, 0, t, s],
     [s, t, 0, r],
     [t, s, r, 0]]

with ``(r, s, t)`` in the triangle ``Delta`` (``r + s + t = 1`` and the
triangle inequalities).  ``Delta`` is also charted by planar coordinates
``(c, d)`` centred at the regular tetrahedron ``(1/3, 1/3, 1/3)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import minkowski as mk
from .errors import (
    CoincidentVertices,
    DeltaVertex,
    DomainError,
    Inadmissible,
    NotIdeal,
    OutOfChart,
    SignObstruction,
    ZeroCoordinate,
)

#: Tolerance on ``r + s + t = 1`` and on the triangle inequalities.
COORD_TOL = 1e-12

SQRT3 = math.sqrt(3.0)
DELTA_VERTICES = ((0.0, 0.5, 0.5), (0.5, 0.0, 0.5), (0.5, 0.5, 0.0))

#: Relabellings that leave the doubly stochastic Gram matrix unchanged.
KLEIN_FOUR = ((0, 1, 2, 3), (1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))


@dataclass(frozen=True)
class TriangleCoords:
    """A point ``(r, s, t)`` of ``Delta``."""

    r: float
    s: float
    t: float

    def __post_init__(self):
        r, s, t = self.r, self.s, self.t
        if not all(math.isfinite(x) for x in (r, s, t)):
            raise OutOfChart("coordinates must be finite")
        if min(r, s, t) < -COORD_TOL:
            raise OutOfChart(f"negative coordinate in {(r, s, t)}")
        if abs(r + s + t - 1.0) > COORD_TOL:
            raise OutOfChart(f"coordinates {(r, s, t)} do not sum to 1")
        if r > s + t + COORD_TOL or s > t + r + COORD_TOL or t > r + s + COORD_TOL:
            raise OutOfChart(f"{(r, s, t)} violates a triangle inequality")

    @classmethod
    def normalized(cls, r: float, s: float, t: float) -> TriangleCoords:
        """Scale a positive triple onto ``r + s + t = 1``."""
        total = r + s + t
        if not total > 0.0:
            raise OutOfChart("coordinates must have a positive sum")
        return cls(r / total, s / total, t / total)

    def __iter__(self):
        return iter((self.r, self.s, self.t))

    def is_vertex(self, tol: float = COORD_TOL) -> bool:
        return any(
            max(abs(a - b) for a, b in zip(self, v)) <= tol for v in DELTA_VERTICES
        )

    def is_boundary(self, tol: float = COORD_TOL) -> bool:
        r, s, t = self
        return min(s + t - r, t + r - s, r + s - t) <= tol

    def gram(self) -> np.ndarray:
        r, s, t = self
        return np.array(
            [[0.0, r, s, t], [r, 0.0, t, s], [s, t, 0.0, r], [t, s, r, 0.0]]
        )


@dataclass(frozen=True)
class PlaneCoords:
    """A point ``(c, d)`` of the centred equilateral triangle chart."""

    c: float
    d: float

    def __post_init__(self):
        c, d = self.c, self.d
        if not (math.isfinite(c) and math.isfinite(d)):
            raise OutOfChart("coordinates must be finite")
        if (
            d < -SQRT3 / 6 - COORD_TOL
            or d > -SQRT3 * c + SQRT3 / 3 + COORD_TOL
            or d > SQRT3 * c + SQRT3 / 3 + COORD_TOL
        ):
            raise OutOfChart(f"{(c, d)} lies outside the chart")

    def __iter__(self):
        return iter((self.c, self.d))


@dataclass(frozen=True)
class DihedralAngles:
    theta1: float
    theta2: float
    theta3: float

    def __iter__(self):
        return iter((self.theta1, self.theta2, self.theta3))


class LabelledTetrahedron:
    """Four ideal points given by representatives, in order."""

    __slots__ = ("vertices",)

    def __init__(self, vertices, tol: float = mk.CLASSIFY_TOL):
        vs = np.array([mk.vector(v) for v in vertices])
        if vs.shape != (4, 4):
            raise DomainError("a tetrahedron needs exactly four vertices")
        for i, v in enumerate(vs):
            if mk.classify(v, tol) is not mk.PointClass.NULL:
                raise NotIdeal(f"vertex {i + 1} is not an ideal point")
        vs.flags.writeable = False
        self.vertices = vs

    def __iter__(self):
        return iter(self.vertices)

    def __getitem__(self, i):
        return self.vertices[i]

    def gram(self) -> np.ndarray:
        return mk.gram(self.vertices)

    def __repr__(self):
        return f"LabelledTetrahedron({self.vertices.tolist()!r})"


def _coincidences(T: LabelledTetrahedron, tol: float) -> set[tuple[int, int]]:
    return {
        (i, j)
        for i, j in itertools.combinations(range(4), 2)
        if mk.projectively_equal(T[i], T[j], tol)
    }


def sign_normalize(T: LabelledTetrahedron, tol: float = mk.CLASSIFY_TOL) -> LabelledTetrahedron:
    """Rechoose representative signs so that every ``<v_i, v_j>`` (i != j) is positive."""
    pairs = _coincidences(T, tol)
    if pairs:
        i, j = min(pairs)
        raise CoincidentVertices(f"vertices {i + 1} and {j + 1} coincide")
    vs = np.array(T.vertices)
    for i in range(1, 4):
        if mk.inner(vs[0], vs[i]) < 0.0:
            vs[i] = -vs[i]
    g = mk.gram(vs)
    if np.any(g[np.triu_indices(4, 1)] <= 0.0):
        raise SignObstruction("no sign choice makes the Gram matrix positive")
    return LabelledTetrahedron(vs, tol)


_PATTERN_COORDS = {
    frozenset({(0, 1), (2, 3)}): TriangleCoords(0.0, 0.5, 0.5),
    frozenset({(0, 2), (1, 3)}): TriangleCoords(0.5, 0.0, 0.5),
    frozenset({(0, 3), (1, 2)}): TriangleCoords(0.5, 0.5, 0.0),
}


def doubly_stochastic_coords(
    T: LabelledTetrahedron, tol: float = mk.CLASSIFY_TOL
) -> TriangleCoords:
    """The triple ``(r, s, t)`` of the unique doubly stochastic Gram matrix of ``T``.

    After sign normalisation the triple is proportional to
    ``(sqrt(g12 g34), sqrt(g13 g24), sqrt(g14 g23))``.  Tetrahedra whose
    vertices coincide in pairs as ``(v, v, v', v')``, ``(v, v', v, v')`` or
    ``(v, v', v', v)`` map to the vertices of ``Delta``.

    Raises:
        Inadmissible: exactly two vertices coincide, or at least three do.
    """
    pairs = _coincidences(T, tol)
    if pairs:
        try:
            return _PATTERN_COORDS[frozenset(pairs)]
        except KeyError:
            raise Inadmissible(
                "tetrahedra with exactly two, or three or more, coinciding "
                f"vertices have no doubly stochastic Gram matrix (coincident pairs: "
                f"{sorted((i + 1, j + 1) for i, j in pairs)})"
            ) from None
    g = sign_normalize(T, tol).gram()
    r = math.sqrt(g[0, 1] * g[2, 3])
    s = math.sqrt(g[0, 2] * g[1, 3])
    t = math.sqrt(g[0, 3] * g[1, 2])
    total = r + s + t
    r, s, t = r / total, s / total, t / total
    # the Gram form guarantees the triangle inequalities; clip rounding overshoot
    return TriangleCoords(*_clip_to_delta(r, s, t))


def _clip_to_delta(r, s, t):
    r, s, t = min(r, 0.5), min(s, 0.5), min(t, 0.5)
    total = r + s + t
    return r / total, s / total, t / total


def synthesize(coords: TriangleCoords) -> LabelledTetrahedron:
    """Explicit vertices whose Gram matrix is the doubly stochastic matrix of ``coords``.

    Raises:
        DeltaVertex: ``coords`` is a vertex of ``Delta``.
        ZeroCoordinate: a coordinate vanishes (the formulas divide by it).
    """
    if not isinstance(coords, TriangleCoords):
        coords = TriangleCoords(*coords)
    if coords.is_vertex():
        raise DeltaVertex(f"{tuple(coords)} is a vertex of Delta")
    r, s, t = coords
    if min(r, s, t) <= 0.0:
        raise ZeroCoordinate(f"synthesis needs positive coordinates, got {tuple(coords)}")
    # -det G = (r+s+t)(-r+s+t)(r-s+t)(r+s-t); zero on the boundary of Delta
    mdet = max(minus_det(r, s, t), 0.0)
    v1 = np.array([1.0, 1.0, 0.0, 0.0])
    v2 = np.array([r / 2, -r / 2, 0.0, 0.0])
    v3 = np.array([t / r + s / 2, t / r - s / 2, math.sqrt(2 * s * t / r), 0.0])
    v4 = np.array(
        [
            s / r + t / 2,
            s / r - t / 2,
            (-r * r + s * s + t * t) / math.sqrt(2 * r * s * t),
            math.sqrt(mdet / (2 * r * s * t)),
        ]
    )
    return LabelledTetrahedron([v1, v2, v3, v4])


def delta_to_plane(coords: TriangleCoords) -> PlaneCoords:
    if not isinstance(coords, TriangleCoords):
        coords = TriangleCoords(*coords)
    r, s, t = coords
    return PlaneCoords(t - s, (1.0 - 3.0 * r) / SQRT3)


def plane_to_delta(pc: PlaneCoords) -> TriangleCoords:
    if not isinstance(pc, PlaneCoords):
        pc = PlaneCoords(*pc)
    c, d = pc
    r = (1.0 - SQRT3 * d) / 3.0
    s = (2.0 - 3.0 * c + SQRT3 * d) / 6.0
    t = (2.0 + 3.0 * c + SQRT3 * d) / 6.0
    # chart membership is checked with tolerance; snap rounding residue to 0
    r, s, t = (0.0 if x < 1e-15 else x for x in (r, s, t))
    return TriangleCoords(r, s, t)


def canonicalize(coords: TriangleCoords) -> TriangleCoords:
    """Representative of the orbit under permutations of coordinates with ``r <= s <= t``."""
    return TriangleCoords(*sorted(coords))


def permute_vertices(T: LabelledTetrahedron, p) -> LabelledTetrahedron:
    """Relabel: vertex ``i`` of the result is vertex ``p[i]`` of ``T`` (0-based)."""
    p = tuple(p)
    if sorted(p) != [0, 1, 2, 3]:
        raise DomainError(f"{p} is not a permutation of 0..3")
    return LabelledTetrahedron([T[i] for i in p])


def minus_det(r: float, s: float, t: float) -> float:
    """``-det`` of the Gram pattern: ``(r+s+t)(-r+s+t)(r-s+t)(r+s-t)``."""
    return (r + s + t) * (-r + s + t) * (r - s + t) * (r + s - t)


def angles_from_coords(coords: TriangleCoords, area: float | None = None) -> DihedralAngles:
    """Dihedral angles at the edges 12 (=34), 13 (=24), 14 (=23).

    These are the angles of a Euclidean triangle with sides ``r, s, t``, the
    angle ``theta_k`` opposite the k-th side.  Each angle is taken as
    ``atan2(area, 2 s t cos theta_1)`` and so on, where ``area`` is
    ``sqrt(-det G)`` (four times the triangle's area).  Pass ``area`` when it
    is known more accurately than it can be recomputed from ``coords``, as
    for the determinant coordinate on degenerate tetrahedra.
    """
    if not isinstance(coords, TriangleCoords):
        coords = TriangleCoords(*coords)
    if coords.is_vertex():
        raise DeltaVertex(f"angles are undefined at the vertex {tuple(coords)}")
    r, s, t = coords
    if area is None:
        area = math.sqrt(max(minus_det(r, s, t), 0.0))
    r2, s2, t2 = r * r, s * s, t * t
    return DihedralAngles(
        math.atan2(area, -r2 + s2 + t2),
        math.atan2(area, r2 - s2 + t2),
        math.atan2(area, r2 + s2 - t2),
    )
