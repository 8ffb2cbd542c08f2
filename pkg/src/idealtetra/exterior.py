"""Exterior powers of the (3, 1) space, the Hodge star, and dihedral angles.

A :class:`MultiVector` of grade ``k`` stores its ``C(4, k)`` coefficients in
the basis of sorted blades ``b_{i1} ^ ... ^ b_{ik}``.  The volume element is
fixed to ``omega = b1^b2^b3^b4``, for which ``<omega, omega> = SIGMA = -1``.
"""

from __future__ import annotations

import itertools
import math
from functools import reduce

import numpy as np

from . import minkowski as mk
from .errors import (
    CoincidentVertices,
    DegenerateSpan,
    GradeMismatch,
    GradeOverflow,
    NonPositiveGram,
    NotIdeal,
    NumericalFailure,
    PointOnPlane,
)

DIM = 4
#: Sign of ``<omega, omega>``: three negative basis vectors give -1.
SIGMA = -1.0
#: Arguments of arccos within this distance of +-1 are clamped.
CLAMP_TOL = 1e-9

BLADES = tuple(tuple(itertools.combinations(range(DIM), k)) for k in range(DIM + 1))
_BLADE_INDEX = tuple({b: i for i, b in enumerate(blades)} for blades in BLADES)


def _perm_sign(seq) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _build_wedge_table():
    # table[(p, q)] -> list of (i, j, k, sign) with e_i ^ e_j = sign * e_k
    table = {}
    for p in range(DIM + 1):
        for q in range(DIM + 1 - p):
            entries = []
            for i, bi in enumerate(BLADES[p]):
                for j, bj in enumerate(BLADES[q]):
                    if set(bi) & set(bj):
                        continue
                    merged = bi + bj
                    k = _BLADE_INDEX[p + q][tuple(sorted(merged))]
                    entries.append((i, j, k, _perm_sign(merged)))
            table[p, q] = entries
    return table


_WEDGE = _build_wedge_table()
# metric weight sigma_I of each blade: <e_I, e_I>
_BLADE_NORM = tuple(
    np.array([np.prod(mk.SIGNATURE[list(b)]) for b in blades]) for blades in BLADES
)


def _build_star():
    # star[k] is the (C(4,4-k) x C(4,k)) matrix of the Hodge star on grade k
    mats = []
    for k, blades in enumerate(BLADES):
        m = np.zeros((len(BLADES[DIM - k]), len(blades)))
        for i, b in enumerate(blades):
            comp = tuple(x for x in range(DIM) if x not in b)
            j = _BLADE_INDEX[DIM - k][comp]
            m[j, i] = _perm_sign(b + comp) * _BLADE_NORM[k][i]
        mats.append(m)
    return tuple(mats)


_STAR = _build_star()


class MultiVector:
    """Homogeneous element of the exterior power of grade ``grade``."""

    __slots__ = ("grade", "components")

    def __init__(self, grade: int, components):
        if not 0 <= grade <= DIM:
            raise GradeOverflow(f"grade {grade} outside 0..{DIM}")
        comps = np.array(components, dtype=float).reshape(-1)
        if comps.shape != (len(BLADES[grade]),):
            raise ValueError(
                f"grade {grade} needs {len(BLADES[grade])} components, got {comps.size}"
            )
        if not np.all(np.isfinite(comps)):
            raise ValueError("multivector components must be finite")
        comps.flags.writeable = False
        self.grade = grade
        self.components = comps

    @classmethod
    def zero(cls, grade: int) -> MultiVector:
        return cls(grade, np.zeros(len(BLADES[grade])))

    @classmethod
    def scalar(cls, value: float) -> MultiVector:
        return cls(0, [value])

    @classmethod
    def from_vector(cls, v) -> MultiVector:
        return cls(1, mk.vector(v))

    @classmethod
    def blade(cls, *indices: int) -> MultiVector:
        """Basis blade from 1-based indices, e.g. ``blade(1, 2)`` is ``b1^b2``."""
        zero_based = tuple(i - 1 for i in indices)
        grade = len(zero_based)
        if len(set(zero_based)) < grade:
            return cls.zero(grade)
        comps = np.zeros(len(BLADES[grade]))
        comps[_BLADE_INDEX[grade][tuple(sorted(zero_based))]] = _perm_sign(zero_based)
        return cls(grade, comps)

    def __add__(self, other):
        if not isinstance(other, MultiVector):
            return NotImplemented
        if other.grade != self.grade:
            raise GradeMismatch("cannot add multivectors of different grade")
        return MultiVector(self.grade, self.components + other.components)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return MultiVector(self.grade, -self.components)

    def __mul__(self, k):
        if isinstance(k, MultiVector):
            return NotImplemented
        return MultiVector(self.grade, float(k) * self.components)

    __rmul__ = __mul__

    def __xor__(self, other):
        return wedge(self, other)

    def __float__(self):
        if self.grade != 0:
            raise TypeError("only grade-0 multivectors convert to float")
        return float(self.components[0])

    def norm(self) -> float:
        """Euclidean norm of the coefficient vector."""
        return float(np.linalg.norm(self.components))

    def allclose(self, other: MultiVector, atol: float = 1e-12) -> bool:
        return self.grade == other.grade and bool(
            np.allclose(self.components, other.components, rtol=0.0, atol=atol)
        )

    def as_vector(self) -> np.ndarray:
        if self.grade != 1:
            raise TypeError("only grade-1 multivectors convert to vectors")
        return np.array(self.components)

    def __repr__(self):
        terms = []
        for b, x in zip(BLADES[self.grade], self.components):
            if x != 0.0:
                name = "^".join(f"b{i + 1}" for i in b) or "1"
                terms.append(f"{x:+g}*{name}")
        return f"MultiVector({' '.join(terms) or '0'})"


VOLUME_ELEMENT = MultiVector.blade(1, 2, 3, 4)


def _as_multivector(x) -> MultiVector:
    if isinstance(x, MultiVector):
        return x
    return MultiVector.from_vector(x)


def wedge(a, b) -> MultiVector:
    """Exterior product; plain 4-vectors are promoted to grade 1."""
    a = _as_multivector(a)
    b = _as_multivector(b)
    p, q = a.grade, b.grade
    if p + q > DIM:
        raise GradeOverflow(f"grade {p} ^ grade {q} exceeds {DIM}")
    out = np.zeros(len(BLADES[p + q]))
    ac, bc = a.components, b.components
    for i, j, k, sign in _WEDGE[p, q]:
        out[k] += sign * ac[i] * bc[j]
    return MultiVector(p + q, out)


def wedge_all(*vectors) -> MultiVector:
    return reduce(wedge, (_as_multivector(v) for v in vectors))


def induced_inner(a, b) -> float:
    """The form on the exterior power, ``det[<v_i, w_j>]`` on decomposables."""
    a = _as_multivector(a)
    b = _as_multivector(b)
    if a.grade != b.grade:
        raise GradeMismatch(f"grades {a.grade} and {b.grade} differ")
    return float(np.sum(_BLADE_NORM[a.grade] * a.components * b.components))


def hodge_star(a) -> MultiVector:
    """Hodge star with respect to ``omega = b1^b2^b3^b4``.

    Characterised by ``x ^ *a = <x, a> omega`` for all ``x`` of the grade of ``a``.
    """
    a = _as_multivector(a)
    return MultiVector(DIM - a.grade, _STAR[a.grade] @ a.components)


def polar_point(v1, v2, v3, tol: float = mk.CLASSIFY_TOL) -> np.ndarray:
    """Vector ``*(v1^v2^v3)``, orthogonal to the span of the three arguments."""
    blade = wedge_all(v1, v2, v3)
    scale = math.sqrt(mk.norm2(v1) * mk.norm2(v2) * mk.norm2(v3))
    if blade.norm() <= tol * scale:
        raise DegenerateSpan("the three vectors are linearly dependent")
    return hodge_star(blade).as_vector()


def points_toward(u, p, v, tol: float = mk.CLASSIFY_TOL) -> bool:
    """Whether the normal ``<-,p> u`` at ``p`` points to the side containing ``v``.

    ``u`` is the polar point of a plane through the positive point ``p``.
    """
    uv = mk.inner(u, v)
    if abs(uv) <= tol * math.sqrt(mk.norm2(u) * mk.norm2(v)):
        raise PointOnPlane("v lies on the plane polar to u")
    return uv * mk.inner(v, p) < 0.0


def clamp_cos(x: float, tol: float = CLAMP_TOL) -> float:
    """Clamp an arccos argument that overshoots +-1 by at most ``tol``."""
    if x > 1.0:
        if x > 1.0 + tol:
            raise NumericalFailure(f"arccos argument {x!r} exceeds 1")
        return 1.0
    if x < -1.0:
        if x < -1.0 - tol:
            raise NumericalFailure(f"arccos argument {x!r} below -1")
        return -1.0
    return x


def _check_ideal_vertices(vertices, tol):
    for i, v in enumerate(vertices):
        if not mk.is_null(v, tol):
            raise NotIdeal(f"vertex {i + 1} is not an ideal point")
    for i, j in itertools.combinations(range(4), 2):
        if mk.projectively_equal(vertices[i], vertices[j], tol):
            raise CoincidentVertices(f"vertices {i + 1} and {j + 1} coincide")


def dihedral_angle(v1, v2, v3, v4, tol: float = CLAMP_TOL) -> float:
    """Dihedral angle along the edge ``(v1, v2)`` of an ideal tetrahedron.

    This is the angle between the half-plane of ``P1 = span(v1, v2, v3)``
    containing ``v3`` and the half-plane of ``P2 = span(v1, v2, v4)``
    containing ``v4``.  Representatives must be sign-normalised so every
    off-diagonal Gram entry is positive.  Coplanar vertices give 0 when
    ``v3`` and ``v4`` lie on the same side of the edge and ``pi`` otherwise.
    """
    vs = [mk.vector(v) for v in (v1, v2, v3, v4)]
    _check_ideal_vertices(vs, mk.CLASSIFY_TOL)
    g = mk.gram(vs)
    if np.any(g[np.triu_indices(4, 1)] <= 0.0):
        raise NonPositiveGram("off-diagonal Gram entries must be positive")
    num = g[0, 2] * g[1, 3] + g[0, 3] * g[1, 2] - g[0, 1] * g[2, 3]
    den = 2.0 * math.sqrt(g[1, 2] * g[2, 0] * g[1, 3] * g[3, 0])
    return math.acos(clamp_cos(num / den, tol))


def dihedral_angle_polar(v1, v2, v3, v4, tol: float = CLAMP_TOL) -> float:
    """Same angle as :func:`dihedral_angle`, computed from the polar points.

    With ``u1 = *(v1^v2^v3)`` and ``u2 = *(v1^v2^v4)`` the cosine is
    ``-<u1,u2> / sqrt(<u1,u1><u2,u2>)``.  Only defined for non-degenerate
    tetrahedra: coplanar vertices make the two polar points proportional,
    which this route cannot orient.  Requires the same sign normalisation.
    """
    vs = [mk.vector(v) for v in (v1, v2, v3, v4)]
    _check_ideal_vertices(vs, mk.CLASSIFY_TOL)
    g = mk.gram(vs)
    if np.any(g[np.triu_indices(4, 1)] <= 0.0):
        raise NonPositiveGram("off-diagonal Gram entries must be positive")
    u1 = polar_point(vs[0], vs[1], vs[2])
    u2 = polar_point(vs[0], vs[1], vs[3])
    cos = -mk.inner(u1, u2) / math.sqrt(mk.inner(u1, u1) * mk.inner(u2, u2))
    return math.acos(clamp_cos(cos, tol))
