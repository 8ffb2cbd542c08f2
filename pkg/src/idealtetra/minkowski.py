"""Real 4-space with a bilinear form of signature (3, 1).

Vectors are plain ``numpy`` arrays of shape ``(4,)`` holding coordinates in a
fixed orthonormal basis ``b1..b4`` with ``<b1,b1> = 1`` and
``<b2,b2> = <b3,b3> = <b4,b4> = -1``.  There is no projective-point type:
functions take representatives and are invariant under the rescalings they
document.
"""

from __future__ import annotations

import enum
import math

import numpy as np

from .errors import DomainError, NotHyperbolicPoint, NullArgument, ZeroVector

#: Relative tolerance for deciding that ``<v,v>`` vanishes.
CLASSIFY_TOL = 1e-9

#: Diagonal of the Gram matrix of the standard basis.
SIGNATURE = np.array([1.0, -1.0, -1.0, -1.0])
METRIC = np.diag(SIGNATURE)

B1, B2, B3, B4 = np.eye(4)
BASIS = (B1, B2, B3, B4)


class PointClass(enum.Enum):
    POSITIVE = "positive"
    NULL = "null"
    NEGATIVE = "negative"


def vector(*components) -> np.ndarray:
    """Build a validated vector from four components (or one 4-sequence)."""
    if len(components) == 1:
        components = components[0]
    v = np.asarray(components, dtype=float)
    if v.shape != (4,):
        raise DomainError(f"expected 4 components, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise DomainError("vector components must be finite")
    return v


def inner(u, v) -> float:
    """The form ``<u,v> = u1 v1 - u2 v2 - u3 v3 - u4 v4``."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    return float(u[0] * v[0] - u[1] * v[1] - u[2] * v[2] - u[3] * v[3])


def gram(vectors) -> np.ndarray:
    """Gram matrix ``[<v_i, v_j>]`` of a sequence of vectors."""
    m = np.asarray(vectors, dtype=float)
    return m @ METRIC @ m.T


def norm2(v) -> float:
    """Euclidean squared norm of the components (not the form)."""
    v = np.asarray(v, dtype=float)
    return float(v @ v)


def classify(v, tol: float = CLASSIFY_TOL) -> PointClass:
    """Classify ``v`` as positive, null or negative.

    ``v`` is null when ``|<v,v>| <= tol * |v|^2`` with ``|v|`` the Euclidean
    norm, which makes the answer independent of the representative's scale.

    Raises:
        ZeroVector: if every component is zero.
    """
    scale = norm2(v)
    if scale == 0.0:
        raise ZeroVector("the zero vector does not represent a point")
    q = inner(v, v)
    if abs(q) <= tol * scale:
        return PointClass.NULL
    return PointClass.POSITIVE if q > 0 else PointClass.NEGATIVE


def is_null(v, tol: float = CLASSIFY_TOL) -> bool:
    return classify(v, tol) is PointClass.NULL


def tance(p, q, tol: float = CLASSIFY_TOL) -> float:
    """Projective invariant ``<p,q><q,p> / (<p,p><q,q>)``."""
    pp = inner(p, p)
    qq = inner(q, q)
    if abs(pp) <= tol * norm2(p) or abs(qq) <= tol * norm2(q):
        raise NullArgument("tance is undefined for null points")
    pq = inner(p, q)
    return pq * pq / (pp * qq)


def distance(p, q, tol: float = CLASSIFY_TOL) -> float:
    """Hyperbolic distance ``arccosh(sqrt(tance(p, q)))`` between positive points.

    A tance below 1 by at most ``tol`` (rounding) is clamped to 1.
    """
    for x in (p, q):
        if classify(x, tol) is not PointClass.POSITIVE:
            raise NotHyperbolicPoint("distance needs two positive points")
    ta = tance(p, q, tol)
    if ta < 1.0:
        if ta < 1.0 - tol:
            raise DomainError(f"tance {ta!r} < 1 between positive points")
        ta = 1.0
    return math.acosh(math.sqrt(ta))


def projectively_equal(u, v, tol: float = CLASSIFY_TOL) -> bool:
    """True when ``u`` and ``v`` represent the same ideal point.

    For null vectors ``<u,v> = 0`` already forces equality; the proportionality
    test (all 2x2 minors of ``[u; v]`` small) guards against rounding.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    scale = math.sqrt(norm2(u) * norm2(v))
    if scale == 0.0:
        raise ZeroVector("the zero vector does not represent a point")
    if abs(inner(u, v)) > tol * scale:
        return False
    minors = np.outer(u, v) - np.outer(v, u)
    return float(np.max(np.abs(minors))) <= tol * scale
