"""Pure-Python implementation of the numerical kernels.

Used when the compiled ``_kernels`` extension is unavailable or when
``IDEALTETRA_PURE`` is set.  Scalar routines use :mod:`math`; array routines
are vectorised with numpy.
"""

import math

import numpy as np

from ._series import COEFFS

_PI = math.pi
_HALF_PI = 0.5 * math.pi


def lobachevsky(theta: float) -> float:
    x = theta - _PI * round(theta / _PI)
    sign = 1.0
    if x < 0.0:
        x, sign = -x, -1.0
    if x == 0.0:
        return 0.0
    if x > _HALF_PI:
        x = _HALF_PI
    x2 = x * x
    acc = 0.0
    for a in reversed(COEFFS):
        acc = (acc + a) * x2
    return sign * x * (1.0 - math.log(2.0 * x) + acc)


def lobachevsky_array(theta) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    x = theta - _PI * np.round(theta / _PI)
    sign = np.where(x < 0.0, -1.0, 1.0)
    x = np.minimum(np.abs(x), _HALF_PI)
    x2 = x * x
    acc = np.zeros_like(x)
    for a in reversed(COEFFS):
        acc = (acc + a) * x2
    with np.errstate(divide="ignore", invalid="ignore"):
        val = x * (1.0 - np.log(2.0 * x) + acc)
    return np.where(x == 0.0, 0.0, sign * val)


def triangle_angles(r: float, s: float, t: float, k: float) -> tuple[float, float, float]:
    """Angles opposite the sides ``r, s, t`` of a triangle.

    ``k`` is four times the area (``sqrt(-det)`` of the Gram matrix); using
    it as the common sine term keeps degenerate triangles exactly at 0 or pi.
    """
    r2, s2, t2 = r * r, s * s, t * t
    return (
        math.atan2(k, -r2 + s2 + t2),
        math.atan2(k, r2 - s2 + t2),
        math.atan2(k, r2 + s2 - t2),
    )


def ideal_volume(r: float, s: float, t: float, k: float) -> float:
    th1, th2, th3 = triangle_angles(r, s, t, k)
    return lobachevsky(th1) + lobachevsky(th2) + lobachevsky(th3)


def ideal_volume_array(r, s, t, k) -> np.ndarray:
    r, s, t, k = np.broadcast_arrays(*(np.asarray(a, dtype=float) for a in (r, s, t, k)))
    r2, s2, t2 = r * r, s * s, t * t
    th1 = np.arctan2(k, -r2 + s2 + t2)
    th2 = np.arctan2(k, r2 - s2 + t2)
    th3 = np.arctan2(k, r2 + s2 - t2)
    return lobachevsky_array(th1) + lobachevsky_array(th2) + lobachevsky_array(th3)
