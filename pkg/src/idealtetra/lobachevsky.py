"""The Lobachevsky function ``L(x) = -int_0^x log|2 sin t| dt``.

:func:`lobachevsky` is the fast evaluator (compiled when available).
:func:`lobachevsky_quadrature` integrates the definition directly and exists
to check it.
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from scipy import integrate

from . import _backend
from .errors import DomainError, ToleranceUnreachable

#: Maximum of L, attained at pi/6.
LOBACHEVSKY_MAX_ARG = math.pi / 6


def lobachevsky(theta):
    """Evaluate ``L(theta)``; accepts a float or an array.

    Absolute error is at the level of a few ulps.  ``L`` is odd and
    ``pi``-periodic, and the argument is reduced accordingly before a
    Bernoulli-number series is summed on ``[0, pi/2]``.
    """
    if np.ndim(theta) == 0:
        theta = float(theta)
        if not math.isfinite(theta):
            raise DomainError("argument must be finite")
        return _backend.lobachevsky(theta)
    theta = np.asarray(theta, dtype=float)
    if not np.all(np.isfinite(theta)):
        raise DomainError("arguments must be finite")
    return _backend.lobachevsky_array(theta)


def _log_2sinc(u):
    # log|2 sin(u) / u|, smooth on |u| <= pi/2
    return math.log(2.0 * abs(np.sinc(u / math.pi)))


def _piece(a: float, b: float, pole: float, abs_tol: float) -> tuple[float, float]:
    """``int_a^b log|2 sin t| dt`` over a piece whose only singular point is ``pole``.

    The singular part ``log|t - pole|`` is integrated in closed form and the
    smooth remainder ``log|2 sin t / (t - pole)|`` by adaptive quadrature.
    """

    def xlogx_minus_x(x):
        return 0.0 if x == 0.0 else x * math.log(x) - x

    # int_a^b log|t - pole| dt with a <= b and pole outside (a, b)
    ua, ub = a - pole, b - pole
    if ua >= 0.0:
        singular = xlogx_minus_x(ub) - xlogx_minus_x(ua)
    else:
        singular = xlogx_minus_x(-ua) - xlogx_minus_x(-ub)
    with warnings.catch_warnings():
        # the caller compares the error estimate against abs_tol itself
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        smooth, err = integrate.quad(
            lambda t: _log_2sinc(t - pole), a, b, epsabs=abs_tol / 4, epsrel=0.0, limit=200
        )
    return singular + smooth, err


def lobachevsky_quadrature(theta: float, abs_tol: float = 1e-13) -> float:
    """Integrate the defining integral of ``L(theta)`` numerically.

    The range is split at multiples of ``pi/2`` so that every piece has at
    most one logarithmic singularity, sitting at an endpoint.  No symmetry of
    ``L`` is used.

    Raises:
        ToleranceUnreachable: if the estimated error exceeds ``abs_tol``.
    """
    if abs_tol < 1e-14:
        raise DomainError("abs_tol must be at least 1e-14")
    theta = float(theta)
    if not math.isfinite(theta):
        raise DomainError("argument must be finite")
    if theta == 0.0:
        return 0.0
    sign = 1.0
    lo, hi = 0.0, theta
    if theta < 0.0:
        lo, hi, sign = theta, 0.0, -1.0
    half = math.pi / 2
    cuts = [lo]
    k = math.floor(lo / half) + 1
    while k * half < hi:
        cuts.append(k * half)
        k += 1
    cuts.append(hi)
    total = 0.0
    err_total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        if b <= a:
            continue
        # the multiple of pi nearest to the piece's midpoint is its pole
        pole = math.pi * round(0.5 * (a + b) / math.pi)
        value, err = _piece(a, b, pole, abs_tol / len(cuts))
        total += value
        err_total += err
    if err_total > abs_tol:
        raise ToleranceUnreachable(
            f"estimated quadrature error {err_total:.3g} exceeds {abs_tol:.3g}"
        )
    # integral taken over [lo, hi]; orientation and the leading minus sign
    return -sign * total
