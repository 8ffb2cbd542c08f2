"""Coefficients of the small-angle expansion of the Lobachevsky function.

For ``0 <= x <= pi/2``::

    L(x) = x (1 - log 2x) + x * sum_{n>=1} a_n x^(2n),
    a_n  = 4^n |B_2n| / (2n (2n+1)!)

with ``B_2n`` the Bernoulli numbers.  The series converges for ``|x| < pi``
and at ``x = pi/2`` successive terms shrink by roughly a factor 4, so
``N_TERMS`` terms leave a truncation error far below one ulp.
"""

from fractions import Fraction
from math import comb, factorial

N_TERMS = 34


def bernoulli_numbers(m: int) -> list[Fraction]:
    """Exact ``B_0 .. B_m`` (with ``B_1 = -1/2``)."""
    b = [Fraction(1)]
    for k in range(1, m + 1):
        b.append(-sum(comb(k + 1, j) * b[j] for j in range(k)) / (k + 1))
    return b


def lobachevsky_coefficients(n_terms: int = N_TERMS) -> list[float]:
    b = bernoulli_numbers(2 * n_terms)
    return [
        float(4**n * abs(b[2 * n]) / (2 * n * factorial(2 * n + 1)))
        for n in range(1, n_terms + 1)
    ]


COEFFS = tuple(lobachevsky_coefficients())
