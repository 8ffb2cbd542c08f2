import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from idealtetra import minkowski as mk
from idealtetra.errors import DomainError, NotHyperbolicPoint, NullArgument, ZeroVector

finite = st.floats(-1e3, 1e3, allow_nan=False)
vec4 = arrays(np.float64, 4, elements=finite)
scale = st.floats(0.01, 100.0) | st.floats(-100.0, -0.01)


@pytest.mark.parametrize(
    "u, v, want",
    [(mk.B1, mk.B1, 1.0), (mk.B2, mk.B2, -1.0), (mk.B1, mk.B3, 0.0), (mk.B4, mk.B4, -1.0)],
)
def test_inner_basis(u, v, want):
    assert mk.inner(u, v) == want


def test_signature_exact():
    assert np.array_equal(mk.gram(mk.BASIS), np.diag([1.0, -1.0, -1.0, -1.0]))


@given(vec4, vec4, vec4, finite)
def test_bilinear_symmetric(u, v, w, a):
    lhs = mk.inner(a * u + w, v)
    rhs = a * mk.inner(u, v) + mk.inner(w, v)
    bound = 1e-12 * (abs(a) * np.abs(u).max() + np.abs(w).max() + 1) * (np.abs(v).max() + 1) * 4
    assert abs(lhs - rhs) <= bound
    assert mk.inner(u, v) == mk.inner(v, u)


@pytest.mark.parametrize(
    "v, want",
    [
        (mk.B1, mk.PointClass.POSITIVE),
        (mk.B2, mk.PointClass.NEGATIVE),
        (mk.B1 + mk.B2, mk.PointClass.NULL),
        (np.array([5.0, 3.0, 4.0, 0.0]), mk.PointClass.NULL),
    ],
)
def test_classify(v, want):
    assert mk.classify(v) is want


@given(vec4.filter(lambda v: np.abs(v).max() > 1e-3), scale)
def test_classify_scale_invariant(v, lam):
    assert mk.classify(lam * v) is mk.classify(v)


def test_classify_zero():
    with pytest.raises(ZeroVector):
        mk.classify(np.zeros(4))


def test_vector_rejects_nonfinite():
    with pytest.raises(DomainError):
        mk.vector(1.0, math.nan, 0.0, 0.0)
    with pytest.raises(DomainError):
        mk.vector([1.0, 2.0, 3.0])


def test_tance_examples():
    p = np.array([1.0, 0.2, -0.3, 0.1])
    q = 2 * mk.B1 + mk.B2
    assert mk.tance(p, p) == pytest.approx(1.0, abs=1e-15)
    assert mk.tance(p, 3 * q) == pytest.approx(mk.tance(p, q), rel=1e-14)
    assert mk.tance(mk.B1, q) == pytest.approx(4 / 3, rel=1e-15)


@given(vec4, vec4, scale, scale)
@settings(max_examples=200)
def test_tance_projective(p, q, lam, mu):
    pp, qq = mk.inner(p, p), mk.inner(q, q)
    if min(mk.norm2(p), mk.norm2(q)) < 1e-6 or abs(pp) < 1e-3 * mk.norm2(p) or abs(qq) < 1e-3 * mk.norm2(q):
        return
    assert mk.tance(lam * p, mu * q) == pytest.approx(mk.tance(p, q), rel=1e-12, abs=1e-300)


def test_tance_null_argument():
    with pytest.raises(NullArgument):
        mk.tance(mk.B1 + mk.B2, mk.B1)


def test_distance_examples(rng):
    assert mk.distance(mk.B1, mk.B1) == 0.0
    q = 2 * mk.B1 + mk.B2
    assert mk.distance(mk.B1, q) == pytest.approx(math.acosh(math.sqrt(4 / 3)), abs=1e-15)
    assert mk.distance(mk.B1, q) == pytest.approx(0.549306144334055, abs=1e-12)
    for _ in range(20):
        p = np.concatenate(([2.0], rng.uniform(-1, 1, 3)))
        q = np.concatenate(([2.0], rng.uniform(-1, 1, 3)))
        assert mk.distance(p, q) == mk.distance(q, p)


def test_distance_is_hyperbolic_arc_length():
    # along b1 cosh(x) + b2 sinh(x) the distance from b1 is x
    for x in (0.1, 1.0, 3.0):
        q = math.cosh(x) * mk.B1 + math.sinh(x) * mk.B2
        assert mk.distance(mk.B1, q) == pytest.approx(x, rel=1e-12)


def test_distance_rejects_non_positive():
    with pytest.raises(NotHyperbolicPoint):
        mk.distance(mk.B1, mk.B2)
    with pytest.raises(NotHyperbolicPoint):
        mk.distance(mk.B1 + mk.B2, mk.B1)


def test_projectively_equal(rng):
    v = np.array([1.0, 0.6, 0.8, 0.0])
    assert mk.projectively_equal(v, -3.0 * v)
    assert not mk.projectively_equal(v, np.array([1.0, -0.6, 0.8, 0.0]))
