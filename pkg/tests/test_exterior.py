import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from idealtetra import exterior as ex
from idealtetra import minkowski as mk
from idealtetra import tetra as tt
from idealtetra.errors import (
    CoincidentVertices,
    DegenerateSpan,
    GradeMismatch,
    GradeOverflow,
    NonPositiveGram,
    NotIdeal,
    PointOnPlane,
)

MV = ex.MultiVector
ALL_BLADES = [(k, b) for k, blades in enumerate(ex.BLADES) for b in blades]


def blade(*idx):
    return MV.blade(*idx)


@st.composite
def multivectors(draw, grade=None):
    k = draw(st.integers(0, 4)) if grade is None else grade
    comps = draw(
        st.lists(st.floats(-10, 10, allow_nan=False), min_size=len(ex.BLADES[k]), max_size=len(ex.BLADES[k]))
    )
    return MV(k, comps)


def test_component_counts():
    assert [len(b) for b in ex.BLADES] == [1, 4, 6, 4, 1]
    with pytest.raises(ValueError):
        MV(2, [1.0, 2.0])
    with pytest.raises(ValueError):
        MV(1, [1.0, math.inf, 0.0, 0.0])


def test_wedge_examples():
    assert ex.wedge(mk.B1, mk.B2).allclose(blade(1, 2), 0.0)
    assert ex.wedge(mk.B1, mk.B1).allclose(MV.zero(2), 0.0)
    assert ex.wedge(blade(1, 2), blade(3, 4)).allclose(ex.VOLUME_ELEMENT, 0.0)
    assert ex.wedge(mk.B2, mk.B1).allclose(-blade(1, 2), 0.0)


def test_wedge_overflow():
    with pytest.raises(GradeOverflow):
        ex.wedge(blade(1, 2, 3), blade(1, 2))


def test_wedge_matches_determinant_on_four_vectors(rng):
    # top-degree wedge of four vectors is det of their coordinate matrix
    for _ in range(20):
        m = rng.standard_normal((4, 4))
        w = ex.wedge_all(*m)
        assert float(w.components[0]) == pytest.approx(np.linalg.det(m), rel=1e-12)


@given(multivectors(), multivectors())
@settings(max_examples=200)
def test_wedge_graded_antisymmetry(a, b):
    if a.grade + b.grade > 4:
        return
    sign = (-1) ** (a.grade * b.grade)
    assert ex.wedge(a, b).allclose(sign * ex.wedge(b, a), 1e-12)


@given(multivectors(1), multivectors(1), multivectors(1))
def test_wedge_associative(a, b, c):
    assert ex.wedge(ex.wedge(a, b), c).allclose(ex.wedge(a, ex.wedge(b, c)), 1e-10)


def test_induced_inner_examples():
    assert ex.induced_inner(blade(1, 2), blade(1, 2)) == -1.0
    assert ex.induced_inner(blade(1, 2), blade(1, 3)) == 0.0
    assert ex.induced_inner(ex.VOLUME_ELEMENT, ex.VOLUME_ELEMENT) == ex.SIGMA == -1.0
    with pytest.raises(GradeMismatch):
        ex.induced_inner(blade(1), blade(1, 2))


def test_induced_inner_is_gram_determinant(rng):
    # oracle: det of the Gram matrix of the factors
    for k in (1, 2, 3, 4):
        for _ in range(20):
            v = rng.standard_normal((k, 4))
            w = rng.standard_normal((k, 4))
            want = np.linalg.det(v @ mk.METRIC @ w.T)
            got = ex.induced_inner(ex.wedge_all(*v), ex.wedge_all(*w))
            assert got == pytest.approx(want, rel=1e-10, abs=1e-12)


@pytest.mark.parametrize(
    "arg, want",
    [
        (ex.VOLUME_ELEMENT, MV.scalar(-1.0)),
        (blade(1, 2), -blade(3, 4)),
        (MV.scalar(1.0), ex.VOLUME_ELEMENT),
    ],
)
def test_hodge_examples(arg, want):
    assert ex.hodge_star(arg).allclose(want, 0.0)


@pytest.mark.parametrize("k, b", ALL_BLADES)
def test_double_star_exact_on_blades(k, b):
    e = MV.blade(*(i + 1 for i in b))
    ss = ex.hodge_star(ex.hodge_star(e))
    assert np.array_equal(ss.components, (-1) ** (k * (4 - k)) * ex.SIGMA * e.components)


@pytest.mark.parametrize("k, b", ALL_BLADES)
def test_star_on_blades_by_defining_identity(k, b):
    # x ^ *e = <x, e> omega for every basis blade x
    e = MV.blade(*(i + 1 for i in b))
    se = ex.hodge_star(e)
    for c in ex.BLADES[k]:
        x = MV.blade(*(i + 1 for i in c))
        lhs = ex.wedge(x, se)
        assert lhs.allclose(ex.induced_inner(x, e) * ex.VOLUME_ELEMENT, 0.0)


@given(st.integers(0, 4).flatmap(lambda k: st.tuples(multivectors(k), multivectors(k), multivectors(4 - k))))
@settings(max_examples=300)
def test_star_identities(triple):
    a, b, c = triple
    k = a.grade
    sign = (-1) ** (k * (4 - k))
    assert ex.wedge(a, ex.hodge_star(b)).allclose(ex.wedge(b, ex.hodge_star(a)), 1e-10)
    inner = ex.induced_inner(a, b)
    assert inner == pytest.approx(
        ex.SIGMA * float(ex.hodge_star(ex.wedge(a, ex.hodge_star(b)))), abs=1e-10
    )
    assert ex.induced_inner(a, ex.hodge_star(c)) == pytest.approx(
        sign * ex.induced_inner(ex.hodge_star(a), c), abs=1e-10
    )
    assert ex.hodge_star(ex.hodge_star(a)).allclose(sign * ex.SIGMA * a, 1e-12)


@given(multivectors())
def test_star_injective(a):
    # the star permutes coefficients up to sign, so it preserves the coefficient norm
    assert ex.hodge_star(a).norm() == pytest.approx(a.norm(), rel=1e-15)


def test_polar_point_examples(rng):
    u = ex.polar_point(mk.B2, mk.B3, mk.B4)
    assert abs(u[0]) > 0 and np.allclose(u[1:], 0.0)
    for _ in range(50):
        v = rng.standard_normal((3, 4))
        u = ex.polar_point(*v)
        for vi in v:
            assert abs(mk.inner(u, vi)) <= 1e-10 * np.linalg.norm(u) * np.linalg.norm(vi)


def test_polar_point_of_ideal_plane_is_negative(rng):
    from conftest import random_null

    for _ in range(20):
        u = ex.polar_point(*(random_null(rng) for _ in range(3)))
        assert mk.classify(u) is mk.PointClass.NEGATIVE


def test_polar_point_degenerate():
    with pytest.raises(DegenerateSpan):
        ex.polar_point(mk.B1, mk.B2, mk.B1 + mk.B2)


def test_points_toward():
    assert ex.points_toward(mk.B2, mk.B1, mk.B1 - mk.B2) is False
    assert ex.points_toward(mk.B2, mk.B1, mk.B1 + mk.B2) is True
    with pytest.raises(PointOnPlane):
        ex.points_toward(mk.B2, mk.B1, mk.B1 + mk.B3)


def test_points_toward_mirror(rng):
    u, p = mk.B2, mk.B1
    for _ in range(20):
        v = np.concatenate(([2.0], rng.uniform(-1, 1, 3)))
        if abs(v[1]) < 1e-3:
            continue
        mirror = v * np.array([1.0, -1.0, 1.0, 1.0])
        assert ex.points_toward(u, p, v) != ex.points_toward(u, p, mirror)


def test_dihedral_regular():
    T = tt.synthesize((1 / 3, 1 / 3, 1 / 3))
    assert ex.dihedral_angle(*T) == pytest.approx(math.pi / 3, abs=1e-12)
    assert ex.dihedral_angle_polar(*T) == pytest.approx(math.pi / 3, abs=1e-12)


def _circle(phi):
    return mk.B1 + math.cos(phi) * mk.B2 + math.sin(phi) * mk.B3


@pytest.mark.parametrize(
    "phis, want",
    [
        ((0.0, 2.0, 0.5, 1.0), 0.0),  # v3, v4 on the same arc between v1 and v2
        ((0.0, 2.0, 1.0, 4.0), math.pi),  # opposite arcs
    ],
)
def test_dihedral_coplanar(phis, want):
    vs = [_circle(p) for p in phis]
    assert ex.dihedral_angle(*vs) == pytest.approx(want, abs=1e-7)


def test_dihedral_scale_invariant(rng):
    T = list(tt.synthesize((0.2, 0.35, 0.45)))
    base = ex.dihedral_angle(*T)
    for _ in range(20):
        s = rng.uniform(0.1, 10.0, 4)
        assert ex.dihedral_angle(*(v * k for v, k in zip(T, s))) == pytest.approx(base, abs=1e-12)


def test_dihedral_errors():
    T = list(tt.synthesize((0.2, 0.35, 0.45)))
    with pytest.raises(NotIdeal):
        ex.dihedral_angle(mk.B1, *T[1:])
    with pytest.raises(CoincidentVertices):
        ex.dihedral_angle(T[0], 2 * T[0], T[2], T[3])
    with pytest.raises(NonPositiveGram):
        ex.dihedral_angle(T[0], -T[1], T[2], T[3])


def test_dihedral_routes_agree(rng):
    for _ in range(50):
        w = rng.dirichlet((2.0, 2.0, 2.0))
        if w.max() >= 0.5:
            continue
        T = list(tt.synthesize(tt.TriangleCoords(*w)))
        for p in itertools.permutations(range(4)):
            v = [T[i] for i in p]
            assert ex.dihedral_angle(*v) == pytest.approx(ex.dihedral_angle_polar(*v), abs=1e-9)
