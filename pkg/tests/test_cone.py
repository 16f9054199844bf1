import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from semislack import exact_linalg as la
from semislack.cone import (Cone, cone_from_generators, cone_from_inequalities, cone_member, dual_cone,
                            intersect_subspace_with_orthant)
from oracles import fm_in_cone

QUADRANT = cone_from_generators([[1, 0], [0, 1]])


def test_running_example_cone():
    C = cone_from_generators([[1, 0], [1, 1], ["3/2", "3/2"]])
    assert set(C.rays) == {(1, 0), (1, 1)}
    assert C.pointed and C.full_dim
    assert dual_cone(C) == cone_from_generators([[0, 1], [1, -1]])


def test_quadrant_self_dual_and_half_plane():
    assert dual_cone(QUADRANT) == QUADRANT
    H = cone_from_generators([[1, 0], [-1, 0], [0, 1]])
    assert not H.pointed
    assert H.facets == ((0, 1),)
    assert not dual_cone(H).full_dim


def test_membership_examples():
    C = cone_from_generators([[1, 0], [1, 1]])
    assert cone_member(C, (2, 1))
    assert not cone_member(C, (0, 1))
    assert all(cone_member(C, r) for r in C.rays)


def test_zero_cone():
    Z = cone_from_generators([[0, 0]])
    assert Z.rays == () and Z.pointed and Z.dim == 0


def test_orthant_intersections():
    assert intersect_subspace_with_orthant([[1, 1]], 2).rays == ((1, 1),)
    assert intersect_subspace_with_orthant([[1, -1]], 2).is_zero
    C = intersect_subspace_with_orthant([[0, 12, 1, 3, 5], [12, 0, 5, 3, 1]], 5)
    assert C.dim == 2 and len(C.rays) == 2
    assert set(C.rays) == {(0, 12, 1, 3, 5), (12, 0, 5, 3, 1)}


def test_dimension_cap():
    gens = [tuple(int(i == j) for j in range(7)) for i in range(7)]
    with pytest.raises(ValueError, match="cap"):
        cone_from_generators(gens)
    assert cone_from_generators(gens, dim_cap=7).dim == 7


def test_inequalities():
    C = cone_from_inequalities([[0, 1], [3, -1]], 2)
    assert set(C.rays) == {(1, 0), (1, 3)}
    assert cone_from_inequalities([], 2).dim == 2


vec3 = st.lists(st.integers(-4, 4), min_size=3, max_size=3)
gens3 = st.lists(vec3, min_size=1, max_size=5)


def _from_facets(C: Cone) -> Cone:
    ineqs = list(C.facets)
    for e in C.equations:
        ineqs += [e, tuple(-x for x in e)]
    return cone_from_inequalities(ineqs, C.ambient_dim)


@given(gens3)
def test_double_description_consistency(gens):
    C = cone_from_generators(gens)
    for r in C.rays:
        assert all(la.dot(r, f) >= 0 for f in C.facets)
    assert len({la.primitive(r) for r in C.rays}) == len(C.rays)
    assert cone_from_generators(C.rays, ambient_dim=3) == C
    assert _from_facets(C) == C


@given(gens3)
def test_double_dual_and_pointedness(gens):
    C = cone_from_generators(gens)
    D = dual_cone(C)
    if C.pointed:
        assert dual_cone(D) == C
    # pointed iff the dual is full dimensional within the span
    assert C.pointed == (D.dim == C.dim)


@given(gens3, vec3)
def test_membership_matches_fourier_motzkin(gens, v):
    C = cone_from_generators(gens)
    assert cone_member(C, v) == fm_in_cone(gens, v)


def test_membership_random_rational_points():
    rng = random.Random(7)
    for _ in range(60):
        gens = [[rng.randint(-3, 3) for _ in range(3)] for _ in range(rng.randint(1, 4))]
        C = cone_from_generators(gens)
        for _ in range(5):
            v = [Fraction(rng.randint(-6, 6), rng.choice([1, 2])) for _ in range(3)]
            assert cone_member(C, v) == fm_in_cone(gens, v)
