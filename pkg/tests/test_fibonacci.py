from fractions import Fraction

import pytest

from semislack import exact_linalg as la
from semislack.fibonacci import (M_from_slack, closed_form_M, closed_form_slack, fib, fib_identities,
                                 fib_rank_suite, fib_semigroup, generators_A, generators_B, growth_split)
from semislack.intrank import PROVEN, l1, lower_bounds
from semislack.slack import is_slack_matrix

from oracles import brute_hilbert_2d


def test_fib_values():
    assert [fib(k) for k in range(1, 9)] == [1, 1, 2, 3, 5, 8, 13, 21]
    assert fib(0) == 0 and fib(5) == 5 and fib(-3) == 2
    for k in range(-15, 15):
        assert fib(k + 2) == fib(k + 1) + fib(k)


def test_first_member():
    F = fib_semigroup(1)
    assert set(generators_A(1)) == {(1, 3), (1, 0), (1, 1), (1, 2)}
    assert set(generators_B(1)) == {(0, 1), (1, 0), (3, -1)}
    assert F.slack.matrix == ((3, 1, 0), (0, 1, 3), (1, 1, 2), (2, 1, 1))
    assert F.M == ((1, 2), (1, 1)) and l1(F.M) == 5 == fib(3) + fib(5) - 2


def test_hilbert_basis_against_brute_force():
    for n in (1, 2):
        a, b = fib(2 * n), fib(2 * n + 2)
        inside = lambda p: 0 <= a * p[1] <= b * p[0]
        box = max(max(map(abs, g)) for g in generators_A(n)) + 1
        assert brute_hilbert_2d(inside, box) == sorted(generators_A(n))


def test_closed_forms_up_to_six():
    for n in range(1, 7):
        F = fib_semigroup(n)
        assert la.shape(F.slack.matrix) == (n + 3, n + 2)
        assert la.rank(F.slack.matrix) == 2
        assert is_slack_matrix(F.slack.matrix)[0]


def test_closed_form_slack_layout():
    for n in range(1, 9):
        S = closed_form_slack(n)
        A, B = generators_A(n), generators_B(n)
        assert S == tuple(tuple(la.dot(a, b) for b in B) for a in A)
        assert la.rank(S) == 2
        assert M_from_slack(S) == closed_form_M(n)


def test_norm_and_block_structure():
    for n in range(1, 13):
        assert l1(closed_form_M(n)) == fib(2 * n + 1) + fib(2 * n + 3) - 2
    for n in range(1, 6):
        M, ok = growth_split(n)
        assert ok


def test_identities():
    rep = fib_identities(8)
    assert all(rep.values()), rep
    assert (fib(3) + fib(5)) ** 2 == 49 == fib(7) + fib(9) + 2
    assert fib(6) * fib(2) == 8 == fib(4) ** 2 - 1
    slopes = [Fraction(fib(2 * n + 2), fib(2 * n)) for n in (1, 2, 3)]
    assert slopes == [3, Fraction(8, 3), Fraction(21, 8)]
    assert slopes[0] > slopes[1] > slopes[2]


def test_rejects_nonpositive_n():
    with pytest.raises(ValueError):
        fib_semigroup(0)


def test_rank_suite_small():
    rows = fib_rank_suite(2)
    assert [(r.n, r.exact, r.status) for r in rows] == [(1, 3, PROVEN), (2, 4, PROVEN)]
    assert all(r.growth_certified for r in rows)
    assert lower_bounds(closed_form_M(3))["l1_norm_recursive"] == 3
