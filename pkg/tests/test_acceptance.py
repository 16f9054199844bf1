"""Acceptance checks, one or more tests per numbered criterion.

The terminal summary (see conftest) prints a PASS/FAIL line per test.
"""

import os
import random
import time
from fractions import Fraction
from itertools import product

import pytest

from semislack import exact_linalg as la
from semislack.fibonacci import closed_form_M, closed_form_slack, fib, fib_semigroup, growth_split
from semislack.intrank import DEFAULT_BUDGET, EXHAUSTED, PROVEN, intrank_exact, l1, lower_bound_l1, \
    verify_factorization
from semislack.lattice import dual_lattice, lattice_from_generators
from semislack.lifts import check_slice, is_pullback, lift_from_factorization, make_lift, min_lift_size
from semislack.semigroup import AffineSemigroup, dual_semigroup, normalize
from semislack.slack import (SlackMatrix, col_semigroup, equal_up_to_permutation, is_slack_matrix,
                             isomorphism_embedding, row_semigroup, slack_matrix)

from oracles import brute_intrank_small

criterion = pytest.mark.criterion
H = Fraction(3, 2)
RUNNING = AffineSemigroup([[1, 0], [1, 1], [H, H]])
GAP = [[2, 1, 0], [1, 1, 1], [0, 1, 2]]

LIFT_GENS = [[1, 0], [5, 12], [3, 7], [1, 2], [1, 1]]
LIFT_DUAL = [[0, 1], [12, -5], [1, 0], [3, -1], [5, -2]]
LIFT_S = [[0, 12, 1, 3, 5], [12, 0, 5, 3, 1], [7, 1, 3, 2, 1], [2, 2, 1, 1, 1], [1, 7, 1, 2, 3]]
LIFT_B = [[0, 2, 0, 1], [0, 0, 2, 1], [1, 0, 1, 1], [2, 0, 0, 1], [1, 1, 0, 1]]
LIFT_C = [[1, 1, 0, 0, 0], [0, 6, 0, 1, 2], [6, 0, 2, 1, 0], [0, 0, 1, 1, 1]]
LIFT_HOM = [[12, 1, 3], [-5, 0, -1]]
LIFT_TOTAL = [[1, 0, 0], [6, 0, 1], [0, 2, 1], [0, 1, 1]]
LIFT_PULLBACKS = {(0, 1): (1, 6, -6), (1, 0): (0, 1, 0), (3, -1): (0, 0, 1), (5, -2): (0, -1, 2),
                  (12, -5): (1, 0, 0)}


class timed:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def random_corpus(count, seed=2024):
    """Positive rank-2 semigroups with generators of numerators <= 8 and denominators <= 2."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        gens = [[Fraction(rng.randint(-8, 8), rng.randint(1, 2)) for _ in range(2)]
                for _ in range(rng.randint(2, 4))]
        G = AffineSemigroup(gens)
        if G.positive and G.rank == 2:
            out.append(G)
    return out


@pytest.fixture(scope="module")
def corpus():
    return random_corpus(200)


@criterion(1, "worked duals")
def test_c01_worked_duals():
    with timed(1):
        L = lattice_from_generators([[2, 0], [1, -1]])
        expected = lattice_from_generators([[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(-1, 2)]])
        Ld = dual_lattice(L)
        assert Ld == expected
        for a, b in product([Fraction(k, 2) for k in range(-6, 7)], repeat=2):
            assert ((a, b) in Ld) == ((a + b).denominator == 1)
        D = dual_semigroup(RUNNING)
        assert sorted(D.hilbert_basis.elements) == [(0, 2), (1, -1)]
        assert sorted(D.generators) == [(0, 2), (1, -1)]


@criterion(2, "slack matrix of the running example")
def test_c02_slack_matrix():
    with timed(1):
        S = slack_matrix(RUNNING)
        assert equal_up_to_permutation(S.matrix, [[0, 1], [2, 0], [3, 0]])
        ok, _ = is_slack_matrix(S.matrix)
        assert ok


@criterion(3, "recognition round trip on 200 random semigroups")
def test_c03_recognition_round_trip(corpus):
    with timed(120):
        for G in corpus:
            S = slack_matrix(G)
            ok, cert = is_slack_matrix(S.matrix)
            assert ok, (G.generators, cert)
            emb = isomorphism_embedding(G, samples=20)
            assert row_semigroup(S.matrix).minimal_generators == tuple(sorted(emb.images.values()))
            # b -> (<a_i, b>)_i is injective and carries the dual generators onto the columns
            cols = la.transpose(S.matrix)
            assert la.rank(cols) == G.rank
            assert col_semigroup(S.matrix).minimal_generators == tuple(sorted(map(tuple, cols)))
            D = dual_semigroup(G)
            assert sorted(tuple(la.dot(a, b) for a in S.row_labels) for b in D.generators) == sorted(cols)


@criterion(4, "double dual is the normalization")
def test_c04_double_dual(corpus):
    with timed(120):
        normal_seen = 0
        for G in corpus:
            DD = dual_semigroup(dual_semigroup(G))
            assert DD == normalize(G)
            if G.normal:
                normal_seen += 1
                assert DD == G
        assert 0 < normal_seen < len(corpus)


@criterion(5, "gap example has integer rank 3")
def test_c05_gap_example():
    with timed(1):
        rep = intrank_exact(GAP)
        assert rep.exact == 3 and rep.status == PROVEN
        F = rep.factorization
        assert verify_factorization(GAP, F.B, F.C)
        assert la.rank(GAP) == 2


@criterion(6, "worked lift and its factorization")
def test_c06_worked_lift():
    with timed(5):
        assert verify_factorization(LIFT_S, LIFT_B, LIFT_C)
        base = AffineSemigroup(LIFT_GENS)
        slack = SlackMatrix.from_generators(LIFT_GENS, LIFT_DUAL)
        assert slack.matrix == tuple(map(tuple, LIFT_S))
        assert equal_up_to_permutation(slack_matrix(base).matrix, LIFT_S)
        lift = lift_from_factorization(base, la.transpose(LIFT_B), LIFT_C, slack=slack)
        assert lift.verified and lift.size <= 4
        total = AffineSemigroup(LIFT_TOTAL)
        for b, y in LIFT_PULLBACKS.items():
            assert is_pullback(base, total, LIFT_HOM, y, b)
        hand = make_lift(base, total, LIFT_HOM, slack=slack)
        assert hand.verified and hand.size == 4


@criterion(7, "Fibonacci closed forms")
def test_c07_fibonacci_closed_forms():
    with timed(60):
        for n in range(1, 7):
            F = fib_semigroup(n)  # raises on any closed-form mismatch
            assert F.slack.matrix == closed_form_slack(n)
            assert set(F.semigroup.minimal_generators) == set(F.slack.row_labels)
        for n in range(1, 13):
            assert l1(closed_form_M(n)) == fib(2 * n + 1) + fib(2 * n + 3) - 2


@criterion(8, "Fibonacci rank S_1 = 3")
def test_c08_rank_s1():
    with timed(60):
        rep = intrank_exact(closed_form_slack(1), budget=DEFAULT_BUDGET)
        assert rep.exact == 3 and rep.status == PROVEN


@criterion(8, "Fibonacci rank S_2 = 4")
def test_c08_rank_s2():
    with timed(60):
        rep = intrank_exact(closed_form_slack(2), budget=DEFAULT_BUDGET)
        assert rep.exact == 4 and rep.status == PROVEN


@pytest.mark.slow
@criterion(8, "Fibonacci rank S_3 = 5")
def test_c08_rank_s3():
    with timed(600):
        rep = intrank_exact(closed_form_slack(3), budget=10 ** 8)
        assert rep.exact == 5 and rep.status == PROVEN


@pytest.mark.extended
@criterion(8, "Fibonacci rank S_4 = 6 (optional)")
def test_c08_rank_s4_reachability():
    budget = int(os.environ.get("SEMISLACK_S4_BUDGET", 10 ** 9))
    t0 = time.perf_counter()
    rep = intrank_exact(closed_form_slack(4), budget=budget)
    elapsed = time.perf_counter() - t0
    print(f"S_4: status={rep.status} exact={rep.exact} trace={rep.trace} time={elapsed:.0f}s")
    if rep.status == EXHAUSTED:
        pytest.xfail(f"S_4 not reached within {budget} nodes ({elapsed:.0f}s)")
    assert rep.exact == 6 and rep.status == PROVEN


@criterion(9, "growth inequality holds with equality")
def test_c09_growth_equality():
    with timed(1):
        for n in range(1, 5):
            M, ok = growth_split(n)
            assert ok and lower_bound_l1(M, n + 1, n + 1, 1)
            assert (l1(closed_form_M(n)) + 2) ** 2 == l1(M) + 4
            assert (fib(2 * n + 1) + fib(2 * n + 3)) ** 2 == fib(4 * n + 3) + fib(4 * n + 5) + 2


@criterion(10, "solver agrees with brute force")
def test_c10_oracle_equivalence():
    with timed(300):
        checked = 0
        for entries in product(range(4), repeat=4):
            if any(entries):
                A = [list(entries[:2]), list(entries[2:])]
                assert intrank_exact(A).exact == brute_intrank_small(A), A
                checked += 1
        rng = random.Random(7)
        for _ in range(600):
            n, m = rng.randint(1, 3), rng.randint(1, 3)
            A = [[rng.randint(0, 3) for _ in range(m)] for _ in range(n)]
            if any(map(any, A)):
                assert intrank_exact(A).exact == brute_intrank_small(A), A
                checked += 1
        assert checked >= 500


@criterion(11, "slice property on the worked lift and 50 random lifts")
def test_c11_slice_property():
    with timed(120):
        base = AffineSemigroup(LIFT_GENS)
        slack = SlackMatrix.from_generators(LIFT_GENS, LIFT_DUAL)
        assert check_slice(lift_from_factorization(base, la.transpose(LIFT_B), LIFT_C, slack=slack), box=20)
        assert check_slice(make_lift(base, AffineSemigroup(LIFT_TOTAL), LIFT_HOM, slack=slack), box=20)
        rng = random.Random(11)
        done = 0
        for G in random_corpus(400, seed=99):
            if done == 50:
                break
            N = normalize(G)
            S = slack_matrix(N)
            if rng.random() < 0.5:
                _, lift = min_lift_size(N, budget=2_000)
            else:
                lift = None
            if lift is None:
                lift = lift_from_factorization(N, la.identity(len(S.matrix)), S.matrix, slack=S)
            assert lift.verified
            assert check_slice(lift, box=20)
            done += 1
        assert done == 50
