"""The Fibonacci family of two-dimensional normal semigroups.

For ``n >= 1`` the semigroup is ``Z^2 ∩ {0 <= F(2n) y <= F(2n+2) x}``.  Its
minimal generators, dual generators and slack matrix have closed forms;
this module builds them both ways and checks that they agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from . import exact_linalg as la
from .cone import cone_from_inequalities
from .exact_linalg import IntMat, IntVec
from .intrank import RankReport, intrank_exact, l1, lower_bound_l1
from .lattice import Lattice
from .semigroup import AffineSemigroup, dual_semigroup, hilbert_basis
from .slack import SlackMatrix


@lru_cache(maxsize=None)
def _fib_nonneg(k: int) -> int:
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def fib(k: int) -> int:
    """Fibonacci numbers with ``F(-m) = (-1)^(m+1) F(m)``."""
    if k >= 0:
        return _fib_nonneg(k)
    m = -k
    return (-1) ** (m + 1) * _fib_nonneg(m)


def generators_A(n: int) -> List[IntVec]:
    """Minimal generators in slack-row order."""
    out = [(fib(2 * n), fib(2 * n + 2)), (1, 0)]
    out += [(fib(2 * k - 1), fib(2 * k + 1)) for k in range(0, n + 1)]
    return out


def generators_B(n: int) -> List[IntVec]:
    """Dual generators in slack-column order."""
    return [(0, 1)] + [(fib(2 * l + 2), -fib(2 * l)) for l in range(0, n + 1)]


def closed_form_slack(n: int) -> IntMat:
    top = [fib(2 * n + 2)] + [fib(2 * (n - l)) for l in range(0, n + 1)]
    second = [0] + [fib(2 * l + 2) for l in range(0, n + 1)]
    rest = [[fib(2 * k + 1)] + [fib(2 * (k - l) - 1) for l in range(0, n + 1)] for k in range(0, n + 1)]
    return tuple(tuple(r) for r in [top, second] + rest)


def closed_form_M(n: int) -> IntMat:
    """Entry ``(i, j)`` (1-based) is ``F(2(i-j)-1)``."""
    return tuple(tuple(fib(2 * (i - j) - 1) for j in range(1, n + 2)) for i in range(1, n + 2))


def M_from_slack(S: IntMat) -> IntMat:
    return tuple(tuple(row[1:]) for row in S[2:])


@dataclass(frozen=True)
class FibFamily:
    n: int
    semigroup: AffineSemigroup
    slack: SlackMatrix
    M: IntMat


def fib_semigroup(n: int) -> FibFamily:
    """Build the family member from its inequalities and check every closed form."""
    if n < 1:
        raise ValueError("n must be at least 1")
    a, b = fib(2 * n), fib(2 * n + 2)
    cone = cone_from_inequalities([[0, a], [b, -a]], 2)
    hb = hilbert_basis(Lattice.standard(2), cone, dim_cap=2)
    A = generators_A(n)
    if set(hb.elements) != set(A) or len(A) != len(hb.elements):
        raise AssertionError(f"minimal generators disagree with the closed form at n={n}")
    G = AffineSemigroup(hb.elements)
    dual = dual_semigroup(G)
    B = generators_B(n)
    if set(dual.generators) != set(B) or len(B) != len(dual.generators):
        raise AssertionError(f"dual generators disagree with the closed form at n={n}")
    S = SlackMatrix.from_generators(A, B)
    if S.matrix != closed_form_slack(n):
        raise AssertionError(f"slack matrix disagrees with the closed form at n={n}")
    M = M_from_slack(S.matrix)
    if M != closed_form_M(n):
        raise AssertionError(f"M disagrees with the index formula at n={n}")
    return FibFamily(n, G, S, M)


def fib_identities(n: int) -> Dict[str, bool]:
    """Check the Fibonacci identities used for the family, for indices up to ``n``."""
    ks = range(1, n + 1)
    rep = {
        "catalan": all(fib(2 * k + 2) * fib(2 * k - 2) == fib(2 * k) ** 2 - 1 for k in ks),
        "docagne": all(
            fib(p) * fib(q + 1) - fib(p + 1) * fib(q) == (-1) ** q * fib(p - q)
            for p in range(-2 * n, 2 * n + 3) for q in range(-2 * n, 2 * n + 3)
        ),
        "entry_formula": all(
            la.dot((fib(2 * k - 1), fib(2 * k + 1)), (fib(2 * l + 2), -fib(2 * l))) == fib(2 * (k - l) - 1)
            for k in range(0, n + 1) for l in range(0, n + 1)
        ),
        "growth_equality": all(
            (fib(2 * k + 1) + fib(2 * k + 3)) ** 2 == fib(4 * k + 3) + fib(4 * k + 5) + 2 for k in ks
        ),
        "norm_M": all(l1(closed_form_M(k)) == fib(2 * k + 1) + fib(2 * k + 3) - 2 for k in ks),
        "slopes_decreasing": all(
            Fraction(fib(2 * k + 4), fib(2 * k + 2)) < Fraction(fib(2 * k + 2), fib(2 * k)) for k in ks
        ),
    }
    return rep


def growth_split(n: int) -> Tuple[IntMat, bool]:
    """``M(2n+1)`` and whether the block inequality holds for its ``M(n)`` blocks."""
    M = closed_form_M(2 * n + 1)
    k = n + 1
    assert tuple(r[:k] for r in M[:k]) == closed_form_M(n)
    assert tuple(r[k:] for r in M[k:]) == closed_form_M(n)
    return M, lower_bound_l1(M, k, k, 1)


@dataclass
class RankRow:
    n: int
    lower_bounds: Dict[str, int]
    exact: Optional[int]
    status: str
    growth_certified: bool

    def to_json(self) -> dict:
        return {"n": self.n, "lower_bounds": self.lower_bounds, "exact": self.exact,
                "status": self.status, "growth_certified": self.growth_certified}


def fib_rank_suite(n_max: int, budget: Optional[int] = None) -> List[RankRow]:
    rows = []
    for n in range(1, n_max + 1):
        S = closed_form_slack(n)
        rep: RankReport = intrank_exact(S, budget=budget)
        rows.append(RankRow(n, rep.lower_bounds, rep.exact, rep.status, growth_split(n)[1]))
    return rows
