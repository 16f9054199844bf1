"""Independent reference implementations used only by the tests."""

from fractions import Fraction
from itertools import product

import sympy


def sympy_rank(M):
    return sympy.Matrix([[sympy.Rational(str(x)) for x in r] for r in M]).rank() if M else 0


def fm_in_cone(gens, v):
    """``v`` in the cone of ``gens`` by Fourier-Motzkin elimination of the multipliers.

    System: lambda >= 0 and sum lambda_i g_i = v.  Each equality becomes two
    inequalities; variables are eliminated one at a time.
    """
    k = len(gens)
    n = len(v)
    rows = []  # (coeffs over lambda, rhs) meaning coeffs . lambda <= rhs
    for i in range(k):
        c = [Fraction(0)] * k
        c[i] = Fraction(-1)
        rows.append((c, Fraction(0)))
    for j in range(n):
        c = [Fraction(g[j]) for g in gens]
        rows.append((c, Fraction(v[j])))
        rows.append(([-x for x in c], -Fraction(v[j])))
    def norm(row):
        c, b = row
        s = max([abs(x) for x in c] + [abs(b)]) or Fraction(1)
        return tuple(x / s for x in c), b / s

    for var in range(k):
        pos = [r for r in rows if r[0][var] > 0]
        neg = [r for r in rows if r[0][var] < 0]
        rest = {norm(r) for r in rows if r[0][var] == 0}
        for (cp, bp), (cn, bn) in product(pos, neg):
            a, b = cp[var], -cn[var]
            new = ([b * x + a * y for x, y in zip(cp, cn)], b * bp + a * bn)
            if any(new[0]):
                rest.add(norm(new))
            elif new[1] < 0:
                return False
        rows = [(list(c), b) for c, b in rest]
    return all(rhs >= 0 for _, rhs in rows)


def box_points(n, box):
    return product(range(-box, box + 1), repeat=n)


def brute_hilbert_2d(cone_member, box):
    """Irreducible points of ``Z^2`` in the cone, found inside ``[-box, box]^2``."""
    pts = [p for p in box_points(2, box) if any(p) and cone_member(p)]
    s = set(pts)
    irred = []
    for p in pts:
        if not any(q != p and tuple(a - b for a, b in zip(p, q)) in s for q in pts):
            irred.append(p)
    return sorted(irred)


def _rank_le_one(A):
    n, m = len(A), len(A[0])
    return all(A[i][j] * A[k][l] == A[i][l] * A[k][j]
               for i in range(n) for k in range(n) for j in range(m) for l in range(m))


def brute_intrank_small(A):
    """Integer rank of a nonnegative matrix of size at most 3 x 3 with small entries.

    Rank 0 and 1 are decided by minors (a nonnegative integer rank-one
    matrix always factors over the nonnegative integers).  Rank 2 iff some
    rank-one term ``v w^T <= A`` leaves a remainder of rank at most one.
    Otherwise the rank is ``min(n, m)``.
    """
    n, m = len(A), len(A[0])
    if all(x == 0 for r in A for x in r):
        return 0
    if _rank_le_one(A):
        return 1
    if min(n, m) == 2:
        return 2
    top = max(max(r) for r in A)
    for v in product(range(top + 1), repeat=n):
        for w in product(range(top + 1), repeat=m):
            R = [[A[i][j] - v[i] * w[j] for j in range(m)] for i in range(n)]
            if all(x >= 0 for r in R for x in r) and _rank_le_one(R):
                return 2
    return min(n, m)
