"""Nonnegative integer rank: exact branch-and-bound search and lower bounds.

A factorization is ``A = B @ C`` with ``B`` (n x r) and ``C`` (r x m)
nonnegative integer matrices.  Equivalently ``A`` is a sum of ``r`` rank-one
terms ``v w^T`` with ``v, w`` nonnegative integer vectors, which is how the
search builds it.

Search outline, for a fixed target ``r``:

* pick a nonzero residual entry ``(i, j)`` (the one with the fewest
  candidate terms, ties broken lexicographically);
* branch over every term ``v w^T <= residual`` with ``v_i, w_j > 0`` and
  ``gcd(v) = 1``, in lexicographically decreasing order of ``(v, w)``;
* prune when the rational rank of the residual exceeds the terms left, and
  when it equals them restrict ``v`` to the column space and ``w`` to the
  row space of the residual;
* when two consecutive levels branch on the same entry, the second term
  may not exceed the first (the terms covering one entry are unordered);
* remember failed ``(residual, terms left, bound)`` states.

The walk is deterministic, so the witness is reproducible and the per-``r``
node counts in the trace can be replayed exactly.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from itertools import product
from math import gcd, prod
from typing import Dict, List, Optional, Sequence, Tuple

from . import exact_linalg as la
from .exact_linalg import IntMat

DEFAULT_BUDGET = 10 ** 7
# failed states kept before the memo is flushed (bounds memory on long searches)
MEMO_LIMIT = 1_000_000
BUDGET_ENV = "SEMIGROUP_SLACK_BUDGET"

PROVEN = "proven-optimal"
BOUNDS_ONLY = "bounds-only"
EXHAUSTED = "budget-exhausted"


def default_budget() -> int:
    env = os.environ.get(BUDGET_ENV)
    return int(env) if env else DEFAULT_BUDGET


@dataclass(frozen=True)
class Factorization:
    A: IntMat
    B: IntMat
    C: IntMat

    def __post_init__(self):
        if not verify_factorization(self.A, self.B, self.C):
            raise ValueError("not a nonnegative integer factorization")

    @property
    def size(self) -> int:
        return len(self.C)

    def to_json(self) -> dict:
        return {"A": [list(r) for r in self.A], "B": [list(r) for r in self.B],
                "C": [list(r) for r in self.C], "size": self.size}


@dataclass
class RankReport:
    lower_bounds: Dict[str, int]
    exact: Optional[int] = None
    factorization: Optional[Factorization] = None
    status: str = BOUNDS_ONLY
    trace: List[Tuple[int, int, str]] = field(default_factory=list)

    @property
    def lower(self) -> int:
        return max(self.lower_bounds.values())

    def to_json(self) -> dict:
        out = {
            "lower_bounds": dict(self.lower_bounds),
            "exact": self.exact,
            "status": self.status,
            "trace": [{"r": r, "nodes": n, "outcome": o} for r, n, o in self.trace],
        }
        if self.factorization is not None:
            out["factorization"] = self.factorization.to_json()
        return out


def _as_nonneg(A) -> IntMat:
    M = la.int_mat(A)
    if not M or not M[0]:
        raise ValueError("empty matrix")
    if any(x < 0 for r in M for x in r):
        raise ValueError("matrix has negative entries")
    return M


def verify_factorization(A, B, C) -> bool:
    A, B, C = la.int_mat(A), la.int_mat(B), la.int_mat(C)
    n, m = la.shape(A)
    if len(B) != n or (C and len(C[0]) != m) or any(len(r) != len(C) for r in B):
        raise ValueError("shape mismatch")
    if any(x < 0 for M in (A, B, C) for r in M for x in r):
        return False
    if not C:
        return all(x == 0 for r in A for x in r)
    return la.matmul(B, C) == A


def l1(A) -> int:
    return sum(sum(r) for r in A)


def lower_bound_l1(A, p: int, q: int, r: int) -> bool:
    """Block inequality for ``A = [[A1, *], [*, A2]]`` with ``A1 = A[:p, :q]``.

    True certifies ``rank >= r + 1`` provided both blocks have rank ``r``.
    """
    A = _as_nonneg(A)
    n, m = la.shape(A)
    if not (0 < p < n and 0 < q < m):
        raise ValueError("invalid block split")
    if r < 1:
        raise ValueError("block rank must be positive")
    A1 = [row[:q] for row in A[:p]]
    A2 = [row[q:] for row in A[p:]]
    return (l1(A1) + 2) * (l1(A2) + 2) <= l1(A) + 4


# ---------------------------------------------------------------------------
# support-based bounds

def _supports(A: IntMat) -> List[int]:
    return [sum(1 << j for j, x in enumerate(row) if x) for row in A]


def _maximal_rectangles(A: IntMat) -> List[Tuple[int, int]]:
    sup = _supports(A)
    n = len(A)
    rects = set()
    for mask in range(1, 1 << n):
        cols = -1
        for i in range(n):
            if mask >> i & 1:
                cols &= sup[i]
        if cols <= 0:
            continue
        rows = sum(1 << i for i in range(n) if sup[i] & cols == cols)
        rects.add((rows, cols))
    return sorted(rects)


def _cells(rows: int, cols: int, m: int) -> int:
    out = 0
    i = 0
    while rows:
        if rows & 1:
            out |= cols << (i * m)
        rows >>= 1
        i += 1
    return out


def boolean_rank(A) -> int:
    """Fewest all-nonzero combinatorial rectangles covering the support."""
    A = _as_nonneg(A)
    m = len(A[0])
    target = sum(1 << (i * m + j) for i, row in enumerate(A) for j, x in enumerate(row) if x)
    if not target:
        return 0
    rects = [_cells(r, c, m) for r, c in _maximal_rectangles(A)]

    def cover(covered: int, k: int) -> bool:
        left = target & ~covered
        if not left:
            return True
        if k == 0:
            return False
        cell = left & -left
        return any(cover(covered | R, k - 1) for R in rects if R & cell)

    k = 1
    while not cover(0, k):
        k += 1
    return k


def fooling_set_bound(A) -> int:
    """Size of a greedy fooling set (row-major scan)."""
    A = _as_nonneg(A)
    chosen: List[Tuple[int, int]] = []
    for i, row in enumerate(A):
        for j, x in enumerate(row):
            if x and all(A[i][l] == 0 or A[k][j] == 0 for k, l in chosen):
                chosen.append((i, j))
    return len(chosen)


def capacitated_cover(A, start: int, budget: int = 200_000) -> Optional[int]:
    """Fewest rectangles covering the support with entry ``(i, j)`` hit at most ``A[i][j]`` times.

    Every factorization gives such a cover (one rectangle per term, each
    term contributes at least one to every entry it touches), so this is a
    lower bound on the integer rank.  Returns None when the budget runs out.
    """
    A = _as_nonneg(A)
    n, m = la.shape(A)
    cells = [(i, j) for i in range(n) for j in range(m) if A[i][j]]
    if not cells:
        return 0
    sub_rects = set()
    for rows, cols in _maximal_rectangles(A):
        rl = [i for i in range(n) if rows >> i & 1]
        cl = [j for j in range(m) if cols >> j & 1]
        for rs in range(1, 1 << len(rl)):
            rr = [rl[t] for t in range(len(rl)) if rs >> t & 1]
            for cs in range(1, 1 << len(cl)):
                sub_rects.add((tuple(rr), tuple(cl[t] for t in range(len(cl)) if cs >> t & 1)))
    by_cell: Dict[Tuple[int, int], List] = {c: [] for c in cells}
    for rr, cc in sorted(sub_rects, key=lambda x: (-len(x[0]) * len(x[1]), x)):
        pts = [(i, j) for i in rr for j in cc]
        for p in pts:
            by_cell[p].append(pts)
    nodes = 0

    class _Out(Exception):
        pass

    def go(count: Dict, k: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise _Out
        free = next((c for c in cells if count[c] == 0), None)
        if free is None:
            return True
        if k == 0:
            return False
        for pts in by_cell[free]:
            if all(count[p] < A[p[0]][p[1]] for p in pts):
                for p in pts:
                    count[p] += 1
                ok = go(count, k - 1)
                for p in pts:
                    count[p] -= 1
                if ok:
                    return True
        return False

    k = max(start, 1)
    try:
        while not go({c: 0 for c in cells}, k):
            k += 1
    except _Out:
        return None
    return k


def support_cover_bound(A) -> int:
    A = _as_nonneg(A)
    n, m = la.shape(A)
    if n <= 8 and m <= 8:
        b = boolean_rank(A)
        if n * m <= 25:
            c = capacitated_cover(A, b)
            if c is not None:
                b = max(b, c)
        return b
    return fooling_set_bound(A)


def l1_norm_recursive(A, budget: int = 100_000) -> int:
    """Best bound from the block inequality over all diagonal block splits.

    Block ranks come from the exact solver under a small budget; splits
    whose blocks are unresolved or of unequal rank are skipped.  Falls back
    to the largest proven block rank (ranks never grow under deletion).
    """
    A = _as_nonneg(A)
    n, m = la.shape(A)
    best = 0
    for p in range(1, n):
        for q in range(1, m):
            if not lower_bound_l1(A, p, q, 1):
                continue
            A1 = tuple(row[:q] for row in A[:p])
            A2 = tuple(row[q:] for row in A[p:])
            if not any(any(r) for r in A1) or not any(any(r) for r in A2):
                continue
            r1 = intrank_exact(A1, budget=budget)
            r2 = intrank_exact(A2, budget=budget)
            if r1.status == PROVEN and r2.status == PROVEN and r1.exact == r2.exact:
                best = max(best, r1.exact + 1)
    return best


def lower_bounds(A) -> Dict[str, int]:
    A = _as_nonneg(A)
    return {
        "real_rank": la.rank(A),
        "support_cover": support_cover_bound(A),
        "l1_norm_recursive": l1_norm_recursive(A),
    }


# ---------------------------------------------------------------------------
# exact search

class _BudgetExhausted(Exception):
    pass


def _descending(hi, pos, bound):
    """Integer vectors ``0 <= x <= hi`` with ``x[pos] >= 1`` and ``x <= bound``, lex-decreasing."""
    n = len(hi)
    x = [0] * n

    def rec(k, tight):
        if k == n:
            yield tuple(x)
            return
        top = min(hi[k], bound[k]) if tight else hi[k]
        for a in range(top, (1 if k == pos else 0) - 1, -1):
            x[k] = a
            yield from rec(k + 1, tight and a == bound[k])

    return rec(0, bound is not None)


def _int_rank(R) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    M = [list(r) for r in R if any(r)]
    if not M:
        return 0
    rows, cols = len(M), len(M[0])
    rk, prev = 0, 1
    for c in range(cols):
        p = next((k for k in range(rk, rows) if M[k][c]), None)
        if p is None:
            continue
        M[rk], M[p] = M[p], M[rk]
        a = M[rk][c]
        for k in range(rk + 1, rows):
            b = M[k][c]
            M[k] = [(a * x - b * y) // prev for x, y in zip(M[k], M[rk])]
        prev = a
        rk += 1
        if rk == rows:
            break
    return rk


def _span_basis(R):
    """Integer form ``(rows, pivots, d)`` of the RREF of ``R``: RREF rows are ``rows / d``."""
    M = [list(r) for r in R if any(r)]
    piv = []
    rk = 0
    for c in range(len(M[0]) if M else 0):
        p = next((k for k in range(rk, len(M)) if M[k][c]), None)
        if p is None:
            continue
        M[rk], M[p] = M[p], M[rk]
        a = M[rk][c]
        for k in range(len(M)):
            b = M[k][c]
            if k != rk and b:
                row = [a * x - b * y for x, y in zip(M[k], M[rk])]
                g = 0
                for x in row:
                    g = gcd(g, x)
                M[k] = [x // g for x in row] if g > 1 else row
        piv.append(c)
        rk += 1
    M = M[:rk]
    for k, c in enumerate(piv):
        if M[k][c] < 0:
            M[k] = [-x for x in M[k]]
    d = 1
    for k, c in enumerate(piv):
        d = d * M[k][c] // gcd(d, M[k][c])
    rows = tuple(tuple(x * (d // M[k][c]) for x in M[k]) for k, c in enumerate(piv))
    return rows, tuple(piv), d


def _in_span(hi, pos, bound, basis):
    """As ``_descending``, restricted to the row space of an RREF ``basis``.

    Vectors of the space are lex-ordered like their pivot coordinates, so
    enumerating those downwards keeps the lex-decreasing order.
    """
    rows, piv, d = basis
    n = len(hi)
    for c in product(*(range(hi[p], -1, -1) for p in piv)):
        x = [0] * n
        for a, row in zip(c, rows):
            if a:
                for k, b in enumerate(row):
                    if b:
                        x[k] += a * b
        if d != 1:
            if any(t % d for t in x):
                continue
            x = [t // d for t in x]
        if x[pos] < 1 or any(t < 0 or t > h for t, h in zip(x, hi)):
            continue
        x = tuple(x)
        if bound is not None and x > bound:
            continue
        yield x


class _Search:
    def __init__(self, budget: int):
        self.budget = budget
        self.nodes = 0
        self.failed: set = set()

    def _pivot(self, R) -> Optional[Tuple[int, int]]:
        best = None
        colprod = [prod(x + 1 for x in col) for col in zip(*R)]
        for i, row in enumerate(R):
            for j, x in enumerate(row):
                if x:
                    cost = colprod[j] // (x + 1) * x
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
        return None if best is None else (best[1], best[2])

    def _terms(self, R, i, j, spans, bound):
        n, m = len(R), len(R[0])
        col = tuple(R[k][j] for k in range(n))
        vb = bound[0] if bound is not None else None
        vs = _descending(col, i, vb) if spans is None else _in_span(col, i, vb, spans[0])
        for v in vs:
            g = 0
            for x in v:
                g = gcd(g, x)
            if g != 1:
                continue
            wmax = tuple(min(R[k][l] // v[k] for k in range(n) if v[k]) for l in range(m))
            if wmax[j] < 1:
                continue
            wb = bound[1] if bound is not None and v == bound[0] else None
            ws = _descending(wmax, j, wb) if spans is None else _in_span(wmax, j, wb, spans[1])
            for w in ws:
                yield v, w

    def run(self, R, r: int, last=None):
        """Terms summing to ``R``, at most ``r`` of them, or None."""
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted
        piv = self._pivot(R)
        if piv is None:
            return []
        if r == 0:
            return None
        bound = last[1] if last is not None and last[0] == piv else None
        key = (R, r, bound)
        if key in self.failed:
            return None
        rk = _int_rank(R)
        if rk > r:
            self._remember(key)
            return None
        if r == 1:
            return [_rank_one_split(R)]
        n, m = len(R), len(R[0])
        spans = (_span_basis(la.transpose(R)), _span_basis(R)) if rk == r else None
        i, j = piv
        for v, w in self._terms(R, i, j, spans, bound):
            R2 = tuple(tuple(R[k][l] - v[k] * w[l] for l in range(m)) for k in range(n))
            res = self.run(R2, r - 1, (piv, (v, w)))
            if res is not None:
                return [(v, w)] + res
        self._remember(key)
        return None

    def _remember(self, key) -> None:
        if len(self.failed) >= MEMO_LIMIT:
            self.failed.clear()
        self.failed.add(key)


def _rank_one_split(R) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """``R = v w^T`` for a nonzero nonnegative integer matrix of rank one."""
    row = next(r for r in R if any(r))
    g = 0
    for x in row:
        g = gcd(g, x)
    w = tuple(x // g for x in row)
    l0 = next(l for l, x in enumerate(w) if x)
    v = tuple(r[l0] // w[l0] for r in R)
    return v, w


def _terms_to_factorization(A: IntMat, terms) -> Factorization:
    n, m = la.shape(A)
    B = tuple(tuple(v[k] for v, _ in terms) for k in range(n))
    C = tuple(tuple(w) for _, w in terms)
    return Factorization(A, B, C)


def _trivial_factorization(A: IntMat) -> Factorization:
    n, m = la.shape(A)
    rows = [i for i in range(n) if any(A[i])]
    cols = [j for j in range(m) if any(A[i][j] for i in range(n))]
    if len(rows) <= len(cols):
        B = tuple(tuple(1 if i == k else 0 for k in rows) for i in range(n))
        C = tuple(A[k] for k in rows)
    else:
        B = tuple(tuple(A[i][k] for k in cols) for i in range(n))
        C = tuple(tuple(1 if j == k else 0 for j in range(m)) for k in cols)
    return Factorization(A, B, C)


def intrank_exact(A, max_r: Optional[int] = None, budget: Optional[int] = None,
                  *, bounds_only: bool = False, bounds: Optional[Dict[str, int]] = None) -> RankReport:
    """Nonnegative integer rank of ``A`` by increasing ``r`` from the best lower bound."""
    A = _as_nonneg(A)
    if not any(any(r) for r in A):
        raise ValueError("matrix is zero")
    budget = default_budget() if budget is None else budget
    lb = dict(lower_bounds(A) if bounds is None else bounds)
    report = RankReport(lb)
    if bounds_only:
        return report
    n, m = la.shape(A)
    nz_rows = sum(1 for r in A if any(r))
    nz_cols = sum(1 for j in range(m) if any(A[i][j] for i in range(n)))
    trivial = min(nz_rows, nz_cols)
    top = trivial if max_r is None else min(max_r, trivial)
    search = _Search(budget)
    r = report.lower
    while r <= top:
        before = search.nodes
        if r == trivial:
            report.trace.append((r, 0, "found"))
            report.factorization = _trivial_factorization(A)
            break
        try:
            terms = search.run(A, r)
        except _BudgetExhausted:
            report.trace.append((r, search.nodes - before, "budget"))
            report.status = EXHAUSTED
            return report
        if terms is not None:
            report.trace.append((r, search.nodes - before, "found"))
            report.factorization = _terms_to_factorization(A, terms)
            break
        report.trace.append((r, search.nodes - before, "infeasible"))
        lb["exhaustive_search"] = r + 1
        r += 1
    if report.factorization is not None:
        report.exact = report.factorization.size
        report.status = PROVEN
    return report
