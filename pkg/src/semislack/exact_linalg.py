"""Exact dense integer/rational matrices and integer normal forms.

Matrices are tuples of row tuples; entries are ``int`` or ``Fraction``.
Nothing in this package touches floating point.

Hermite normal form convention (row style): ``U @ M == H`` with ``U``
unimodular, ``H`` in row echelon form, every pivot positive and every entry
above a pivot reduced into ``[0, pivot)``.  Zero rows sit at the bottom.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from typing import Iterable, Optional, Sequence, Tuple, Union

Number = Union[int, Fraction]
Vec = Tuple[Number, ...]
Mat = Tuple[Vec, ...]
IntVec = Tuple[int, ...]
IntMat = Tuple[IntVec, ...]


# ---------------------------------------------------------------------------
# parsing / construction


def as_rational(x) -> Number:
    """Coerce ``x`` to an exact number.  Integral values come back as ``int``.

    Accepts ints, Fractions and strings like ``"3/2"``.  Floats are refused:
    they cannot represent the inputs this library is about.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        f = Fraction(x.strip())
        return f.numerator if f.denominator == 1 else f
    if isinstance(x, Rational):
        return as_rational(Fraction(x.numerator, x.denominator))
    raise TypeError(f"not an exact rational: {x!r}")


def vec(xs: Iterable) -> Vec:
    return tuple(as_rational(x) for x in xs)


def mat(rows: Iterable[Iterable]) -> Mat:
    m = tuple(vec(r) for r in rows)
    if m and len({len(r) for r in m}) != 1:
        raise ValueError("ragged matrix")
    return m


def int_mat(rows: Iterable[Iterable]) -> IntMat:
    m = mat(rows)
    for r in m:
        for x in r:
            if not isinstance(x, int):
                raise ValueError(f"non-integer entry {x}")
    return m  # type: ignore[return-value]


def shape(M: Sequence[Sequence]) -> Tuple[int, int]:
    return (len(M), len(M[0]) if M else 0)


def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def zeros(n: int, m: int) -> IntMat:
    return tuple((0,) * m for _ in range(n))


def transpose(M: Sequence[Sequence]) -> Mat:
    return tuple(zip(*M))


def _norm(x: Number) -> Number:
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def dot(u: Sequence[Number], v: Sequence[Number]) -> Number:
    return _norm(sum(a * b for a, b in zip(u, v)))


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Mat:
    if A and B and len(A[0]) != len(B):
        raise ValueError(f"shape mismatch: {shape(A)} @ {shape(B)}")
    cols = tuple(zip(*B))
    return tuple(tuple(dot(r, c) for c in cols) for r in A)


def vecmat(v: Sequence[Number], M: Sequence[Sequence]) -> Vec:
    """Row vector times matrix."""
    if not M:
        return ()
    return tuple(_norm(sum(v[i] * M[i][j] for i in range(len(M)))) for j in range(len(M[0])))


def matvec(M: Sequence[Sequence], v: Sequence[Number]) -> Vec:
    return tuple(dot(r, v) for r in M)


def add(u, v) -> Vec:
    return tuple(_norm(a + b) for a, b in zip(u, v))


def sub(u, v) -> Vec:
    return tuple(_norm(a - b) for a, b in zip(u, v))


def scale(c, v) -> Vec:
    return tuple(_norm(c * a) for a in v)


def is_zero(v) -> bool:
    return not any(v)


def denominator_lcm(xs: Iterable[Number]) -> int:
    d = 1
    for x in xs:
        if isinstance(x, Fraction):
            d = lcm(d, x.denominator)
    return d


def primitive(v: Sequence[Number]) -> IntVec:
    """Smallest positive integer multiple of ``v`` with coprime entries."""
    d = denominator_lcm(v)
    w = [int(x * d) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        return tuple(w)
    return tuple(x // g for x in w)


def clear_denominators(M: Sequence[Sequence[Number]]) -> Tuple[IntMat, int]:
    """Return ``(d*M, d)`` with ``d`` the least common denominator."""
    d = denominator_lcm(x for r in M for x in r)
    return tuple(tuple(int(x * d) for x in r) for r in M), d


# ---------------------------------------------------------------------------
# elimination over Q


def rref(M: Sequence[Sequence[Number]]) -> Tuple[Mat, Tuple[int, ...]]:
    """Reduced row echelon form over Q; returns the nonzero rows and pivots."""
    A = [[Fraction(x) for x in r] for r in M]
    rows, cols = shape(A)
    piv = []
    rk = 0
    for c in range(cols):
        p = next((r for r in range(rk, rows) if A[r][c]), None)
        if p is None:
            continue
        A[rk], A[p] = A[p], A[rk]
        inv = 1 / A[rk][c]
        A[rk] = [x * inv for x in A[rk]]
        for r in range(rows):
            if r != rk and A[r][c]:
                f = A[r][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[rk])]
        piv.append(c)
        rk += 1
    return tuple(tuple(_norm(x) for x in r) for r in A[:rk]), tuple(piv)


def rank(M: Sequence[Sequence[Number]]) -> int:
    """Exact rank via fraction-free (Bareiss) elimination."""
    if not M:
        return 0
    A, _ = clear_denominators(M)
    A = [list(r) for r in A]
    rows, cols = shape(A)
    rk = 0
    prev = 1
    for c in range(cols):
        p = next((r for r in range(rk, rows) if A[r][c]), None)
        if p is None:
            continue
        A[rk], A[p] = A[p], A[rk]
        pv = A[rk][c]
        for r in range(rk + 1, rows):
            a = A[r][c]
            A[r] = [(pv * x - a * y) // prev for x, y in zip(A[r], A[rk])]
        prev = pv
        rk += 1
        if rk == rows:
            break
    return rk


def det(M: Sequence[Sequence[Number]]) -> Number:
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("det of non-square matrix")
    A = [[Fraction(x) for x in r] for r in M]
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return _norm(d)


def nullspace(M: Sequence[Sequence[Number]], ncols: Optional[int] = None) -> Mat:
    """Rational basis (rows) of ``{x : M x = 0}``."""
    n = ncols if ncols is not None else shape(M)[1]
    R, piv = rref(M) if M else ((), ())
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for row, p in zip(R, piv):
            x[p] = -Fraction(row[f])
        basis.append(tuple(_norm(v) for v in x))
    return tuple(basis)


def row_basis(M: Sequence[Sequence[Number]]) -> Mat:
    """A basis of the row space (the nonzero rows of the rref)."""
    return rref(M)[0] if M else ()


def solve_rational(B: Sequence[Sequence[Number]], v: Sequence[Number]) -> Optional[Vec]:
    """Coefficients ``c`` with ``c @ B == v`` for independent rows ``B``, or None."""
    k = len(B)
    if k == 0:
        return () if is_zero(v) else None
    aug = [list(col) + [x] for col, x in zip(transpose(B), v)]
    R, piv = rref(aug)
    if k in piv:
        return None
    c = [Fraction(0)] * k
    for row, p in zip(R, piv):
        c[p] = Fraction(row[k])
    return tuple(_norm(x) for x in c)


def inverse(M: Sequence[Sequence[Number]]) -> Mat:
    n = len(M)
    aug = [list(r) + list(e) for r, e in zip(M, identity(n))]
    R, piv = rref(aug)
    if tuple(piv[:n]) != tuple(range(n)) or len(R) < n:
        raise ValueError("singular matrix")
    return tuple(tuple(r[n:]) for r in R)


# ---------------------------------------------------------------------------
# integer normal forms


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        a, s0, t0 = -a, -s0, -t0
    return a, s0, t0


def hnf(M: Sequence[Sequence[int]]) -> Tuple[IntMat, IntMat]:
    """Row-style Hermite normal form.  Returns ``(H, U)`` with ``U @ M == H``.

    >>> hnf([[2, 0], [1, -1]])[0]
    ((1, 1), (0, 2))
    """
    A = [list(map(int, r)) for r in M]
    rows, cols = shape(A)
    U = [list(r) for r in identity(rows)]
    pr = 0
    for c in range(cols):
        if pr == rows:
            break
        for r in range(pr + 1, rows):
            if A[r][c] == 0:
                continue
            a, b = A[pr][c], A[r][c]
            g, s, t = xgcd(a, b)
            x, y = a // g, b // g
            A[pr], A[r] = (
                [s * p + t * q for p, q in zip(A[pr], A[r])],
                [-y * p + x * q for p, q in zip(A[pr], A[r])],
            )
            U[pr], U[r] = (
                [s * p + t * q for p, q in zip(U[pr], U[r])],
                [-y * p + x * q for p, q in zip(U[pr], U[r])],
            )
        if A[pr][c] == 0:
            continue
        if A[pr][c] < 0:
            A[pr] = [-x for x in A[pr]]
            U[pr] = [-x for x in U[pr]]
        p = A[pr][c]
        for r in range(pr):
            q = A[r][c] // p
            if q:
                A[r] = [x - q * y for x, y in zip(A[r], A[pr])]
                U[r] = [x - q * y for x, y in zip(U[r], U[pr])]
        pr += 1
    return tuple(map(tuple, A)), tuple(map(tuple, U))


def snf(M: Sequence[Sequence[int]]) -> Tuple[IntMat, IntMat, IntMat]:
    """Smith normal form: ``(D, U, V)`` with ``U @ M @ V == D``.

    ``D`` is diagonal with nonnegative entries and ``D[i][i]`` divides
    ``D[i+1][i+1]``.
    """
    A = [list(map(int, r)) for r in M]
    n, m = shape(A)
    U = [list(r) for r in identity(n)]
    V = [list(r) for r in identity(m)]

    def row_combo(i, j, s, t, u, v):
        # rows (i, j) <- (s*Ri + t*Rj, u*Ri + v*Rj)
        for X in (A, U):
            X[i], X[j] = (
                [s * a + t * b for a, b in zip(X[i], X[j])],
                [u * a + v * b for a, b in zip(X[i], X[j])],
            )

    def col_combo(i, j, s, t, u, v):
        for X in (A, V):
            for row in X:
                a, b = row[i], row[j]
                row[i], row[j] = s * a + t * b, u * a + v * b

    for k in range(min(n, m)):
        # bring a nonzero entry of the trailing block to (k, k)
        nz = next(((i, j) for i in range(k, n) for j in range(k, m) if A[i][j]), None)
        if nz is None:
            break
        i, j = nz
        if i != k:
            A[k], A[i] = A[i], A[k]
            U[k], U[i] = U[i], U[k]
        if j != k:
            for X in (A, V):
                for row in X:
                    row[k], row[j] = row[j], row[k]
        while True:
            done = True
            for i in range(k + 1, n):
                if A[i][k]:
                    a, b = A[k][k], A[i][k]
                    if b % a == 0:
                        row_combo(k, i, 1, 0, -(b // a), 1)
                    else:
                        g, s, t = xgcd(a, b)
                        row_combo(k, i, s, t, -b // g, a // g)
            for j in range(k + 1, m):
                if A[k][j]:
                    a, b = A[k][k], A[k][j]
                    if b % a == 0:
                        col_combo(k, j, 1, 0, -(b // a), 1)
                    else:
                        g, s, t = xgcd(a, b)
                        col_combo(k, j, s, t, -b // g, a // g)
                    done = False
            if any(A[i][k] for i in range(k + 1, n)):
                continue
            if done or not any(A[k][j] for j in range(k + 1, m)):
                # enforce divisibility against the rest of the block
                p = A[k][k]
                bad = next(
                    ((i, j) for i in range(k + 1, n) for j in range(k + 1, m) if A[i][j] % p),
                    None,
                )
                if bad is None:
                    break
                i, _ = bad
                row_combo(k, i, 1, 1, 0, 1)
        if A[k][k] < 0:
            A[k] = [-x for x in A[k]]
            U[k] = [-x for x in U[k]]
    return tuple(map(tuple, A)), tuple(map(tuple, U)), tuple(map(tuple, V))


def solve_diophantine(
    A: Sequence[Sequence[int]], b: Sequence[int]
) -> Optional[Tuple[IntVec, Tuple[IntVec, ...]]]:
    """Integer solution of ``A x = b`` plus an integer kernel basis, or None.

    The kernel basis is returned in Hermite normal form so it is canonical.
    """
    n, m = shape(A)
    if n == 0:
        return (), ()
    if len(b) != n:
        raise ValueError("right-hand side has wrong length")
    D, U, V = snf(A)
    c = matvec(U, b)
    y = [0] * m
    r = 0
    for i in range(min(n, m)):
        if D[i][i] == 0:
            break
        q, rem = divmod(c[i], D[i][i])
        if rem:
            return None
        y[i] = q
        r += 1
    if any(c[i] for i in range(r, n)):
        return None
    x0 = matvec(V, y)
    ker = tuple(tuple(V[i][j] for i in range(m)) for j in range(r, m))
    if ker:
        H, _ = hnf(ker)
        ker = tuple(h for h in H if any(h))
    return tuple(int(x) for x in x0), ker
