"""Lattices given by rational bases, kept in a canonical scaled-HNF form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import exact_linalg as la
from .exact_linalg import Mat, Vec


@dataclass(frozen=True)
class Lattice:
    """Integer span of the rows of ``basis``.

    ``basis`` is ``H / scale`` where ``H`` is the Hermite normal form of
    ``scale * basis`` and ``scale`` is the least positive integer making the
    basis integral.  Two lattices are equal iff their fields are equal.
    """

    ambient_dim: int
    basis: Mat
    scale: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def is_full_rank(self) -> bool:
        return self.rank == self.ambient_dim

    @classmethod
    def zero(cls, ambient_dim: int) -> "Lattice":
        return cls(ambient_dim, (), 1)

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls(n, la.identity(n), 1)

    def coordinates(self, v: Sequence) -> Optional[Vec]:
        """Rational coordinates of ``v`` in the basis, None if outside the span."""
        return la.solve_rational(self.basis, la.vec(v))

    def contains(self, other: "Lattice") -> bool:
        return all(lattice_member(self, b) for b in other.basis)

    def __contains__(self, v) -> bool:
        return lattice_member(self, v)

    def to_json(self) -> dict:
        from .formats import encode_matrix

        return {"generators": encode_matrix(self.basis)}


def _canonical(gens: Sequence[Vec], n: int) -> Lattice:
    M, d = la.clear_denominators(gens)
    H, _ = la.hnf(M)
    rows = tuple(r for r in H if any(r))
    basis = tuple(tuple(la._norm(Fraction(x, d)) for x in r) for r in rows)
    return Lattice(n, basis, la.denominator_lcm(x for r in basis for x in r))


def lattice_from_generators(gens: Iterable[Sequence], *, allow_zero: bool = False) -> Lattice:
    """Canonical form of the integer span of ``gens``.

    >>> lattice_from_generators([[2, 0], [1, -1]]).basis
    ((1, 1), (0, 2))
    """
    G = la.mat(gens)
    if not G:
        raise ValueError("empty generator list")
    n = len(G[0])
    if all(la.is_zero(g) for g in G):
        if allow_zero:
            return Lattice.zero(n)
        raise ValueError("zero lattice")
    return _canonical(G, n)


def dual_lattice(L: Lattice) -> Lattice:
    """``{w in span(L) : <w, v> in Z for all v in L}``.

    With basis rows ``B`` the dual basis is ``(B B^T)^{-1} B``, which is the
    inverse transpose when ``L`` has full rank.
    """
    if L.rank == 0:
        return L
    B = L.basis
    gram_inv = la.inverse(la.matmul(B, la.transpose(B)))
    return _canonical(la.matmul(gram_inv, B), L.ambient_dim)


def lattice_member(L: Lattice, v: Sequence) -> bool:
    v = la.vec(v)
    if len(v) != L.ambient_dim:
        raise ValueError("dimension mismatch")
    if la.is_zero(v):
        return True
    c = L.coordinates(v)
    return c is not None and all(isinstance(x, int) for x in c)


def saturate_in_standard(subspace_basis: Sequence[Sequence], l: int) -> Lattice:
    """``Z^l`` intersected with the span of ``subspace_basis``.

    Computed as the integer kernel of an integral basis of the orthogonal
    complement; integer kernels are always saturated.
    """
    B = la.row_basis(la.mat(subspace_basis))
    if not B:
        return Lattice.zero(l)
    perp = la.nullspace(B, l)
    if not perp:
        return Lattice.standard(l)
    N = tuple(la.primitive(p) for p in perp)
    sol = la.solve_diophantine(N, (0,) * len(N))
    assert sol is not None
    return _canonical(sol[1], l)


def lattice_index(sub: Lattice, sup: Lattice) -> int:
    """Index ``[sup : sub]`` for lattices of equal rank with ``sub <= sup``."""
    if sub.rank != sup.rank:
        raise ValueError("lattices of different rank")
    if sub.rank == 0:
        return 1
    coords = [sup.coordinates(b) for b in sub.basis]
    if any(c is None or not all(isinstance(x, int) for x in c) for c in coords):
        raise ValueError("not a sublattice")
    return abs(la.det(coords))
