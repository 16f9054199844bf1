"""Rational polyhedral cones with both descriptions computed exactly.

A ``Cone`` records its extreme rays, its inner facet normals and a basis of
the linear equations cutting out its span.  Facet normals are taken inside
the span, so every cone is full dimensional "in its own span" and duals are
formed there too.  That is the convention the semigroup code needs: the dual
of a semigroup lives in the span of its lattice.

Facets are found by brute force over (d-1)-subsets of generators, which is
fine at the sizes used here; ``dim_cap`` guards against accidental blowups.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence, Tuple

from . import exact_linalg as la
from .exact_linalg import IntVec
from .lattice import saturate_in_standard

DIM_CAP = 6


@dataclass(frozen=True)
class Cone:
    ambient_dim: int
    rays: Tuple[IntVec, ...]
    facets: Tuple[IntVec, ...]
    equations: Tuple[IntVec, ...]
    dim: int
    pointed: bool

    @property
    def full_dim(self) -> bool:
        return self.dim == self.ambient_dim

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @classmethod
    def zero(cls, n: int) -> "Cone":
        return cls(n, (), (), la.identity(n), 0, True)

    def __contains__(self, v) -> bool:
        return cone_member(self, v)

    def contains_cone(self, other: "Cone") -> bool:
        return all(cone_member(self, r) for r in other.rays)

    def positive_functional(self) -> IntVec:
        """Sum of the facet normals; strictly positive on a pointed cone minus 0."""
        if not self.pointed:
            raise ValueError("cone is not pointed")
        phi = [0] * self.ambient_dim
        for f in self.facets:
            phi = [a + b for a, b in zip(phi, f)]
        return tuple(phi)


def _equations(G: Sequence[Sequence], n: int) -> Tuple[IntVec, ...]:
    perp = la.nullspace(G, n) if G else la.identity(n)
    if not perp:
        return ()
    return saturate_in_standard(perp, n).basis


def _facet_normals(G: Sequence[IntVec], eqs: Sequence[IntVec], d: int) -> Tuple[IntVec, ...]:
    found = set()
    for sub in combinations(G, d - 1):
        ns = la.nullspace(list(sub) + list(eqs), len(G[0]))
        if len(ns) != 1:
            continue
        f = la.primitive(ns[0])
        vals = [la.dot(f, g) for g in G]
        if all(x >= 0 for x in vals):
            found.add(f)
        elif all(x <= 0 for x in vals):
            found.add(tuple(-x for x in f))
    return tuple(sorted(found))


def cone_from_generators(gens: Iterable[Sequence], *, ambient_dim: Optional[int] = None,
                         dim_cap: Optional[int] = None) -> Cone:
    """Exact double description of the cone of nonnegative combinations."""
    G0 = la.mat(gens)
    n = len(G0[0]) if G0 else ambient_dim
    if n is None:
        raise ValueError("cannot infer ambient dimension of an empty generator list")
    G = []
    for g in G0:
        p = la.primitive(g)
        if any(p) and p not in G:
            G.append(p)
    if not G:
        return Cone.zero(n)
    d = la.rank(G)
    cap = DIM_CAP if dim_cap is None else dim_cap
    if d > cap:
        raise ValueError(f"cone dimension {d} exceeds the cap {cap}")
    eqs = _equations(G, n)
    facets = _facet_normals(G, eqs, d)
    pointed = la.rank(facets) == d if facets else d == 0
    if pointed:
        rays = []
        for g in G:
            tight = [f for f in facets if la.dot(f, g) == 0]
            if (la.rank(tight) if tight else 0) == d - 1:
                rays.append(g)
    else:
        rays = _lineality_split(G, facets, eqs, n)
    return Cone(n, tuple(sorted(rays)), facets, eqs, d, pointed)


def _lineality_split(G, facets, eqs, n) -> list:
    """Canonical generators of a non-pointed cone.

    A saturated basis ``b`` of the lineality space contributes ``b`` and
    ``-b``; the rest are the rays of the pointed cone obtained by projecting
    the generators orthogonally to the lineality space.
    """
    lin = saturate_in_standard(la.nullspace(list(facets) + list(eqs), n), n).basis
    out = []
    for b in lin:
        out += [tuple(b), tuple(-x for x in b)]
    if len(lin) < la.rank(G):
        P = la.matmul(la.transpose(lin), la.matmul(la.inverse(la.matmul(lin, la.transpose(lin))), lin))
        proj = [la.sub(g, la.vecmat(g, P)) for g in G]
        out += list(cone_from_generators(proj, ambient_dim=n, dim_cap=n).rays)
    return out


def cone_member(C: Cone, v: Sequence) -> bool:
    v = la.vec(v)
    if len(v) != C.ambient_dim:
        raise ValueError("dimension mismatch")
    return all(la.dot(e, v) == 0 for e in C.equations) and all(la.dot(f, v) >= 0 for f in C.facets)


def dual_cone(C: Cone) -> Cone:
    """``{y in span(C) : <x, y> >= 0 for all x in C}``.

    For a pointed cone the rays of the dual are the facet normals of ``C``.
    """
    if not C.facets:
        return Cone.zero(C.ambient_dim)
    return cone_from_generators(C.facets)


def cone_from_inequalities(A: Sequence[Sequence], n: int) -> Cone:
    """``{x in R^n : A x >= 0}`` (Farkas: the full dual of ``cone(rows of A)``)."""
    rows = [r for r in la.mat(A) if any(r)]
    if not rows:
        lines = la.identity(n)
    else:
        C = cone_from_generators(rows)
        lines = C.equations
        gens = list(C.facets)
    if not rows:
        gens = []
    for e in lines:
        gens.append(tuple(e))
        gens.append(tuple(-x for x in e))
    return cone_from_generators(gens, ambient_dim=n)


def intersect_subspace_with_orthant(subspace_basis: Sequence[Sequence], l: int) -> Cone:
    """``{x in span(subspace_basis) : x >= 0}`` with rays in ambient coordinates."""
    B = la.row_basis(la.mat(subspace_basis))
    if not B:
        return Cone.zero(l)
    P = cone_from_inequalities(la.transpose(B), len(B))
    if P.is_zero:
        return Cone.zero(l)
    return cone_from_generators([la.vecmat(t, B) for t in P.rays], ambient_dim=l)


def intersect_cone_with_subspace(C: Cone, subspace_basis: Sequence[Sequence]) -> Cone:
    """``C`` intersected with a linear subspace, rays in ambient coordinates."""
    B = la.row_basis(la.mat(subspace_basis))
    if not B:
        return Cone.zero(C.ambient_dim)
    # x = t B ; constraints <f, x> >= 0 and <e, x> = 0 written as pairs
    ineqs = [la.matvec(B, f) for f in C.facets]
    for e in C.equations:
        ineqs.append(la.matvec(B, e))
        ineqs.append(tuple(-x for x in la.matvec(B, e)))
    P = cone_from_inequalities(ineqs, len(B))
    if P.is_zero:
        return Cone.zero(C.ambient_dim)
    return cone_from_generators([la.vecmat(t, B) for t in P.rays], ambient_dim=C.ambient_dim)
