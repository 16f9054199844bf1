"""Affine semigroups: positivity, membership, minimal generators, normalization
and duality.

Most of the work happens in lattice coordinates.  If ``B`` is the canonical
basis of the difference lattice, every element of the semigroup is ``c @ B``
for an integer vector ``c``, so the semigroup becomes a subsemigroup of
``Z^d`` generating all of it, and its cone is full dimensional there.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import ceil
from typing import List, Optional, Sequence, Tuple

from . import exact_linalg as la
from .cone import Cone, cone_from_generators, cone_member
from .exact_linalg import IntVec, Vec
from .lattice import Lattice, lattice_from_generators, dual_lattice, saturate_in_standard

HILBERT_DIM_CAP = 6


def _int_coords(L: Lattice, v: Sequence) -> Optional[IntVec]:
    c = L.coordinates(v)
    if c is None or not all(isinstance(x, int) for x in c):
        return None
    return tuple(c)


class _Representer:
    """Bounded search for ``target = sum m_i g_i`` with ``m_i >= 0`` in ``Z^d``.

    ``phi`` must be strictly positive on every nonzero generator; it bounds
    the multiplicity of each generator.  Failed ``(index, residual)`` states
    are remembered across queries.
    """

    def __init__(self, gens: Sequence[IntVec], phi: Sequence[int]):
        self.d = len(phi)
        self.phi = tuple(phi)
        order = sorted(range(len(gens)), key=lambda i: (-la.dot(phi, gens[i]), gens[i]))
        self.order = order
        self.gens = [tuple(gens[i]) for i in order]
        self.weights = [la.dot(phi, g) for g in self.gens]
        if any(w <= 0 for w in self.weights):
            raise ValueError("functional is not positive on the generators")
        k = len(self.gens)
        self.suffix_cones = [cone_from_generators(self.gens[i:], ambient_dim=self.d, dim_cap=self.d)
                             for i in range(k)]
        self.suffix_lattices = [lattice_from_generators(self.gens[i:]) for i in range(k)]
        self.failed: set = set()

    def _feasible(self, i: int, r: IntVec) -> bool:
        return cone_member(self.suffix_cones[i], r) and r in self.suffix_lattices[i]

    def solve(self, target: Sequence[int]) -> Optional[Tuple[int, ...]]:
        target = tuple(target)
        k = len(self.gens)
        mult = [0] * k

        def dfs(i: int, r: IntVec) -> bool:
            if not any(r):
                return True
            if i == k or (i, r) in self.failed:
                return False
            if not self._feasible(i, r):
                self.failed.add((i, r))
                return False
            g, w = self.gens[i], self.weights[i]
            top = la.dot(self.phi, r) // w
            for m in range(top, -1, -1):
                nr = tuple(a - m * b for a, b in zip(r, g))
                if dfs(i + 1, nr):
                    mult[i] = m
                    return True
            self.failed.add((i, r))
            return False

        if not dfs(0, target):
            return None
        out = [0] * k
        for pos, idx in enumerate(self.order):
            out[idx] = mult[pos]
        return tuple(out)


def _hilbert_2d(u: IntVec, v: IntVec) -> List[IntVec]:
    """Minimal generators of ``Z^2`` inside the pointed cone spanned by ``u, v``.

    Walks from ``u`` to ``v`` through consecutive lattice points of unit
    determinant, which are the convergents of the continued fraction of
    the cone's slope.
    """
    def det(a, b):
        return a[0] * b[1] - a[1] * b[0]

    if det(u, v) < 0:
        u, v = v, u
    out = [u]
    h = u
    while h != v:
        g, s, t = la.xgcd(h[0], h[1])
        w0 = (-t, s)
        dv = det(h, v)
        k = ceil(Fraction(-det(w0, v), dv))
        h = (w0[0] + k * h[0], w0[1] + k * h[1])
        out.append(h)
    return out


def _pulling_triangulation(rays: List[IntVec], dim: int) -> List[List[IntVec]]:
    if len(rays) == dim:
        return [rays]
    r0 = rays[0]
    C = cone_from_generators(rays, dim_cap=dim)
    out = []
    for f in C.facets:
        if la.dot(f, r0) == 0:
            continue
        face = [r for r in rays if la.dot(f, r) == 0]
        for simplex in _pulling_triangulation(face, dim - 1):
            out.append([r0] + simplex)
    return out


def _parallelepiped_points(R: List[IntVec]) -> List[IntVec]:
    """Nonzero integer points of ``{sum l_i r_i : 0 <= l_i < 1}``."""
    d = len(R)
    D, _, V = la.snf(R)
    Vinv = la.inverse(V)
    Rinv = la.inverse(R)
    diag = [abs(D[i][i]) for i in range(d)]
    pts = []
    for y in product(*(range(e) for e in diag)):
        if not any(y):
            continue
        x = la.vecmat(y, Vinv)
        lam = la.vecmat(x, Rinv)
        frac = [Fraction(c) - (Fraction(c).numerator // Fraction(c).denominator) for c in lam]
        pts.append(tuple(int(c) for c in la.vecmat(frac, R)))
    return pts


def _hilbert_full(C: Cone, d: int) -> List[IntVec]:
    """Hilbert basis of ``Z^d`` inside a pointed full-dimensional cone ``C``."""
    if d == 1:
        return [C.rays[0]]
    if d == 2:
        return _hilbert_2d(C.rays[0], C.rays[1])
    return _hilbert_general(C, d)


def _hilbert_general(C: Cone, d: int) -> List[IntVec]:
    """Triangulate, collect parallelepiped points and rays, keep the irreducible ones.

    Every irreducible element lies in the half-open parallelepiped of some
    simplex or is one of its rays, so the candidate set contains the basis.
    """
    cands = set(C.rays)
    for simplex in _pulling_triangulation(list(C.rays), d):
        cands.update(_parallelepiped_points(simplex))
    phi = C.positive_functional()
    ordered = sorted(cands, key=lambda x: (la.dot(phi, x), x))
    basis: List[IntVec] = []
    for x in ordered:
        if not any(cone_member(C, la.sub(x, y)) for y in basis):
            basis.append(x)
    return basis


@dataclass(frozen=True)
class HilbertBasis:
    coords: Tuple[IntVec, ...]
    elements: Tuple[Vec, ...]
    lattice_basis: Tuple[Vec, ...]


def hilbert_basis(L: Lattice, C: Cone, *, dim_cap: Optional[int] = None) -> HilbertBasis:
    """Minimal generating set of the normal semigroup ``L`` intersected with ``C``."""
    if not C.pointed:
        raise ValueError("cone is not pointed")
    if C.is_zero or L.rank == 0:
        return HilbertBasis((), (), ())
    ray_coords = []
    for r in C.rays:
        c = L.coordinates(r)
        if c is None:
            raise ValueError("cone is not contained in the span of the lattice")
        ray_coords.append(c)
    B = L.basis
    if C.dim < L.rank:
        M = saturate_in_standard(ray_coords, L.rank).basis
        ray_coords = [la.solve_rational(M, c) for c in ray_coords]
        B = la.matmul(M, B)
    d = C.dim
    cap = HILBERT_DIM_CAP if dim_cap is None else dim_cap
    if d > cap:
        raise ValueError(f"Hilbert basis dimension {d} exceeds the cap {cap}")
    Cc = cone_from_generators(ray_coords, dim_cap=d)
    pairs = sorted((la.vecmat(c, B), c) for c in _hilbert_full(Cc, d))
    return HilbertBasis(tuple(c for _, c in pairs), tuple(e for e, _ in pairs), tuple(B))


class AffineSemigroup:
    """Semigroup of nonnegative integer combinations of ``generators``.

    Generators are kept exactly as given.  ``lattice`` and ``cone`` are the
    difference lattice and the real cone of the generators.  Equality
    compares minimal generating sets for positive semigroups.
    """

    def __init__(self, generators: Sequence[Sequence], ambient_dim: Optional[int] = None):
        gens = la.mat(generators)
        if gens:
            n = len(gens[0])
        elif ambient_dim is None:
            raise ValueError("empty generator list needs an ambient dimension")
        else:
            n = ambient_dim
        if ambient_dim is not None and ambient_dim != n:
            raise ValueError("ambient dimension does not match the generators")
        self.generators: Tuple[Vec, ...] = gens
        self.ambient_dim = n
        self.lattice: Lattice = lattice_from_generators(gens, allow_zero=True) if gens else Lattice.zero(n)
        self.cone: Cone = cone_from_generators(gens, ambient_dim=n)
        self.positive: bool = self.cone.pointed
        coords = []
        for g in gens:
            c = _int_coords(self.lattice, g)
            assert c is not None
            coords.append(c)
        self._coords: Tuple[IntVec, ...] = tuple(coords)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_json(cls, data) -> "AffineSemigroup":
        from .formats import decode_generators

        return cls(decode_generators(data))

    def to_json(self) -> dict:
        from .formats import encode_matrix

        return {"generators": encode_matrix(self.generators)}

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def coordinates(self, v: Sequence) -> Optional[IntVec]:
        """Integer coordinates of ``v`` in the lattice basis, None if outside."""
        return _int_coords(self.lattice, v) if self.rank else (() if la.is_zero(v) else None)

    def from_coordinates(self, c: Sequence[int]) -> Vec:
        if not self.rank:
            return (0,) * self.ambient_dim
        return la.vecmat(c, self.lattice.basis)

    @cached_property
    def coord_cone(self) -> Cone:
        return cone_from_generators(self._coords, ambient_dim=self.rank, dim_cap=max(self.rank, 1))

    @cached_property
    def _representer(self) -> Optional[_Representer]:
        self._require_positive("membership search is unbounded")
        pairs = [(i, c) for i, c in enumerate(self._coords) if any(c)]
        if not pairs:
            return None
        rep = _Representer([c for _, c in pairs], self.coord_cone.positive_functional())
        rep.index = [i for i, _ in pairs]
        return rep

    def _require_positive(self, msg: str) -> None:
        if not self.positive:
            raise ValueError(msg)

    # -- membership -----------------------------------------------------------

    def representation(self, v: Sequence) -> Optional[Tuple[int, ...]]:
        """Multiplicities ``m`` with ``v = sum m_i g_i``, or None."""
        self._require_positive("membership search is unbounded")
        v = la.vec(v)
        if len(v) != self.ambient_dim:
            raise ValueError("dimension mismatch")
        k = len(self.generators)
        if la.is_zero(v):
            return (0,) * k
        if not cone_member(self.cone, v):
            return None
        c = self.coordinates(v)
        rep = self._representer
        if c is None or rep is None:
            return None
        sol = rep.solve(c)
        if sol is None:
            return None
        out = [0] * k
        for i, m in zip(rep.index, sol):
            out[i] = m
        return tuple(out)

    def member(self, v: Sequence) -> bool:
        return self.representation(v) is not None

    __contains__ = member

    # -- structure ------------------------------------------------------------

    @cached_property
    def minimal_generators(self) -> Tuple[Vec, ...]:
        if not self.positive:
            raise ValueError("minimality undefined")
        current = sorted({g for g in self.generators if not la.is_zero(g)})
        changed = True
        while changed:
            changed = False
            for g in list(current):
                others = [h for h in current if h != g]
                if others and AffineSemigroup(others).member(g):
                    current = others
                    changed = True
        return tuple(current)

    @cached_property
    def hilbert_basis(self) -> HilbertBasis:
        self._require_positive("minimality undefined")
        return hilbert_basis(self.lattice, self.cone)

    @cached_property
    def normal(self) -> bool:
        self._require_positive("minimality undefined")
        return set(self.minimal_generators) == set(self.hilbert_basis.elements)

    def _key(self):
        if self.positive:
            return (True, self.ambient_dim, self.minimal_generators)
        return (False, self.ambient_dim, self.lattice, self.cone)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AffineSemigroup):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"AffineSemigroup({[list(g) for g in self.generators]!r})"

    def random_element(self, rng: random.Random, max_mult: int = 3) -> Tuple[Vec, Tuple[int, ...]]:
        mult = tuple(rng.randint(0, max_mult) for _ in self.generators)
        v = [Fraction(0)] * self.ambient_dim
        for m, g in zip(mult, self.generators):
            v = la.add(v, la.scale(m, g))
        return la.vec(v), mult


def is_positive(G: AffineSemigroup) -> bool:
    return G.positive


def minimal_generators(G: AffineSemigroup) -> Tuple[Vec, ...]:
    return G.minimal_generators


def member(G: AffineSemigroup, v: Sequence) -> bool:
    return G.member(v)


def normalize(G: AffineSemigroup) -> AffineSemigroup:
    return AffineSemigroup(G.hilbert_basis.elements, ambient_dim=G.ambient_dim)


def is_normal(G: AffineSemigroup) -> bool:
    return G.normal


def dual_semigroup(G: AffineSemigroup) -> AffineSemigroup:
    """The normal semigroup of lattice-dual, cone-dual elements in ``span(G)``."""
    if not G.positive:
        raise ValueError("dual not full-dimensional")
    if G.rank == 0:
        return AffineSemigroup((), ambient_dim=G.ambient_dim)
    from .cone import dual_cone

    hb = hilbert_basis(dual_lattice(G.lattice), dual_cone(G.cone))
    return AffineSemigroup(hb.elements, ambient_dim=G.ambient_dim)
