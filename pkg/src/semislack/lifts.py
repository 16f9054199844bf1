"""Lifts of positive semigroups and their link to integer factorizations.

A lift is given by a positive semigroup ``total`` and a rational matrix
``hom`` acting on row vectors: ``iota(x) = x @ hom``.  The adjoint sends a
functional ``y`` on the big space to ``hom @ y`` restricted to the span of
the base lattice.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from . import exact_linalg as la
from .cone import cone_from_generators, cone_member, intersect_cone_with_subspace
from .exact_linalg import IntMat, Mat, Vec
from .intrank import Factorization, RankReport, intrank_exact, verify_factorization
from .lattice import saturate_in_standard
from .semigroup import AffineSemigroup, dual_semigroup
from .slack import SlackMatrix, slack_matrix

SLICE_BOX = 20
SLICE_MAX_SAMPLES = 5000


@dataclass(frozen=True)
class Pullback:
    target: Vec
    coefficients: Tuple[int, ...]
    preimage: Vec


@dataclass
class LiftCertificate:
    ok: bool
    reason: Optional[str] = None
    images: Dict[Vec, Tuple[int, ...]] = field(default_factory=dict)
    pullbacks: List[Pullback] = field(default_factory=list)


@dataclass
class Lift:
    base: AffineSemigroup
    total: AffineSemigroup
    hom: Mat
    slack: SlackMatrix
    certificate: LiftCertificate

    @property
    def verified(self) -> bool:
        return self.certificate.ok

    @property
    def size(self) -> int:
        return len(self.total.minimal_generators)

    def __call__(self, x: Sequence) -> Vec:
        return la.vecmat(la.vec(x), self.hom)

    def to_json(self) -> dict:
        from .formats import encode_matrix, encode_vector

        c = self.certificate
        return {
            "base": self.base.to_json(),
            "total": self.total.to_json(),
            "hom": encode_matrix(self.hom),
            "size": self.size,
            "verified": c.ok,
            "certificates": {
                "images": [{"generator": encode_vector(g), "multiplicities": list(m)}
                           for g, m in c.images.items()],
                "pullbacks": [{"target": encode_vector(p.target), "coefficients": list(p.coefficients),
                               "preimage": encode_vector(p.preimage)} for p in c.pullbacks],
            },
        }


def _restrict(y: Sequence, basis: Sequence[Sequence]) -> Vec:
    """The vector of ``span(basis)`` with the same pairings against it as ``y``."""
    if not basis:
        return tuple(0 for _ in y)
    G = la.matmul(basis, la.transpose(basis))
    rhs = la.matvec(basis, y)
    t = la.matvec(la.inverse(G), rhs)
    return la.vecmat(t, basis)


def adjoint(base: AffineSemigroup, hom: Sequence[Sequence], y: Sequence) -> Vec:
    return _restrict(la.matvec(hom, y), base.lattice.basis)


def in_dual(G: AffineSemigroup, y: Sequence) -> bool:
    """Membership in the dual semigroup: ``y`` in the span, integral and nonnegative on generators."""
    y = la.vec(y)
    if _restrict(y, G.lattice.basis) != y:
        return False
    for g in G.generators:
        v = la.dot(g, y)
        if not isinstance(v, int) or v < 0:
            return False
    return True


def is_pullback(base: AffineSemigroup, total: AffineSemigroup, hom, ybar, b) -> bool:
    """Whether ``ybar`` is in the dual of ``total`` and pulls back to ``b``."""
    return in_dual(total, ybar) and adjoint(base, hom, ybar) == la.vec(b)


def verify_lift(base: AffineSemigroup, total: AffineSemigroup, hom, *,
                dual_generators: Optional[Sequence[Sequence]] = None) -> LiftCertificate:
    """Check that ``hom`` maps ``base`` into ``total`` with surjective adjoint on duals."""
    H = la.mat(hom)
    if not base.positive or not total.positive:
        return LiftCertificate(False, "semigroups must be positive")
    if len(H) != base.ambient_dim or any(len(r) != total.ambient_dim for r in H):
        return LiftCertificate(False, "hom has the wrong shape")
    if base.rank and la.rank(la.matmul(base.lattice.basis, H)) != base.rank:
        return LiftCertificate(False, "hom is not injective on the base lattice")
    cert = LiftCertificate(True)
    for a in base.minimal_generators:
        rep = total.representation(la.vecmat(a, H))
        if rep is None:
            return LiftCertificate(False, f"image of {a} is not in the total semigroup")
        cert.images[a] = rep
    hb = dual_semigroup(total).generators
    pulled = [adjoint(base, H, h) for h in hb]
    for h, p in zip(hb, pulled):
        if not in_dual(base, p):
            return LiftCertificate(False, f"pullback of {h} is not in the dual of the base")
    targets = dual_generators if dual_generators is not None else dual_semigroup(base).generators
    nz = [i for i, p in enumerate(pulled) if not la.is_zero(p)]
    image = AffineSemigroup([pulled[i] for i in nz], ambient_dim=base.ambient_dim)
    for b in targets:
        rep = image.representation(b)
        if rep is None:
            return LiftCertificate(False, f"dual generator {b} has no pullback")
        coeff = [0] * len(hb)
        for i, m in zip(nz, rep):
            coeff[i] = m
        ybar = la.vec([0] * total.ambient_dim)
        for m, h in zip(coeff, hb):
            ybar = la.add(ybar, la.scale(m, h))
        cert.pullbacks.append(Pullback(la.vec(b), tuple(coeff), ybar))
    return cert


def make_lift(base: AffineSemigroup, total: AffineSemigroup, hom, slack: Optional[SlackMatrix] = None) -> Lift:
    S = slack if slack is not None else slack_matrix(base)
    cert = verify_lift(base, total, hom, dual_generators=S.col_labels)
    return Lift(base, total, la.mat(hom), S, cert)


def lift_from_factorization(base: AffineSemigroup, V, W, slack: Optional[SlackMatrix] = None) -> Lift:
    """Lift built from ``S = V^T W``: the total semigroup is generated by the rows of ``W``.

    ``slack`` fixes the row/column order of ``S``; it defaults to
    ``slack_matrix(base)``.
    """
    S = slack if slack is not None else slack_matrix(base)
    V, W = la.int_mat(V), la.int_mat(W)
    if len(V) != len(W):
        raise ValueError("factors have different inner dimensions")
    if not verify_factorization(S.matrix, la.transpose(V), W):
        raise ValueError("factorization invalid")
    total = AffineSemigroup(W, ambient_dim=len(S.col_labels))
    hom = la.transpose(S.col_labels)
    lift = Lift(base, total, hom, S, verify_lift(base, total, hom, dual_generators=S.col_labels))
    if not lift.verified:
        raise AssertionError(f"not a lift: {lift.certificate.reason}")
    return lift


def factorization_from_lift(lift: Lift) -> Tuple[IntMat, IntMat]:
    """``(D, C)`` with ``S = D @ S_total @ C`` for the base slack matrix ``S``."""
    if not lift.verified:
        raise ValueError("lift is not verified")
    gens = lift.total.minimal_generators
    tot = AffineSemigroup(gens)
    D = []
    for a in lift.slack.row_labels:
        rep = tot.representation(lift(a))
        assert rep is not None
        D.append(rep)
    by_target = {p.target: p for p in lift.certificate.pullbacks}
    cols = [by_target[la.vec(b)].coefficients for b in lift.slack.col_labels]
    C = la.transpose(cols)
    S_tot = SlackMatrix.from_generators(gens, dual_semigroup(lift.total).generators)
    D = tuple(tuple(r) for r in D)
    C = tuple(tuple(int(x) for x in r) for r in C)
    if la.matmul(la.matmul(D, S_tot.matrix), C) != lift.slack.matrix:
        raise AssertionError("factorization identity failed")
    return D, C


def lift_factorization(lift: Lift) -> Factorization:
    D, C = factorization_from_lift(lift)
    gens = lift.total.minimal_generators
    S_tot = SlackMatrix.from_generators(gens, dual_semigroup(lift.total).generators)
    return Factorization(lift.slack.matrix, D, la.matmul(S_tot.matrix, C))


def min_lift_size(base: AffineSemigroup, budget: Optional[int] = None,
                  max_r: Optional[int] = None) -> Tuple[RankReport, Optional[Lift]]:
    S = slack_matrix(base)
    report = intrank_exact(S.matrix, max_r=max_r, budget=budget)
    lift = None
    if report.factorization is not None:
        F = report.factorization
        lift = lift_from_factorization(base, la.transpose(F.B), F.C, slack=S)
    return report, lift


def check_slice(lift: Lift, *, box: int = SLICE_BOX, seed: int = 0) -> bool:
    """Check that the base is the slice of the total semigroup by the image plane.

    Cone equality is exact.  Semigroup equality is tested on the integer
    points ``c @ E`` of the plane with ``E`` a basis of its integer points
    and ``c`` in ``[-box, box]^d`` (all of them when few enough, otherwise a
    seeded random sample).
    """
    if not lift.verified:
        raise ValueError("lift is not verified")
    base, total = lift.base, lift.total
    if not base.normal:
        raise ValueError("slice theorem requires normality")
    N = total.ambient_dim
    img_basis = la.row_basis(la.matmul(base.lattice.basis, lift.hom)) if base.rank else ()
    images = [lift(a) for a in base.minimal_generators]
    if cone_from_generators(images, ambient_dim=N) != intersect_cone_with_subspace(total.cone, img_basis):
        return False
    if not img_basis:
        return True
    E = saturate_in_standard(img_basis, N).basis
    d = len(E)
    pre_basis = la.matmul(base.lattice.basis, lift.hom)
    rng = random.Random(seed)
    if (2 * box + 1) ** d <= SLICE_MAX_SAMPLES:
        points = product(range(-box, box + 1), repeat=d)
    else:
        points = (tuple(rng.randint(-box, box) for _ in range(d)) for _ in range(SLICE_MAX_SAMPLES))
    for c in points:
        x = la.vecmat(c, E)
        if not cone_member(total.cone, x):
            continue
        t = la.solve_rational(pre_basis, x)
        z = la.vecmat(t, base.lattice.basis)
        in_image = cone_member(base.cone, z) and z in base.lattice
        if in_image != total.member(x):
            return False
    return True
