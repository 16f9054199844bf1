"""Slack matrices of positive semigroups and their recognition."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum
from itertools import permutations
from typing import Dict, Optional, Sequence, Tuple

from . import exact_linalg as la
from .cone import cone_from_generators, cone_member, intersect_subspace_with_orthant
from .exact_linalg import IntMat, Vec
from .lattice import lattice_from_generators, saturate_in_standard
from .semigroup import AffineSemigroup, dual_semigroup, hilbert_basis


@dataclass(frozen=True)
class SlackMatrix:
    matrix: IntMat
    row_labels: Tuple[Vec, ...]
    col_labels: Tuple[Vec, ...]

    @classmethod
    def from_generators(cls, rows: Sequence[Sequence], cols: Sequence[Sequence]) -> "SlackMatrix":
        A = la.mat(rows)
        B = la.mat(cols)
        M = []
        for a in A:
            row = []
            for b in B:
                x = la.dot(a, b)
                if not isinstance(x, int) or x < 0:
                    raise ValueError(f"pairing {a} with {b} gives {x}, not a nonnegative integer")
                row.append(x)
            M.append(tuple(row))
        return cls(tuple(M), A, B)

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.matrix), len(self.col_labels)

    def to_json(self) -> dict:
        from .formats import encode_matrix

        return {
            "matrix": encode_matrix(self.matrix),
            "rows": encode_matrix(self.row_labels),
            "cols": encode_matrix(self.col_labels),
        }


def slack_matrix(G: AffineSemigroup) -> SlackMatrix:
    """Rows are the minimal generators of ``G``, columns those of its dual."""
    if not G.positive:
        raise ValueError("slack matrix needs a positive semigroup")
    return SlackMatrix.from_generators(G.minimal_generators, dual_semigroup(G).generators)


def _check_input(S) -> IntMat:
    M = la.int_mat(S)
    if not M or not M[0]:
        raise ValueError("empty matrix")
    if any(x < 0 for r in M for x in r):
        raise ValueError("matrix has negative entries")
    if all(x == 0 for r in M for x in r):
        raise ValueError("matrix is zero")
    return M


def row_semigroup(S) -> AffineSemigroup:
    return AffineSemigroup(_check_input(S))


def col_semigroup(S) -> AffineSemigroup:
    return AffineSemigroup(la.transpose(_check_input(S)))


class Condition(Enum):
    ROW_CONE = "row-cone"
    ROW_LATTICE = "row-lattice"
    ROW_MINIMAL = "row-minimal"
    COLUMN_HILBERT = "column-hilbert"


@dataclass(frozen=True)
class Certificate:
    """Either the first failed condition with a witness, or the semigroup."""

    failed: Optional[Condition] = None
    witness: object = None
    semigroup: Optional[AffineSemigroup] = field(default=None, compare=False)

    @property
    def ok(self) -> bool:
        return self.failed is None


def is_slack_matrix(S) -> Tuple[bool, Certificate]:
    M = _check_input(S)
    k, l = len(M), len(M[0])
    rows = [tuple(r) for r in M]
    row_space = la.row_basis(rows)

    # row cone = orthant within the row space
    K = intersect_subspace_with_orthant(row_space, l)
    Krow = cone_from_generators(rows)
    for r in K.rays:
        if not cone_member(Krow, r):
            return False, Certificate(Condition.ROW_CONE, r)
    for r in rows:
        if not cone_member(K, r):
            return False, Certificate(Condition.ROW_CONE, r)

    # row lattice = integer points of the row space
    sat = saturate_in_standard(row_space, l)
    if lattice_from_generators(rows) != sat:
        Lrow = lattice_from_generators(rows)
        bad = next(b for b in sat.basis if b not in Lrow)
        return False, Certificate(Condition.ROW_LATTICE, bad)

    # rows are a minimal generating set
    if len(set(rows)) != k:
        dup = next(i for i, r in enumerate(rows) if rows.index(r) != i)
        return False, Certificate(Condition.ROW_MINIMAL, dup)
    for i, r in enumerate(rows):
        if not any(r):
            return False, Certificate(Condition.ROW_MINIMAL, i)
        others = rows[:i] + rows[i + 1:]
        if others and AffineSemigroup(others).member(r):
            return False, Certificate(Condition.ROW_MINIMAL, i)

    # columns are the Hilbert basis of the nonnegative integer points of Col(S)
    cols = [tuple(c) for c in la.transpose(M)]
    col_space = la.row_basis(cols)
    hb = hilbert_basis(saturate_in_standard(col_space, k), intersect_subspace_with_orthant(col_space, k))
    expected = set(hb.elements)
    if len(set(cols)) != l or set(cols) != expected:
        diff = sorted(expected.symmetric_difference(cols)) or [c for c in cols if cols.count(c) > 1]
        return False, Certificate(Condition.COLUMN_HILBERT, diff[0])

    return True, Certificate(semigroup=AffineSemigroup(rows))


@dataclass(frozen=True)
class Embedding:
    """The homomorphism sending ``a_i`` to row ``i`` of the slack matrix."""

    slack: SlackMatrix
    images: Dict[Vec, Tuple[int, ...]]

    def __call__(self, v: Sequence) -> Tuple:
        return tuple(la.dot(la.vec(v), b) for b in self.slack.col_labels)


def isomorphism_embedding(G: AffineSemigroup, *, samples: int = 50, seed: int = 0) -> Embedding:
    """Build the row embedding and check it on random elements.

    Each sample is a random multiplicity vector over the minimal generators;
    its image computed additively from the rows must match the image of the
    element itself, and the map must be injective on the lattice span.
    """
    S = slack_matrix(G)
    emb = Embedding(S, {a: row for a, row in zip(S.row_labels, S.matrix)})
    if la.rank(S.matrix) != G.rank:
        raise AssertionError("embedding is not injective")
    rng = random.Random(seed)
    gens = S.row_labels
    for _ in range(samples):
        mult = [rng.randint(0, 3) for _ in gens]
        v = [0] * G.ambient_dim
        img = [0] * len(S.col_labels)
        for m, a, row in zip(mult, gens, S.matrix):
            v = la.add(v, la.scale(m, a))
            img = [x + m * y for x, y in zip(img, row)]
        if emb(v) != tuple(img):
            raise AssertionError("embedding is not additive")
    return emb


def equal_up_to_permutation(S, T) -> bool:
    """Whether ``T`` is ``S`` with rows and columns permuted."""
    S, T = la.int_mat(S), la.int_mat(T)
    if la.shape(S) != la.shape(T):
        return False
    if not S:
        return True
    target = sorted(T)
    m = len(S[0])
    for p in permutations(range(m)):
        if sorted(tuple(r[j] for j in p) for r in S) == target:
            return True
    return False
