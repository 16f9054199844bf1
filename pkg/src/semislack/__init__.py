"""Exact computations with positive affine semigroups, their slack matrices,
lifts, and the nonnegative integer rank."""

from .cone import Cone, cone_from_generators, cone_member, dual_cone, intersect_subspace_with_orthant
from .fibonacci import fib, fib_identities, fib_rank_suite, fib_semigroup
from .intrank import Factorization, RankReport, intrank_exact, lower_bound_l1, lower_bounds, verify_factorization
from .lattice import Lattice, dual_lattice, lattice_from_generators, lattice_member, saturate_in_standard
from .lifts import (
    Lift,
    check_slice,
    factorization_from_lift,
    lift_from_factorization,
    min_lift_size,
    verify_lift,
)
from .semigroup import (
    AffineSemigroup,
    HilbertBasis,
    dual_semigroup,
    hilbert_basis,
    is_normal,
    is_positive,
    member,
    minimal_generators,
    normalize,
)
from .slack import (
    SlackMatrix,
    col_semigroup,
    is_slack_matrix,
    isomorphism_embedding,
    row_semigroup,
    slack_matrix,
)

__all__ = [
    "AffineSemigroup", "Cone", "Factorization", "HilbertBasis", "Lattice", "Lift", "RankReport",
    "SlackMatrix", "check_slice", "col_semigroup", "cone_from_generators", "cone_member",
    "dual_cone", "dual_lattice", "dual_semigroup", "factorization_from_lift", "fib",
    "fib_identities", "fib_rank_suite", "fib_semigroup", "hilbert_basis",
    "intersect_subspace_with_orthant", "intrank_exact", "is_normal", "is_positive",
    "is_slack_matrix", "isomorphism_embedding", "lattice_from_generators", "lattice_member",
    "lift_from_factorization", "lower_bound_l1", "lower_bounds", "member", "min_lift_size",
    "minimal_generators", "normalize", "row_semigroup", "saturate_in_standard", "slack_matrix",
    "verify_factorization", "verify_lift",
]
