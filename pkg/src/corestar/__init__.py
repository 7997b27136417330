"""Exact generalized inverses (core, dual core, group, Moore-Penrose, {1,3}, {1,4})
of matrices over Q, Q(i) and GF(p), computed from full-rank factorizations."""

from .factorization import (
    RankFactorization,
    UniquenessWitness,
    full_rank_factorize,
    uniqueness_witness,
)
from .geninv import (
    ExistenceProfile,
    InverseBundle,
    coexistence_bundle,
    core_inverse,
    core_via_composition,
    dual_core_inverse,
    existence_profile,
    group_inverse,
    inv13,
    inv14,
    mp_inverse,
)
from .linalg import (
    DimensionError,
    Matrix,
    conjugate_transpose,
    inverse,
    rref,
    solve_left_inverse,
    solve_right_inverse,
    subspace_report,
)
from .scalars import GF, QI, CorestarError, FieldDescriptor, Q, parse_scalar

__version__ = "0.1.0"
