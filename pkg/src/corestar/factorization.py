"""Full-rank (epic, monic) factorizations and their essential uniqueness."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import DimensionError, Matrix, inverse, rref, solve
from .scalars import CorestarError, FieldMismatchError


@dataclass(frozen=True)
class RankFactorization:
    """``A == B @ C`` through the inner dimension ``r == rank(A)``.

    ``B`` (m x r) has full column rank, so it is epic under the row-vector
    action; ``C`` (r x n) has full row rank, so it is monic.
    """

    A: Matrix
    B: Matrix
    C: Matrix

    @property
    def r(self) -> int:
        return self.B.cols

    def is_valid(self) -> bool:
        """Recheck ``B @ C == A`` and that B is epic and C monic."""
        B, C = self.B, self.C
        if B.cols != C.rows or B.rows != self.A.rows or C.cols != self.A.cols:
            return False
        return B.rank == B.cols and C.rank == C.rows and B @ C == self.A

    def to_json(self) -> dict:
        return {"B": self.B.to_json(), "C": self.C.to_json()}


@dataclass(frozen=True)
class UniquenessWitness:
    """Invertible ``nu`` linking two factorizations: ``B @ nu == B'`` and ``nu @ C' == C``."""

    nu: Matrix
    nu_inverse: Matrix

    def to_json(self) -> dict:
        return {"nu": self.nu.to_json(), "nu_inverse": self.nu_inverse.to_json()}


def full_rank_factorize(A: Matrix) -> RankFactorization:
    """Standard factorization: C is the nonzero rows of rref(A), B the pivot columns of A."""
    R, pivots = rref(A)
    B = A.select_columns(pivots)
    C = R.select_rows(range(len(pivots)))
    return RankFactorization(A, B, C)


def uniqueness_witness(F: RankFactorization, G: RankFactorization) -> UniquenessWitness | None:
    """Construct the invertible ``nu`` with ``F.B @ nu == G.B`` and ``nu @ G.C == F.C``.

    Both factorizations are rechecked to be genuine (epic, monic)
    factorizations; ``None`` is returned if either is not, if the inner
    dimensions differ, or if the solved ``nu`` fails verification.
    """
    if F.A.field != G.A.field:
        raise FieldMismatchError(f"factorizations over {F.A.field} and {G.A.field}")
    if F.A != G.A:
        raise CorestarError("factorizations of different matrices")
    if not (F.is_valid() and G.is_valid()) or F.r != G.r:
        return None
    nu = solve(F.B, G.B)
    if nu is None or F.B @ nu != G.B:
        return None
    nu_inv = inverse(nu)
    if nu_inv is None or nu @ G.C != F.C:
        return None
    return UniquenessWitness(nu, nu_inv)


def factorization_of(target: Matrix, B: Matrix, C: Matrix) -> RankFactorization:
    """Wrap an arbitrary candidate pair ``(B, C)`` for ``target`` without validating it."""
    if B.cols != C.rows:
        raise DimensionError(f"inner dimensions differ: {B.shape} and {C.shape}")
    return RankFactorization(target, B, C)
