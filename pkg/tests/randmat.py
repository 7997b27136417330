"""Seeded random matrices for the property and acceptance suites."""

from __future__ import annotations

import random
from fractions import Fraction

from corestar.linalg import Matrix, inverse, left_null_basis, right_null_basis
from corestar.scalars import GF, QI, FieldDescriptor, FieldKind, GaussianRational

FAMILIES = ("full", "low_rank", "index_two", "sparse")


def small_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.randint(1, 3))


def random_scalar(field: FieldDescriptor, rng: random.Random):
    if field.kind is FieldKind.PRIME_FIELD:
        return field.from_int(rng.randrange(field.modulus))
    if field.kind is FieldKind.GAUSSIAN_RATIONALS:
        return GaussianRational(small_rational(rng), small_rational(rng))
    return small_rational(rng)


def random_matrix(field: FieldDescriptor, rows: int, cols: int, rng: random.Random, density=1.0) -> Matrix:
    zero = field.zero
    return Matrix.from_rows(
        field,
        [
            [random_scalar(field, rng) if rng.random() < density else zero for _ in range(cols)]
            for _ in range(rows)
        ],
        cols=cols,
    )


def random_invertible(field: FieldDescriptor, n: int, rng: random.Random) -> Matrix:
    while True:
        S = random_matrix(field, n, n, rng)
        if inverse(S) is not None:
            return S


def block_diag(P: Matrix, Q: Matrix) -> Matrix:
    field = P.field
    top = P.hstack(Matrix.zeros(field, P.rows, Q.cols))
    bottom = Matrix.zeros(field, Q.rows, P.cols).hstack(Q)
    return top.vstack(bottom)


def nilpotent_block(field: FieldDescriptor, size: int, rng: random.Random) -> Matrix:
    """Strictly upper triangular with a nonzero superdiagonal, so its index is ``size``."""
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if j == i + 1:
                x = random_scalar(field, rng)
                while not x:
                    x = random_scalar(field, rng)
                row.append(x)
            elif j > i + 1:
                row.append(random_scalar(field, rng))
            else:
                row.append(field.zero)
        rows.append(row)
    return Matrix.from_rows(field, rows, cols=size)


def random_square(field: FieldDescriptor, m: int, rng: random.Random, family: str) -> Matrix:
    """One square matrix from a named family; ranks and indices vary by family."""
    if family == "full":
        return random_matrix(field, m, m, rng)
    if family == "low_rank":
        k = rng.randint(0, m - 1)
        return random_matrix(field, m, k, rng) @ random_matrix(field, k, m, rng)
    if family == "index_two":
        if m < 2:
            return Matrix.zeros(field, 1, 1)
        size = rng.randint(2, m)
        core = random_matrix(field, m - size, m - size, rng)
        J = block_diag(core, nilpotent_block(field, size, rng)) if size < m else nilpotent_block(field, m, rng)
        S = random_invertible(field, m, rng)
        return S @ J @ inverse(S)
    if family == "sparse":
        return random_matrix(field, m, m, rng, density=0.4)
    raise ValueError(family)


def qi_suite(count: int = 200, seed: int = 20240607) -> list[Matrix]:
    """The randomized Q(i) suite: sizes 1-5, families cycled so ranks and indices vary."""
    rng = random.Random(seed)
    out = []
    for k in range(count):
        m = 1 + k % 5
        family = FAMILIES[(k // 5) % len(FAMILIES)]
        out.append(random_square(QI, m, rng, family))
    return out


def gf_suite(p: int, count: int, max_size: int = 4, seed: int = 7) -> list[Matrix]:
    rng = random.Random(seed * 1000 + p)
    field = GF(p)
    return [
        random_square(field, 1 + k % max_size, rng, FAMILIES[(k // max_size) % len(FAMILIES)])
        for k in range(count)
    ]


def perturb_witnesses(A: Matrix, n: int, F, mu: Matrix, nu: Matrix, rng: random.Random):
    """Other valid witnesses: add random combinations of null-space vectors.

    ``mu + R @ K`` with ``K (A*)^n B == 0`` is still a left inverse, and
    ``nu + N @ R'`` with ``C (A*)^n N == 0`` is still a right inverse.
    """
    S = A.H ** n
    K = left_null_basis(S @ F.B)
    N = right_null_basis(F.C @ S)
    field = A.field
    mu2 = mu + random_matrix(field, mu.rows, K.rows, rng) @ K
    nu2 = nu + N @ random_matrix(field, N.cols, nu.cols, rng)
    return mu2, nu2
