"""Generalized inverses from a full-rank factorization ``A = B @ C``.

Existence is always decided structurally (rank of a composite, or whether a
one-sided inverse exists), never by attempting a formula and catching the
failure.  ``B`` plays the epic factor and ``C`` the monic one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .factorization import RankFactorization, full_rank_factorize
from .linalg import (
    DimensionError,
    Matrix,
    inverse,
    is_left_invertible,
    is_right_invertible,
    solve_left_inverse,
    solve_right_inverse,
)
from .scalars import CorestarError

KINDS = ("13", "14", "group", "mp", "core", "dualcore")


class FormulaError(AssertionError):
    """A closed-form result failed its own defining identity (a bug, not bad input)."""


def _ensure(ok: bool, what: str):
    if not ok:
        raise FormulaError(what)


def _require_square(A: Matrix):
    if not A.is_square:
        raise DimensionError(f"expected a square matrix, got {A.rows}x{A.cols}")


def _require_exponent(n: int):
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise CorestarError(f"exponent n must be an integer >= 2, got {n!r}")


def inv13(A: Matrix, F: RankFactorization | None = None) -> Matrix | None:
    """A {1,3}-inverse, present iff ``A* @ B`` is left invertible.

    With ``mu1 @ A* @ B == I`` we get ``A == B @ mu1 @ A* @ A``, so
    ``X = (B @ mu1)*`` satisfies ``X* @ A* @ A == A``.
    """
    F = F or full_rank_factorize(A)
    mu1 = solve_left_inverse(A.H @ F.B)
    if mu1 is None:
        return None
    X = (F.B @ mu1).H
    _ensure(X.H @ A.H @ A == A, "X* A* A != A")
    AX = A @ X
    _ensure(AX.is_hermitian() and AX @ A == A, "{1,3} equations fail")
    return X


def inv14(A: Matrix, F: RankFactorization | None = None) -> Matrix | None:
    """A {1,4}-inverse, present iff ``C @ A*`` is right invertible."""
    F = F or full_rank_factorize(A)
    nu1 = solve_right_inverse(F.C @ A.H)
    if nu1 is None:
        return None
    X = (nu1 @ F.C).H
    _ensure(A @ A.H @ X.H == A, "A A* X* != A")
    XA = X @ A
    _ensure(XA.is_hermitian() and A @ XA == A, "{1,4} equations fail")
    return X


def group_inverse(A: Matrix, F: RankFactorization | None = None) -> Matrix | None:
    """``B @ (C@B)^-2 @ C``, present iff ``C @ B`` is invertible."""
    _require_square(A)
    F = F or full_rank_factorize(A)
    cb_inv = inverse(F.C @ F.B)
    if cb_inv is None:
        return None
    X = F.B @ cb_inv @ cb_inv @ F.C
    AX = A @ X
    _ensure(AX @ A == A and X @ A @ X == X and AX == X @ A, "group equations fail")
    return X


def mp_inverse(A: Matrix, F: RankFactorization | None = None) -> Matrix | None:
    """``C* (C C*)^-1 (B* B)^-1 B*``, present iff both Gram matrices are invertible."""
    F = F or full_rank_factorize(A)
    B, C = F.B, F.C
    gb = inverse(B.H @ B)
    gc = inverse(C @ C.H)
    if gb is None or gc is None:
        return None
    return C.H @ gc @ gb @ B.H


def core_inverse(A: Matrix, F: RankFactorization | None = None) -> Matrix | None:
    """``B (CB)^-1 (B*B)^-1 B*``, present iff ``A* B`` is left invertible and ``C B`` invertible."""
    _require_square(A)
    F = F or full_rank_factorize(A)
    B, C = F.B, F.C
    if not is_left_invertible(A.H @ B):
        return None
    cb_inv = inverse(C @ B)
    if cb_inv is None:
        return None
    gb = inverse(B.H @ B)
    _ensure(gb is not None, "B*B singular although A*B is left invertible")
    return B @ cb_inv @ gb @ B.H


def dual_core_inverse(A: Matrix, F: RankFactorization | None = None) -> Matrix | None:
    """``C* (CC*)^-1 (CB)^-1 C``, present iff ``C A*`` is right invertible and ``C B`` invertible."""
    _require_square(A)
    F = F or full_rank_factorize(A)
    B, C = F.B, F.C
    if not is_right_invertible(C @ A.H):
        return None
    cb_inv = inverse(C @ B)
    if cb_inv is None:
        return None
    gc = inverse(C @ C.H)
    _ensure(gc is not None, "CC* singular although CA* is right invertible")
    return C.H @ gc @ cb_inv @ C


def core_via_composition(A: Matrix, dual: bool = False) -> Matrix | None:
    """Core inverse as ``A^# A A^(1,3)``, or the dual core as ``A^(1,4) A A^#``."""
    _require_square(A)
    F = full_rank_factorize(A)
    g = group_inverse(A, F)
    if g is None:
        return None
    if dual:
        x14 = inv14(A, F)
        return None if x14 is None else x14 @ A @ g
    x13 = inv13(A, F)
    return None if x13 is None else g @ A @ x13


@dataclass(frozen=True)
class InverseBundle:
    core: Matrix
    dual_core: Matrix
    mp: Matrix
    group: Matrix

    def items(self):
        return (
            ("core", self.core),
            ("dual_core", self.dual_core),
            ("mp", self.mp),
            ("group", self.group),
        )

    def to_json(self) -> dict:
        return {name: M.to_json() for name, M in self.items()}


def coexistence_witnesses(
    A: Matrix, n: int, F: RankFactorization | None = None
) -> tuple[Matrix | None, Matrix | None]:
    """``mu`` with ``mu (A*)^n B == I`` and ``nu`` with ``C (A*)^n nu == I`` (solver rule)."""
    F = F or full_rank_factorize(A)
    S = A.H ** n
    return solve_left_inverse(S @ F.B), solve_right_inverse(F.C @ S)


def coexistence_bundle(
    A: Matrix,
    n: int = 2,
    *,
    mu: Matrix | None = None,
    nu: Matrix | None = None,
    F: RankFactorization | None = None,
) -> InverseBundle | None:
    """Core, dual core, Moore-Penrose and group inverses from the witnesses mu, nu.

    Core is ``A^(n-1) (B mu)*``, dual core ``(nu C)* A^(n-1)``, Moore-Penrose
    ``(nu C)* A^(2n-1) (B mu)*`` and group ``core^2 A``.

    Present iff ``(A*)^n B`` is left invertible and ``C (A*)^n`` is right
    invertible.  Explicit ``mu``/``nu`` may be supplied; they are checked
    against their defining identities and the results do not depend on
    which valid witnesses are used.
    """
    _require_square(A)
    _require_exponent(n)
    F = F or full_rank_factorize(A)
    B, C = F.B, F.C
    S = A.H ** n
    left, right = S @ B, C @ S
    if mu is None or nu is None:
        mu0, nu0 = coexistence_witnesses(A, n, F)
        mu = mu if mu is not None else mu0
        nu = nu if nu is not None else nu0
        if mu is None or nu is None:
            return None
    eye = Matrix.identity(A.field, F.r)
    if mu.shape != (F.r, A.rows) or mu @ left != eye:
        raise CorestarError("mu is not a left inverse of (A*)^n B")
    if nu.shape != (A.rows, F.r) or right @ nu != eye:
        raise CorestarError("nu is not a right inverse of C (A*)^n")

    P = A ** (n - 1)
    bm_star = mu.H @ B.H  # (B mu)*
    nc_star = C.H @ nu.H  # (nu C)*
    core = P @ bm_star
    dual = nc_star @ P
    # (nu C) A^(2n-1) (B mu)* without the adjoint on nu C fails the Penrose
    # equations whenever nu C is not Hermitian; A^+ = dual A core needs it
    mp = nc_star @ (A ** (2 * n - 1)) @ bm_star
    group = core @ core @ A
    _ensure(group == A @ dual @ dual, "the two group-inverse expressions disagree")
    _ensure(mp == dual @ A @ core, "Moore-Penrose member differs from dual A core")
    return InverseBundle(core=core, dual_core=dual, mp=mp, group=group)


@dataclass(frozen=True)
class ExistenceProfile:
    """Every existence predicate for one square matrix and exponent ``n``.

    The first block comes from the single-exponent criteria, the second
    from their n-th power forms; paired flags must agree.
    """

    n: int
    rank: int
    has13: bool
    has14: bool
    has_group: bool
    has_mp: bool
    has_core: bool
    has_dual_core: bool
    cb_invertible: bool
    core_power_form: bool
    dual_core_power_form: bool
    coexist_power_form: bool
    coexist_adjoint_form: bool
    mu: Matrix | None
    nu: Matrix | None

    def to_json(self) -> dict:
        doc = {
            name: getattr(self, name)
            for name in (
                "n",
                "rank",
                "has13",
                "has14",
                "has_group",
                "has_mp",
                "has_core",
                "has_dual_core",
                "cb_invertible",
                "core_power_form",
                "dual_core_power_form",
                "coexist_power_form",
                "coexist_adjoint_form",
            )
        }
        doc["mu"] = self.mu.to_json() if self.mu is not None else None
        doc["nu"] = self.nu.to_json() if self.nu is not None else None
        return doc


def existence_profile(A: Matrix, n: int = 2) -> ExistenceProfile:
    _require_square(A)
    _require_exponent(n)
    F = full_rank_factorize(A)
    B, C = F.B, F.C
    AH = A.H
    S, P = AH ** n, A ** n

    has13 = is_left_invertible(AH @ B)
    has14 = is_right_invertible(C @ AH)
    CB = C @ B
    cb_invertible = inverse(CB) is not None
    has_mp = inverse(B.H @ B) is not None and inverse(C @ C.H) is not None
    mu, nu = coexistence_witnesses(A, n, F)
    return ExistenceProfile(
        n=n,
        rank=F.r,
        has13=has13,
        has14=has14,
        has_group=cb_invertible,
        has_mp=has_mp,
        has_core=has13 and cb_invertible,
        has_dual_core=has14 and cb_invertible,
        cb_invertible=cb_invertible,
        core_power_form=is_left_invertible(S @ B) and is_left_invertible(CB),
        dual_core_power_form=is_right_invertible(C @ S) and is_right_invertible(CB),
        coexist_power_form=mu is not None and nu is not None,
        coexist_adjoint_form=is_left_invertible(P @ C.H) and is_right_invertible(B.H @ P),
        mu=mu,
        nu=nu,
    )


def compute_inverse(A: Matrix, kind: str) -> Matrix | None:
    """Dispatch by kind name: one of :data:`KINDS`."""
    funcs = {
        "13": inv13,
        "14": inv14,
        "group": group_inverse,
        "mp": mp_inverse,
        "core": core_inverse,
        "dualcore": dual_core_inverse,
    }
    if kind not in funcs:
        raise CorestarError(f"unknown inverse kind {kind!r}")
    return funcs[kind](A)


def nonexistence_reason(A: Matrix, kind: str, n: int = 2) -> str | None:
    """Name of the first failing predicate for ``kind``, or None if the inverse exists."""
    F = full_rank_factorize(A)
    B, C = F.B, F.C
    if kind in ("group", "core", "dualcore", "bundle"):
        _require_square(A)
    checks = {
        "13": [("A*B not left invertible", lambda: is_left_invertible(A.H @ B))],
        "14": [("CA* not right invertible", lambda: is_right_invertible(C @ A.H))],
        "group": [("CB singular", lambda: inverse(C @ B) is not None)],
        "mp": [
            ("B*B singular", lambda: inverse(B.H @ B) is not None),
            ("CC* singular", lambda: inverse(C @ C.H) is not None),
        ],
        "core": [
            ("A*B not left invertible", lambda: is_left_invertible(A.H @ B)),
            ("CB singular", lambda: inverse(C @ B) is not None),
        ],
        "dualcore": [
            ("CA* not right invertible", lambda: is_right_invertible(C @ A.H)),
            ("CB singular", lambda: inverse(C @ B) is not None),
        ],
        "bundle": [
            ("(A*)^nB not left invertible", lambda: is_left_invertible(A.H ** n @ B)),
            ("C(A*)^n not right invertible", lambda: is_right_invertible(C @ A.H ** n)),
        ],
    }
    if kind not in checks:
        raise CorestarError(f"unknown inverse kind {kind!r}")
    for reason, ok in checks[kind]:
        if not ok():
            return reason
    return None
