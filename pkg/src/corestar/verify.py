"""Exact checkers for equation systems, factorization triples and direct sums."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

from . import geninv
from .factorization import RankFactorization, full_rank_factorize, uniqueness_witness
from .linalg import (
    DimensionError,
    Matrix,
    is_direct_sum,
    left_null_basis,
    row_basis,
    same_span,
)
from .scalars import CorestarError


class System(enum.Enum):
    PENROSE = "penrose"
    CORE_FIVE = "core5"
    CORE_THREE = "core3"
    DUAL_FIVE = "dual5"
    DUAL_THREE = "dual3"
    GROUP = "group"


# Each equation maps (A, X) to (lhs, rhs).
Equation = Callable[[Matrix, Matrix], "tuple[Matrix, Matrix]"]

EQUATIONS: dict[str, Equation] = {
    "AXA=A": lambda A, X: (A @ X @ A, A),
    "XAX=X": lambda A, X: (X @ A @ X, X),
    "(AX)*=AX": lambda A, X: ((A @ X).H, A @ X),
    "(XA)*=XA": lambda A, X: ((X @ A).H, X @ A),
    "AX^2=X": lambda A, X: (A @ X @ X, X),
    "XA^2=A": lambda A, X: (X @ A @ A, A),
    "X^2A=X": lambda A, X: (X @ X @ A, X),
    "A^2X=A": lambda A, X: (A @ A @ X, A),
    "AX=XA": lambda A, X: (A @ X, X @ A),
}

PENROSE_NAMES = {1: "AXA=A", 2: "XAX=X", 3: "(AX)*=AX", 4: "(XA)*=XA"}

_SYSTEMS = {
    System.CORE_FIVE: ("AXA=A", "XAX=X", "(AX)*=AX", "AX^2=X", "XA^2=A"),
    System.CORE_THREE: ("(AX)*=AX", "AX^2=X", "XA^2=A"),
    System.DUAL_FIVE: ("AXA=A", "XAX=X", "(XA)*=XA", "X^2A=X", "A^2X=A"),
    System.DUAL_THREE: ("(XA)*=XA", "X^2A=X", "A^2X=A"),
    System.GROUP: ("AXA=A", "XAX=X", "AX=XA"),
}


@dataclass(frozen=True)
class EquationSpec:
    system: System
    subset: frozenset = frozenset()

    def __post_init__(self):
        if self.system is System.PENROSE:
            if not self.subset or not self.subset <= {1, 2, 3, 4}:
                raise CorestarError(f"Penrose subset must be a nonempty subset of 1..4, got {set(self.subset)}")
        elif self.subset:
            raise CorestarError(f"{self.system.value} takes no subset")

    @classmethod
    def penrose(cls, *indices: int) -> EquationSpec:
        return cls(System.PENROSE, frozenset(indices))

    @property
    def equations(self) -> tuple[str, ...]:
        if self.system is System.PENROSE:
            return tuple(PENROSE_NAMES[i] for i in sorted(self.subset))
        return _SYSTEMS[self.system]

    @property
    def square_only(self) -> bool:
        return self.system is not System.PENROSE

    def label(self) -> str:
        if self.system is System.PENROSE:
            return "{" + ",".join(str(i) for i in sorted(self.subset)) + "}"
        return self.system.value

    @classmethod
    def parse(cls, text: str) -> EquationSpec:
        """``"1,3"`` / ``"1234"`` style Penrose subsets, or a system name such as ``core5``."""
        t = text.strip().lower()
        for s in System:
            if t == s.value and s is not System.PENROSE:
                return cls(s)
        digits = [c for c in t if c not in "{}, "]
        if digits and all(c in "1234" for c in digits):
            return cls.penrose(*(int(c) for c in digits))
        raise CorestarError(f"unknown equation system {text!r}")


CORE_FIVE = EquationSpec(System.CORE_FIVE)
CORE_THREE = EquationSpec(System.CORE_THREE)
DUAL_FIVE = EquationSpec(System.DUAL_FIVE)
DUAL_THREE = EquationSpec(System.DUAL_THREE)
GROUP_SYSTEM = EquationSpec(System.GROUP)
MOORE_PENROSE = EquationSpec.penrose(1, 2, 3, 4)

# defining system of each inverse kind
KIND_SYSTEMS = {
    "13": EquationSpec.penrose(1, 3),
    "14": EquationSpec.penrose(1, 4),
    "group": GROUP_SYSTEM,
    "mp": MOORE_PENROSE,
    "core": CORE_FIVE,
    "dualcore": DUAL_FIVE,
}


@dataclass
class Check:
    name: str
    passed: bool
    residual: Matrix | None = None
    detail: str | None = None

    def to_json(self) -> dict:
        doc = {"check": self.name, "pass": self.passed}
        if self.residual is not None:
            doc["residual"] = self.residual.to_json()
        if self.detail is not None:
            doc["detail"] = self.detail
        return doc


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        doc = {"pass": self.passed, "checks": [c.to_json() for c in self.checks]}
        if self.witnesses:
            doc["witnesses"] = {k: w.to_json() for k, w in sorted(self.witnesses.items())}
        return doc


def _conformable(A: Matrix, X: Matrix, spec: EquationSpec):
    if spec.square_only and not A.is_square:
        raise DimensionError(f"{spec.label()} needs a square A, got {A.shape}")
    if X.shape != (A.cols, A.rows):
        raise DimensionError(f"X must be {A.cols}x{A.rows} for A of shape {A.shape}, got {X.shape}")
    if X.field != A.field:
        raise CorestarError(f"A over {A.field} but X over {X.field}")


def check_equations(A: Matrix, X: Matrix, spec: EquationSpec) -> VerificationReport:
    """Check every equation of ``spec`` separately; failures carry ``lhs - rhs``."""
    _conformable(A, X, spec)
    report = VerificationReport()
    for name in spec.equations:
        lhs, rhs = EQUATIONS[name](A, X)
        ok = lhs == rhs
        report.checks.append(Check(name, ok, None if ok else lhs - rhs))
    return report


def satisfies(A: Matrix, X: Matrix, spec: EquationSpec) -> bool:
    """Short-circuiting boolean form of :func:`check_equations`, without validation."""
    for name in spec.equations:
        lhs, rhs = EQUATIONS[name](A, X)
        if lhs != rhs:
            return False
    return True


def factorization_triples(A: Matrix, dual: bool = False, F: RankFactorization | None = None):
    """The three candidate factorizations of ``(A*)^2 A`` (or ``A (A*)^2`` when dual)."""
    F = F or full_rank_factorize(A)
    B, C, S = F.B, F.C, A.H
    if dual:
        target = A @ S @ S
        pairs = [(B, C @ S @ S), (A @ S @ C.H, B.H), (A @ C.H, B.H @ S)]
    else:
        target = S @ S @ A
        pairs = [(S @ S @ B, C), (C.H, B.H @ S @ A), (S @ C.H, B.H @ A)]
    return target, [RankFactorization(target, L, R) for L, R in pairs]


def check_factorization_triples(A: Matrix, mode: str = "core") -> VerificationReport:
    """Whether the three triples are essentially unique (epic, monic) factorizations.

    The overall verdict should equal core invertibility (``mode="core"``) or
    dual core invertibility (``mode="dual"``).
    """
    if mode not in ("core", "dual"):
        raise CorestarError(f"mode must be 'core' or 'dual', got {mode!r}")
    if not A.is_square:
        raise DimensionError(f"expected a square matrix, got {A.shape}")
    target, triples = factorization_triples(A, dual=(mode == "dual"))
    report = VerificationReport()
    for k, T in enumerate(triples, 1):
        prod = T.B @ T.C
        ok = prod == target
        report.checks.append(Check(f"T{k}: product", ok, None if ok else prod - target))
        rb, rc = T.B.rank, T.C.rank
        report.checks.append(
            Check(f"T{k}: left factor epic", rb == T.B.cols, detail=f"rank {rb} of {T.B.cols} columns")
        )
        report.checks.append(
            Check(f"T{k}: right factor monic", rc == T.C.rows, detail=f"rank {rc} of {T.C.rows} rows")
        )
    for i, j in ((1, 2), (1, 3), (2, 3)):
        name = f"witness T{i}-T{j}"
        w = uniqueness_witness(triples[i - 1], triples[j - 1])
        report.checks.append(Check(name, w is not None))
        if w is not None:
            report.witnesses[name] = w
    return report


@dataclass
class Statement:
    name: str
    verdict: bool
    bases: dict[str, Matrix] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "pass": self.verdict,
            "bases": {k: v.to_json() for k, v in self.bases.items()},
        }


@dataclass
class DecompositionReport:
    """Image/kernel statements for one square matrix under the row-vector action.

    ``expected`` is the geninv flag the statements should agree with:
    core-and-dual-core invertibility for ``n >= 2``, Moore-Penrose
    invertibility for ``n == 1``.
    """

    n: int
    statements: list[Statement]
    expected: bool
    coexistence: bool
    has_mp: bool
    note: str = "direct-summand conditions hold vacuously over a field; only the subspace equalities are tested"

    @property
    def verdict(self) -> bool:
        return all(s.verdict for s in self.statements)

    @property
    def consistent(self) -> bool:
        return all(s.verdict == self.expected for s in self.statements)

    def __getitem__(self, name: str) -> Statement:
        for s in self.statements:
            if s.name == name:
                return s
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "pass": self.verdict,
            "expected": self.expected,
            "consistent": self.consistent,
            "coexistence": self.coexistence,
            "has_mp": self.has_mp,
            "note": self.note,
            "statements": [s.to_json() for s in self.statements],
        }


def _im(M: Matrix) -> Matrix:
    return row_basis(M)


def _ker(M: Matrix) -> Matrix:
    return left_null_basis(M)


def _equal_pair(name, lhs_a, rhs_a, lhs_b, rhs_b, labels) -> Statement:
    ok = same_span(lhs_a, rhs_a) and same_span(lhs_b, rhs_b)
    return Statement(name, ok, dict(zip(labels, (lhs_a, rhs_a, lhs_b, rhs_b))))


def _sum_pair(name, u1, v1, u2, v2, dim, labels) -> Statement:
    ok = is_direct_sum(u1, v1, dim) and is_direct_sum(u2, v2, dim)
    return Statement(name, ok, dict(zip(labels, (u1, v1, u2, v2))))


def check_decompositions(A: Matrix, n: int = 2) -> DecompositionReport:
    """Image/kernel equalities and direct-sum decompositions of ``F^m`` for ``A``.

    Im is the row space and Ker the left null space.  The ring-level
    statements (left/right annihilators in the matrix ring) are evaluated
    row by row (left ideals) or column by column (right ideals), which is
    exact because a left ideal of M_m(F) is all matrices with rows in a
    fixed subspace.
    """
    if not A.is_square:
        raise DimensionError(f"expected a square matrix, got {A.shape}")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise CorestarError(f"exponent n must be an integer >= 1, got {n!r}")
    m = A.rows
    S = A.H
    Sn, An = S ** n, A ** n
    St, Ant = Sn.T, An.T  # column spaces / right annihilators via plain transpose

    statements = [
        _equal_pair(
            "Im (A*)^n A = Im A, Ker A (A*)^n = Ker A",
            _im(Sn @ A), _im(A), _ker(A @ Sn), _ker(A),
            ("Im (A*)^n A", "Im A", "Ker A(A*)^n", "Ker A"),
        ),
        _equal_pair(
            "Im A^n A* = Im A*, Ker A* A^n = Ker A*",
            _im(An @ S), _im(S), _ker(S @ An), _ker(S),
            ("Im A^n A*", "Im A*", "Ker A*A^n", "Ker A*"),
        ),
        _sum_pair(
            "Ker A + Im (A*)^n, Ker (A*)^n + Im A",
            _ker(A), _im(Sn), _ker(Sn), _im(A), m,
            ("Ker A", "Im (A*)^n", "Ker (A*)^n", "Im A"),
        ),
        _sum_pair(
            "Ker A* + Im A^n, Ker A^n + Im A*",
            _ker(S), _im(An), _ker(An), _im(S), m,
            ("Ker A*", "Im A^n", "Ker A^n", "Im A*"),
        ),
        # ring form: left annihilator  °x = {y : yx = 0}, left ideal Rx
        _sum_pair(
            "R = °A + R(A*)^n, R = °((A*)^n) + RA",
            _ker(A), _im(Sn), _ker(Sn), _im(A), m,
            ("°A", "R(A*)^n", "°((A*)^n)", "RA"),
        ),
        # right annihilator x° = {y : xy = 0}, right ideal xR, tested column-wise
        _sum_pair(
            "R = (A*)° + A^nR, R = (A^n)° + A*R",
            _ker(S.T), _im(Ant), _ker(Ant), _im(S.T), m,
            ("(A*)°", "A^nR", "(A^n)°", "A*R"),
        ),
        _sum_pair(
            "R = °(A*) + RA^n, R = °(A^n) + RA*",
            _ker(S), _im(An), _ker(An), _im(S), m,
            ("°(A*)", "RA^n", "°(A^n)", "RA*"),
        ),
        _sum_pair(
            "R = A° + (A*)^nR, R = ((A*)^n)° + AR",
            _ker(A.T), _im(St), _ker(St), _im(A.T), m,
            ("A°", "(A*)^nR", "((A*)^n)°", "AR"),
        ),
    ]

    profile = geninv.existence_profile(A, max(n, 2))
    coexistence = profile.has_core and profile.has_dual_core
    expected = coexistence if n >= 2 else profile.has_mp
    return DecompositionReport(n, statements, expected, coexistence, profile.has_mp)
