"""Brute-force ground truth over small prime fields.

``enumerate_inverses`` tries every candidate matrix; ``exhaustive_agreement``
sweeps every square matrix of a given size and compares each structural
predicate from :mod:`corestar.geninv` and :mod:`corestar.verify` with what
the enumeration finds.  Sweeps split into disjoint index ranges that can run
in separate processes and merge deterministically.
"""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import geninv
from .linalg import Matrix
from .scalars import GF, CorestarError, FieldDescriptor, FieldKind
from .verify import (
    CORE_FIVE,
    CORE_THREE,
    DUAL_FIVE,
    DUAL_THREE,
    GROUP_SYSTEM,
    MOORE_PENROSE,
    EquationSpec,
    check_decompositions,
    check_factorization_triples,
    satisfies,
)

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "CORESTAR_ORACLE_BUDGET"


class BudgetExceeded(CorestarError):
    pass


def budget_from_env(default: int = DEFAULT_BUDGET) -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value <= 0:
        raise CorestarError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return value


@dataclass(frozen=True)
class OracleQuery:
    A: Matrix
    spec: EquationSpec
    budget: int | None = None  # None reads the environment override

    def __post_init__(self):
        if self.budget is None:
            object.__setattr__(self, "budget", budget_from_env())
        if self.A.field.kind is not FieldKind.PRIME_FIELD:
            raise CorestarError(f"oracle needs a prime field, got {self.A.field}")
        if self.spec.square_only and not self.A.is_square:
            raise CorestarError(f"{self.spec.label()} needs a square matrix")
        if self.candidate_count > self.budget:
            raise BudgetExceeded(
                f"{self.candidate_count} candidates exceed the budget of {self.budget}"
            )

    @property
    def candidate_shape(self) -> tuple[int, int]:
        return self.A.cols, self.A.rows

    @property
    def candidate_count(self) -> int:
        r, c = self.candidate_shape
        return self.A.field.modulus ** (r * c)


def all_matrices(field: FieldDescriptor, rows: int, cols: int):
    """Every ``rows x cols`` matrix over GF(p), in lexicographic order of entries."""
    elems = list(field.elements())
    for values in itertools.product(elems, repeat=rows * cols):
        yield Matrix.from_flat(field, rows, cols, values)


def matrix_at(field: FieldDescriptor, rows: int, cols: int, index: int) -> Matrix:
    """The ``index``-th matrix of :func:`all_matrices` (row-major, last entry fastest)."""
    p = field.modulus
    values = []
    for _ in range(rows * cols):
        index, d = divmod(index, p)
        values.append(d)
    return Matrix.from_flat(field, rows, cols, [field.from_int(v) for v in reversed(values)])


def enumerate_inverses(q: OracleQuery) -> list[Matrix]:
    r, c = q.candidate_shape
    return [X for X in all_matrices(q.A.field, r, c) if satisfies(q.A, X, q.spec)]


KIND_QUERIES = {
    "13": EquationSpec.penrose(1, 3),
    "14": EquationSpec.penrose(1, 4),
    "group": GROUP_SYSTEM,
    "mp": MOORE_PENROSE,
    "core": CORE_THREE,
    "dualcore": DUAL_THREE,
}

# rows of the per-kind tally, in report order
TALLY_KINDS = (
    "13",
    "14",
    "group",
    "mp",
    "core",
    "dualcore",
    "bundle",
    "decompose",
    "decompose_n1",
    "triples_core",
    "triples_dual",
)


@dataclass
class Tally:
    predicate_true: int = 0
    oracle_nonempty: int = 0
    disagreements: int = 0

    def add(self, other: Tally):
        self.predicate_true += other.predicate_true
        self.oracle_nonempty += other.oracle_nonempty
        self.disagreements += other.disagreements


@dataclass
class AgreementReport:
    p: int
    m: int
    n: int
    total: int = 0
    tallies: dict[str, Tally] = field(default_factory=lambda: {k: Tally() for k in TALLY_KINDS})
    disagreeing: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.disagreeing

    def merge(self, other: AgreementReport):
        self.total += other.total
        for k in TALLY_KINDS:
            self.tallies[k].add(other.tallies[k])
        self.disagreeing.extend(other.disagreeing)
        self.disagreeing.sort(key=lambda d: (d["index"], d["kind"]))

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "n": self.n,
            "total": self.total,
            "ok": self.ok,
            "tallies": {
                k: {
                    "predicate_true": t.predicate_true,
                    "oracle_nonempty": t.oracle_nonempty,
                    "disagreements": t.disagreements,
                }
                for k, t in self.tallies.items()
            },
            "disagreeing": self.disagreeing,
        }


def _sweep_one(A: Matrix, n: int, index: int, report: AgreementReport):
    profile = geninv.existence_profile(A, n)
    solutions = {kind: enumerate_inverses(OracleQuery(A, spec)) for kind, spec in KIND_QUERIES.items()}
    # reduced and full systems must have identical solution sets
    core5 = enumerate_inverses(OracleQuery(A, CORE_FIVE))
    dual5 = enumerate_inverses(OracleQuery(A, DUAL_FIVE))

    predicates = {
        "13": profile.has13,
        "14": profile.has14,
        "group": profile.has_group,
        "mp": profile.has_mp,
        "core": profile.has_core,
        "dualcore": profile.has_dual_core,
    }

    def record(kind: str, predicate: bool, oracle: bool, problem: str | None = None):
        t = report.tallies[kind]
        t.predicate_true += predicate
        t.oracle_nonempty += oracle
        if predicate != oracle or problem:
            t.disagreements += 1
            report.disagreeing.append(
                {
                    "index": index,
                    "kind": kind,
                    "matrix": A.entries_text(),
                    "predicate": predicate,
                    "oracle": oracle,
                    "problem": problem or "predicate and oracle disagree",
                }
            )

    for kind, pred in predicates.items():
        sols = solutions[kind]
        problem = None
        if pred and sols:
            X = geninv.compute_inverse(A, kind)
            if X is None or X not in sols:
                problem = "formula output not among oracle solutions"
            elif kind in ("group", "mp", "core", "dualcore") and len(sols) != 1:
                problem = f"{len(sols)} solutions for a unique inverse"
        if kind == "core" and sols != core5:
            problem = "reduced and five-equation core systems differ"
        if kind == "dualcore" and sols != dual5:
            problem = "reduced and five-equation dual core systems differ"
        if kind in ("core", "dualcore") and len(sols) > 1:
            problem = f"{len(sols)} solutions for a unique inverse"
        record(kind, pred, bool(sols), problem)

    oracle_coexist = bool(solutions["core"]) and bool(solutions["dualcore"])
    bundle = geninv.coexistence_bundle(A, n)
    problem = None
    if bundle is not None and oracle_coexist:
        for name, kind in (("core", "core"), ("dual_core", "dualcore"), ("mp", "mp"), ("group", "group")):
            if solutions[kind] != [getattr(bundle, name)]:
                problem = f"bundle {name} is not the oracle's unique solution"
                break
    record("bundle", bundle is not None, oracle_coexist, problem)
    dec = check_decompositions(A, n)
    record("decompose", dec.verdict, oracle_coexist, None if dec.consistent else "statements disagree")
    dec1 = check_decompositions(A, 1)
    record("decompose_n1", dec1.verdict, bool(solutions["mp"]), None if dec1.consistent else "statements disagree")
    record("triples_core", check_factorization_triples(A, "core").passed, bool(solutions["core"]))
    record("triples_dual", check_factorization_triples(A, "dual").passed, bool(solutions["dualcore"]))


def sweep_range(p: int, m: int, n: int, start: int, stop: int) -> AgreementReport:
    """Sweep matrices with indices in ``[start, stop)``; see :func:`matrix_at`."""
    field_ = GF(p)
    report = AgreementReport(p, m, n)
    for index in range(start, stop):
        _sweep_one(matrix_at(field_, m, m, index), n, index, report)
        report.total += 1
    return report


def _sweep_args(args):
    return sweep_range(*args)


def exhaustive_agreement(
    p: int, m: int = 2, n: int = 2, *, budget: int | None = None, workers: int = 1
) -> AgreementReport:
    """Compare every predicate with brute force over all ``m x m`` matrices of GF(p)."""
    field_ = GF(p)  # validates p
    if m < 1:
        raise CorestarError(f"matrix size must be positive, got {m}")
    if not isinstance(n, int) or n < 2:
        raise CorestarError(f"exponent n must be an integer >= 2, got {n!r}")
    budget = budget_from_env() if budget is None else budget
    count = field_.modulus ** (m * m)
    if count * count > budget:
        raise BudgetExceeded(f"{count} matrices x {count} candidates exceed the budget of {budget}")

    report = AgreementReport(p, m, n)
    if workers <= 1:
        report.merge(sweep_range(p, m, n, 0, count))
        return report
    step = -(-count // workers)
    chunks = [(p, m, n, lo, min(lo + step, count)) for lo in range(0, count, step)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_sweep_args, chunks):
            report.merge(part)
    return report
