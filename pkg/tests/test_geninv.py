import random

import pytest
from conftest import mat
from hypothesis import given
from randmat import gf_suite, perturb_witnesses, qi_suite
from strategies import low_rank_squares, matrices

from corestar import GF, QI, Q, Matrix
from corestar.factorization import full_rank_factorize
from corestar.geninv import (
    KINDS,
    coexistence_bundle,
    coexistence_witnesses,
    compute_inverse,
    core_inverse,
    core_via_composition,
    dual_core_inverse,
    existence_profile,
    group_inverse,
    inv13,
    inv14,
    mp_inverse,
    nonexistence_reason,
)
from corestar.linalg import DimensionError, inverse
from corestar.oracle import all_matrices
from corestar.scalars import CorestarError
from corestar.verify import KIND_SYSTEMS, satisfies


def half(*rows):
    return mat(Q, [[str(x) for x in r] for r in rows])


# worked rank-one example


def test_inverses_of_worked_example(A_q):
    assert inv13(A_q) == half(["1/2", "1/2"], [0, 0])
    assert inv14(A_q) == half([1, 0], [0, 0])
    assert group_inverse(A_q) == A_q
    assert mp_inverse(A_q) == half(["1/2", "1/2"], [0, 0])
    assert core_inverse(A_q) == half(["1/2", "1/2"], ["1/2", "1/2"])
    assert dual_core_inverse(A_q) == half([1, 0], [0, 0])
    assert core_via_composition(A_q) == core_inverse(A_q)
    assert core_via_composition(A_q, dual=True) == dual_core_inverse(A_q)


def test_worked_example_over_small_prime_fields():
    A2 = mat(GF(2), [[1, 0], [1, 0]])
    assert inv13(A2) is None and mp_inverse(A2) is None and core_inverse(A2) is None
    assert inv14(A2) == mat(GF(2), [[1, 0], [0, 0]])
    assert group_inverse(A2) == A2
    A3 = mat(GF(3), [[1, 0], [1, 0]])
    assert core_inverse(A3) == mat(GF(3), [[2, 2], [2, 2]])


def test_nilpotent(nil_q):
    for f in (group_inverse, core_inverse, dual_core_inverse, core_via_composition):
        assert f(nil_q) is None
    assert core_via_composition(nil_q, dual=True) is None
    assert coexistence_bundle(nil_q, 2) is None
    # over Q every matrix has the one-sided and Moore-Penrose inverses
    assert mp_inverse(nil_q) == mat(Q, [[0, 0], [1, 0]])


def test_identity_and_invertible(field):
    eye = Matrix.identity(field, 3)
    for kind in KINDS:
        assert compute_inverse(eye, kind) == eye
    b = coexistence_bundle(eye, 3)
    assert all(M == eye for _, M in b.items())
    M = mat(field, [[1, 1], [0, 1]])
    assert group_inverse(M) == inverse(M) == core_inverse(M) == mp_inverse(M)


def test_zero_matrix_inverses_are_zero(field):
    Z = Matrix.zeros(field, 3, 3)
    for kind in KINDS:
        assert compute_inverse(Z, kind) == Z
    assert all(M == Z for _, M in coexistence_bundle(Z, 2).items())


def test_rectangular_one_sided_and_mp(field):
    @given(matrices(field))
    def check(A):
        for kind in ("13", "14", "mp"):
            X = compute_inverse(A, kind)
            if X is not None:
                assert X.shape == (A.cols, A.rows)
                assert satisfies(A, X, KIND_SYSTEMS[kind])

    check()


def test_bundle_example(A_q):
    b = coexistence_bundle(A_q, 2)
    assert b.core == half(["1/2", "1/2"], ["1/2", "1/2"])
    assert b.dual_core == half([1, 0], [0, 0])
    assert b.mp == half(["1/2", "1/2"], [0, 0])
    assert b.group == A_q
    mu, nu = coexistence_witnesses(A_q, 2)
    assert mu == half(["1/2", 0]) and nu == half([1], [0])


def test_bundle_mp_member_takes_adjoint_of_nu_c():
    # without the adjoint, nu C A^(2n-1) mu* B* gives (1+i)/(1-i)^2 here
    A = mat(QI, [["1+i"]])
    F = full_rank_factorize(A)
    mu, nu = coexistence_witnesses(A, 2, F)
    unadjointed = nu @ F.C @ A ** 3 @ mu.H @ F.B.H
    assert not satisfies(A, unadjointed, KIND_SYSTEMS["mp"])
    b = coexistence_bundle(A, 2)
    assert b.mp == mat(QI, [["1/2-1/2i"]]) == mp_inverse(A)
    assert b.mp == b.dual_core @ A @ b.core


def test_bundle_independent_of_n():
    for A in qi_suite(40, seed=2):
        b2, b3 = coexistence_bundle(A, 2), coexistence_bundle(A, 3)
        assert (b2 is None) == (b3 is None)
        if b2 is not None:
            assert b2 == b3


def test_profile_examples(A_q, nil_q):
    p = existence_profile(A_q, 2)
    flags = [p.has13, p.has14, p.has_group, p.has_mp, p.has_core, p.has_dual_core]
    assert all(flags)
    p = existence_profile(mat(GF(2), [[1, 0], [1, 0]]), 2)
    assert p.has14 and p.has_group
    assert not (p.has13 or p.has_core or p.has_mp)
    p = existence_profile(nil_q, 2)
    assert not (p.has_group or p.has_core or p.has_dual_core or p.coexist_power_form)
    assert p.has13 and p.has14 and p.has_mp


def test_profile_json(A_q):
    doc = existence_profile(A_q, 3).to_json()
    assert doc["n"] == 3 and doc["has_core"] is True
    assert Matrix.from_json(doc["mu"]).shape == (1, 2)
    doc = existence_profile(mat(Q, [[0, 1], [0, 0]]), 2).to_json()
    assert doc["mu"] is None and doc["nu"] is None


def test_argument_validation(A_q):
    wide = mat(Q, [[1, 0, 0]])
    for f in (group_inverse, core_inverse, dual_core_inverse, core_via_composition):
        with pytest.raises(DimensionError):
            f(wide)
    with pytest.raises(DimensionError):
        coexistence_bundle(wide, 2)
    with pytest.raises(DimensionError):
        existence_profile(wide, 2)
    for bad in (1, 0, -1, True, 2.0):
        with pytest.raises(CorestarError):
            coexistence_bundle(A_q, bad)
        with pytest.raises(CorestarError):
            existence_profile(A_q, bad)
    with pytest.raises(CorestarError):
        compute_inverse(A_q, "drazin")


def test_supplied_witnesses_are_checked(A_q):
    with pytest.raises(CorestarError):
        coexistence_bundle(A_q, 2, mu=half([1, 0]))
    with pytest.raises(CorestarError):
        coexistence_bundle(A_q, 2, nu=half([0], [0]))
    with pytest.raises(CorestarError):
        coexistence_bundle(A_q, 2, mu=half([1, 0, 0]))


def test_nonexistence_reasons():
    A2 = mat(GF(2), [[1, 0], [1, 0]])
    assert nonexistence_reason(A2, "mp") == "B*B singular"
    assert nonexistence_reason(A2, "13") == "A*B not left invertible"
    assert nonexistence_reason(A2, "core") == "A*B not left invertible"
    assert nonexistence_reason(A2, "14") is None
    N = mat(Q, [[0, 1], [0, 0]])
    assert nonexistence_reason(N, "group") == "CB singular"
    assert nonexistence_reason(N, "core") == "CB singular"
    assert nonexistence_reason(N, "bundle", 2) == "(A*)^nB not left invertible"
    # CC* is the Gram matrix that fails for this GF(2) row
    assert nonexistence_reason(mat(GF(2), [[1, 1], [0, 0]]), "mp") == "CC* singular"
    with pytest.raises(CorestarError):
        nonexistence_reason(N, "drazin")


def test_nonexistence_reason_matches_formulas(field):
    @given(low_rank_squares(field))
    def check(A):
        for kind in KINDS:
            assert (nonexistence_reason(A, kind) is None) == (compute_inverse(A, kind) is not None)
        for n in (2, 3):
            assert (nonexistence_reason(A, "bundle", n) is None) == (coexistence_bundle(A, n) is not None)

    check()


# invariants, run over seeded suites


def check_invariants(A: Matrix):
    F = full_rank_factorize(A)
    for kind in KINDS:
        X = compute_inverse(A, kind)
        if X is not None:
            assert satisfies(A, X, KIND_SYSTEMS[kind]), kind

    for n in (2, 3):
        p = existence_profile(A, n)
        # core and dual core characterizations
        assert p.has_core == p.core_power_form
        assert p.has_dual_core == p.dual_core_power_form
        # coexistence characterizations
        both = p.has_core and p.has_dual_core
        assert (p.has_mp and p.has_group) == both == p.coexist_power_form == p.coexist_adjoint_form
        if p.mu is not None:
            assert p.mu @ (A.H ** n) @ F.B == Matrix.identity(A.field, F.r)
        if p.nu is not None:
            assert F.C @ (A.H ** n) @ p.nu == Matrix.identity(A.field, F.r)

        b = coexistence_bundle(A, n)
        assert (b is not None) == both
        if b is not None:
            for name, M in b.items():
                assert satisfies(A, M, KIND_SYSTEMS[name.replace("_", "")]), name
            assert b.mp == mp_inverse(A) and b.group == group_inverse(A)
            assert b.core == core_inverse(A) and b.dual_core == dual_core_inverse(A)

    X = core_inverse(A)
    assert X == core_via_composition(A)
    assert dual_core_inverse(A) == core_via_composition(A, dual=True)
    Y = core_inverse(A.H)
    assert dual_core_inverse(A) == (None if Y is None else Y.H)
    if X is not None:
        B, C = F.B, F.C
        assert C @ X @ X @ B @ C @ B == Matrix.identity(A.field, F.r)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_invariants_prime_fields(p):
    for A in gf_suite(p, 80):
        check_invariants(A)


def test_invariants_gaussian_rationals():
    for A in qi_suite(60, seed=99):
        check_invariants(A)


def test_invariants_hypothesis(field):
    @given(low_rank_squares(field, max_size=3))
    def check(A):
        check_invariants(A)

    check()


@pytest.mark.parametrize("p", [2, 3])
def test_invariants_exhaustive_two_by_two(p):
    for A in all_matrices(GF(p), 2, 2):
        check_invariants(A)


def test_witness_perturbation_leaves_bundle_unchanged():
    rng = random.Random(4)
    changed = 0
    for A in qi_suite(40, seed=8) + gf_suite(3, 40):
        F = full_rank_factorize(A)
        for n in (2, 3):
            mu, nu = coexistence_witnesses(A, n, F)
            if mu is None or nu is None:
                continue
            base = coexistence_bundle(A, n, F=F)
            for _ in range(3):
                mu2, nu2 = perturb_witnesses(A, n, F, mu, nu, rng)
                changed += (mu2, nu2) != (mu, nu)
                assert coexistence_bundle(A, n, mu=mu2, nu=nu2, F=F) == base
    # the check must actually exercise distinct witnesses
    assert changed > 0
