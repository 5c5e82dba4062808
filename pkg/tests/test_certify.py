import random
from fractions import Fraction

import numpy as np
import pytest

from kazhdan.backends import FinitelyPresentedBackend, MatrixBackend, special_linear_spec
from kazhdan.balls import enumerate_ball
from kazhdan.certify import (CertificationError, TAU_SCHEDULE, certify,
                             exact_ldl_with_shift, kappa_truncated,
                             project_augmentation, reconstruct, residual,
                             round_and_project, support_range_exponent)
from kazhdan.presentations import presentation
from kazhdan.ring import laplacian
from kazhdan.sdp import SolverParams, assemble, solve_internal

from oracles import cyclic_gap


def frac_matrix(num, den):
    n = len(num)
    return [[Fraction(num[i][j], den) for j in range(n)] for i in range(n)]


# -- rounding / projection ----------------------------------------------------

def test_all_ones_projects_to_zero():
    Q = np.ones((4, 4))
    num, den = round_and_project(Q, bits=20)
    assert all(v == 0 for row in num for v in row)


def test_projection_annihilates_ones_exactly():
    rng = np.random.default_rng(0)
    A = rng.standard_normal((5, 5))
    Q = A @ A.T
    num, den = round_and_project(Q, bits=32)
    n = 5
    for i in range(n):
        assert sum(num[i][j] for j in range(n)) == 0
        assert sum(num[j][i] for j in range(n)) == 0
    assert sum(num[i][j] for i in range(n) for j in range(n)) == 0


def test_projection_fixes_row_zero_matrices():
    # Q with Q*1 = 0 already: P R P == R when R rows/cols sum to zero
    n = 4
    R = [[3, -1, -1, -1], [-1, 3, -1, -1], [-1, -1, 3, -1], [-1, -1, -1, 3]]
    num, den = project_augmentation(R, bits=0)
    assert frac_matrix(num, den) == frac_matrix(R, 1)


# -- exact LDL with shift -----------------------------------------------------

def test_projector_factors_without_shift():
    # Q' = P itself: PSD of rank n-1, tau stays 0
    n = 5
    R = [[n * (i == j) for j in range(n)] for i in range(n)]
    num, den = project_augmentation(R, bits=0)   # n^2 * P
    fact = exact_ldl_with_shift(num, den)
    assert fact.tau == 0
    assert fact.rank == n - 1
    assert all(r > 0 for r in fact.r)
    rec = reconstruct(fact)
    assert rec == frac_matrix(num, den)


def test_tiny_negative_pivot_needs_first_shift():
    # -(2^-50) P is not PSD; tau = 2^-40 is the first schedule entry that fixes it
    n = 4
    scale = Fraction(-1, 2 ** 50)
    num = [[(n * (i == j) - 1) for j in range(n)] for i in range(n)]
    num = [[v for v in row] for row in num]       # P * n over den n
    fact = exact_ldl_with_shift(
        [[int(v * 1) for v in row] for row in
         [[scale.numerator * (n * (i == j) - 1) for j in range(n)] for i in range(n)]],
        n * 2 ** 50)
    assert fact.tau == Fraction(1, 2 ** 40)
    assert all(r >= 0 for r in fact.r)


def test_far_from_psd_exhausts_schedule():
    n = 3
    # -P at unit scale: needs tau = 1 which is past the schedule end
    num = [[-(n * (i == j) - 1) for j in range(n)] for i in range(n)]
    with pytest.raises(CertificationError, match="schedule exhausted"):
        exact_ldl_with_shift(num, n)


def test_reconstruction_identity_random_psd():
    rng = np.random.default_rng(7)
    for n in (3, 6, 11, 15):
        A = rng.standard_normal((n, n))
        Q = A @ A.T
        num, den = round_and_project(Q, bits=24)
        fact = exact_ldl_with_shift(num, den)
        target_num, target_den = num, den
        if fact.tau:
            from kazhdan.certify import _shift_matrix
            target_num, target_den = _shift_matrix(num, den, n, fact.tau)
        assert reconstruct(fact) == frac_matrix(target_num, target_den)
        assert all(r >= 0 for r in fact.r)


# -- residual and certified bounds --------------------------------------------

def z3_setup(tol=1e-10):
    backend = FinitelyPresentedBackend(presentation(["a"], ["a^3"], name="Z/3"))
    backend.prepare(2)
    bundle = laplacian(backend)
    ball = enumerate_ball(backend, 1)
    problem = assemble(bundle, ball)
    sol = solve_internal(problem, SolverParams(tolerance=tol))
    return backend, bundle, ball, sol


def test_end_to_end_z3_certificate():
    backend, bundle, ball, sol = z3_setup()
    cert = certify(bundle, ball, sol.Q, sol.eps_numeric, bits=32)
    oracle = cyclic_gap(3, [1, 2])
    assert cert.tau == 0
    assert cert.c_l1 < 1e-8
    assert cert.positive
    assert abs(float(cert.eps_certified) - oracle) < 1e-3
    # d=1 ball: D = 1, self-inverse-free S = {a, a^-1} so factor 2^(2D-2) = 1
    assert cert.D == 1
    assert cert.involution_free
    assert cert.penalty_pow == 0


def test_penalty_formula_with_involutions():
    backend = FinitelyPresentedBackend(
        presentation(["s", "t"], ["(s*t)^3"], involutions=["s", "t"], name="A2"))
    backend.prepare(2)
    bundle = laplacian(backend)
    ball = enumerate_ball(backend, 1)
    problem = assemble(bundle, ball)
    sol = solve_internal(problem, SolverParams(tolerance=1e-10))
    cert = certify(bundle, ball, sol.Q, sol.eps_numeric)
    assert cert.D == 1 and not cert.involution_free
    assert cert.penalty_pow == 1                  # 2^(2*1-1) = 2
    assert cert.eps_certified == cert.eps - 2 * cert.c_l1


def test_support_range_exponent():
    assert support_range_exponent(1) == 1
    assert support_range_exponent(2) == 2
    assert support_range_exponent(3) == 3         # 2d=6 <= 8
    assert support_range_exponent(4) == 3


def test_residual_zero_for_exact_solution():
    # Z/3 optimum is exactly Q = 0, eps = 3: zero residual certificate
    backend = FinitelyPresentedBackend(presentation(["a"], ["a^3"], name="Z/3"))
    backend.prepare(2)
    bundle = laplacian(backend)
    ball = enumerate_ball(backend, 1)
    cert = certify(bundle, ball, np.zeros((3, 3)), 3.0)
    assert cert.c_l1 == 0
    assert cert.eps_certified == 3


def test_certified_never_exceeds_numeric():
    backend, bundle, ball, sol = z3_setup()
    for bits in (20, 30, 40):
        cert = certify(bundle, ball, sol.Q, sol.eps_numeric, bits=bits)
        assert float(cert.eps_certified) <= sol.eps_numeric + 2 ** -bits


def test_more_bits_weakly_improve_certificate():
    backend = FinitelyPresentedBackend(
        presentation(["s", "t"], ["(s*t)^3"], involutions=["s", "t"], name="A2"))
    backend.prepare(6)
    bundle = laplacian(backend)
    ball = enumerate_ball(backend, 3)
    problem = assemble(bundle, ball)
    sol = solve_internal(problem, SolverParams(tolerance=1e-10))
    values = [certify(bundle, ball, sol.Q, sol.eps_numeric, bits=b).eps_certified
              for b in (20, 30, 40)]
    assert values[0] <= values[1] + Fraction(1, 2 ** 18)
    assert values[1] <= values[2] + Fraction(1, 2 ** 28)


def test_kappa_truncation_paper_values():
    # Table anchors: eps=0.278648, |S|=12 -> 0.2155...; eps=1.29562, |S|=24 -> 0.3285...
    k1 = kappa_truncated(Fraction(278648, 10 ** 6), 12)
    assert k1.startswith("0.2155")
    k2 = kappa_truncated(Fraction(129562, 10 ** 5), 24)
    assert k2.startswith("0.3285")
    assert kappa_truncated(Fraction(0), 12) == "0." + "0" * 10


def test_kappa_truncation_never_rounds_up():
    val = Fraction(1, 3)
    s = kappa_truncated(val, 2, places=6)
    # sqrt(1/3) = 0.57735026919...: truncated, not rounded to ...27
    assert s == "0.577350"


def test_incomplete_identification_still_certifies():
    """Corrupt the rewrite budget and re-certify: the bound stays valid
    (possibly weaker) because the identity lifts to the free group."""
    from kazhdan.rewriting import RewriteBudget
    spec = presentation(["a"], ["a^3"], name="Z/3")
    coarse = FinitelyPresentedBackend(spec, budget=RewriteBudget(max_rules=2, max_rule_len=2))
    assert not coarse.complete_identification
    coarse.prepare(2)
    bundle = laplacian(coarse)
    ball = enumerate_ball(coarse, 1)
    problem = assemble(bundle, ball)
    sol = solve_internal(problem, SolverParams(tolerance=1e-10))
    cert = certify(bundle, ball, sol.Q, sol.eps_numeric)
    fine_gap = cyclic_gap(3, [1, 2])
    assert float(cert.eps_certified) <= fine_gap + 1e-6
    assert not cert.complete_identification
