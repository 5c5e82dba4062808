"""Exact-rational certification of a numeric Gram solution.

Pipeline: round Q to dyadic rationals, project into the augmentation
ideal with P = I - J/n on both sides (an identity, not a tolerance),
prove positive semidefiniteness by an exact pivoted LDL^T factorization
(with a dyadic shift tau*P fallback when rounding left a tiny negative
eigenvalue), account the certified Gram matrix back into the group ring
through the pairing table, and penalize the exact residual c:

    eps_certified = eps - 2^(2D-1) * ||c||_1

(2^(2D-2) when S has no self-inverse elements), where 2^D bounds the
word length of everything in the support of c.  A positive result is a
true spectral-gap lower bound regardless of solver quality or incomplete
identification, and yields kappa >= sqrt(2*eps_certified/|S|).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .backends import Backend, ElementId
from .balls import Ball
from .ring import LaplacianBundle, RingElem


class CertificationError(ValueError):
    pass


TAU_SCHEDULE: Tuple[Fraction, ...] = (Fraction(0),) + tuple(
    Fraction(1, 2 ** e) for e in range(40, 7, -4))


# ---------------------------------------------------------------------------
# rounding and projection


def round_to_dyadic(Q: np.ndarray, bits: int) -> List[List[int]]:
    """Entrywise nearest multiple of 2^-bits, as integer numerators.

    The input is symmetrized first (0.5*(Q+Q^T) is exactly symmetric in
    IEEE arithmetic), so the integer matrix is symmetric on the nose.
    """
    Q = 0.5 * (Q + Q.T)
    scaled = Q * float(2 ** bits)
    return [[int(round(v)) for v in row] for row in scaled]


def project_augmentation(R_num: Sequence[Sequence[int]], bits: int
                         ) -> Tuple[List[List[int]], int]:
    """Q' = P R P with P = I - J/n, over the common denominator n^2 2^bits.

    Row and column sums of the result vanish identically, so the group
    ring element accounted by Q' lies in the augmentation ideal.
    """
    n = len(R_num)
    rows = [sum(r) for r in R_num]
    cols = [sum(R_num[i][j] for i in range(n)) for j in range(n)]
    total = sum(rows)
    den = n * n * (2 ** bits)
    out = [[n * n * R_num[i][j] - n * rows[i] - n * cols[j] + total
            for j in range(n)] for i in range(n)]
    return out, den


def round_and_project(Q: np.ndarray, bits: int) -> Tuple[List[List[int]], int]:
    """Rounded, augmentation-projected Gram matrix as (numerators, denominator)."""
    if Q.shape[0] != Q.shape[1]:
        raise ValueError("Q must be square")
    return project_augmentation(round_to_dyadic(Q, bits), bits)


# ---------------------------------------------------------------------------
# exact pivoted LDL^T via fraction-free (Bareiss) elimination


@dataclass
class LdlFactorization:
    """Witness that Q' + tau*P is PSD.

    ``L`` is unit-lower-triangular of size (n-1) x rank in the permuted
    deflated basis (the ones vector is an exact kernel vector, so the
    last row/column is deflated away), ``r`` the nonnegative pivots;
    ``lift()`` restores the full n x rank accounting factor, using that
    all rows of the matrix sum to zero.
    """

    n: int
    perm: Tuple[int, ...]           # perm[pos] = original deflated index
    L: List[List[Fraction]]         # (n-1) x rank, rows in pivot order
    r: List[Fraction]               # rank pivots, all >= 0
    tau: Fraction

    @property
    def rank(self) -> int:
        return len(self.r)

    def lift(self) -> List[List[Fraction]]:
        """n x rank factor B with B diag(r) B^T equal to Q' + tau*P."""
        m = self.n - 1
        rows: List[List[Fraction]] = [[Fraction(0)] * self.rank for _ in range(self.n)]
        for pos in range(m):
            rows[self.perm[pos]] = list(self.L[pos])
        for k in range(self.rank):
            rows[self.n - 1][k] = -sum(rows[i][k] for i in range(m))
        return rows


def exact_ldl_with_shift(num: Sequence[Sequence[int]], den: int,
                         schedule: Sequence[Fraction] = TAU_SCHEDULE
                         ) -> LdlFactorization:
    """Factor Q' + tau*P for the first tau in the schedule that succeeds.

    Q' + tau*P is PSD on the whole space iff its leading (n-1) principal
    block is PSD (rows sum to zero), so the factorization runs deflated.
    """
    n = len(num)
    last_min: Optional[Fraction] = None
    for tau in schedule:
        shifted_num, shifted_den = _shift_matrix(num, den, n, tau)
        result = _bareiss_psd_ldl(shifted_num, n - 1)
        if result is not None:
            perm, L, r = result
            scale = Fraction(1, shifted_den)
            return LdlFactorization(
                n=n, perm=perm, L=L, r=[x * scale for x in r], tau=tau)
        last_min = _min_diag_fraction(shifted_num, shifted_den, n - 1)
    raise CertificationError(
        f"shift schedule exhausted; matrix far from PSD (min diagonal {last_min})")


def _shift_matrix(num, den, n, tau: Fraction):
    """Integer numerators of (num/den) + tau*(I - J/n), common denominator."""
    if tau == 0:
        return [list(row) for row in num], den
    a, b = tau.numerator, tau.denominator
    new_den = den * n * b
    out = [[num[i][j] * n * b + a * den * (n * (i == j) - 1)
            for j in range(n)] for i in range(n)]
    return out, new_den


def _min_diag_fraction(num, den, m) -> Fraction:
    return min(Fraction(num[i][i], den) for i in range(m)) if m else Fraction(0)


def _bareiss_psd_ldl(num: Sequence[Sequence[int]], m: int):
    """Pivoted fraction-free LDL^T of the leading m x m integer block.

    Returns (perm, L, r) on success, None if the block is not PSD.  After
    k elimination steps the live entries are bordered minors of the
    permuted matrix, so every division is exact and the pivots are ratios
    of successive principal minors.  Pivot choice (largest current
    diagonal, lowest index) is deterministic.
    """
    A = [list(row[:m]) for row in num[:m]]
    perm = list(range(m))
    piv_minors: List[int] = []
    cols: List[List[int]] = []
    prev = 1
    rank = 0
    for k in range(m):
        best, best_val = k, A[k][k]
        for i in range(k + 1, m):
            if A[i][i] > best_val:
                best, best_val = i, A[i][i]
        if best_val < 0:
            return None
        if best_val == 0:
            # PSD forces the whole remaining block to vanish
            for i in range(k, m):
                for j in range(k, m):
                    if A[i][j] != 0:
                        return None
            break
        if best != k:
            A[best], A[k] = A[k], A[best]
            for row in A:
                row[best], row[k] = row[k], row[best]
            perm[best], perm[k] = perm[k], perm[best]
            for col in cols:       # earlier L columns follow the row swap
                col[best], col[k] = col[k], col[best]
        pivot = A[k][k]
        piv_minors.append(pivot)
        cols.append([A[i][k] for i in range(m)])
        for i in range(k + 1, m):
            aik = A[i][k]
            rowi = A[i]
            rowk = A[k]
            for j in range(k + 1, m):
                rowi[j] = (pivot * rowi[j] - aik * rowk[j]) // prev
        prev = pivot
        rank += 1
    L = [[Fraction(0)] * rank for _ in range(m)]
    r: List[Fraction] = []
    for k in range(rank):
        d_k = piv_minors[k]
        d_prev = piv_minors[k - 1] if k else 1
        r.append(Fraction(d_k, d_prev))
        for i in range(k + 1, m):
            L[i][k] = Fraction(cols[k][i], d_k)
        L[k][k] = Fraction(1)
    return tuple(perm), L, r


def reconstruct(fact: LdlFactorization) -> List[List[Fraction]]:
    """Multiply out lift * diag(r) * lift^T exactly (test-sized n only)."""
    B = fact.lift()
    n = fact.n
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1):
            v = sum(fact.r[k] * B[i][k] * B[j][k] for k in range(fact.rank))
            out[i][j] = out[j][i] = v
    return out


# ---------------------------------------------------------------------------
# residual and certified bounds


def accounted_element(ball: Ball, num: Sequence[Sequence[int]], den: int,
                      tau: Fraction) -> RingElem:
    """Group-ring element x* (Q' + tau P) x collected over pairing fibers."""
    shifted_num, shifted_den = _shift_matrix(num, den, len(num), tau)
    coeffs: Dict[ElementId, Fraction] = {}
    for g, pairs in ball.pairing().items():
        total = 0
        for i, j in pairs:
            total += shifted_num[i][j]
        if total:
            coeffs[g] = Fraction(total, shifted_den)
    return RingElem(ball.backend, coeffs)


def residual(bundle: LaplacianBundle, eps: Fraction, ball: Ball,
             num: Sequence[Sequence[int]], den: int, tau: Fraction) -> RingElem:
    """c = Delta^2 - eps*Delta - accounted(Q' + tau P), in exact rationals."""
    delta = bundle.delta.to_fraction()
    delta2 = (bundle.delta * bundle.delta).to_fraction()
    acc = accounted_element(ball, num, den, tau)
    c = delta2 - delta.scale(eps) - acc
    if c.augmentation() != 0:
        raise CertificationError(
            "residual escaped the augmentation ideal (accounting bug)")
    return c


def support_range_exponent(d: int) -> int:
    """Least D with 2d <= 2^D; everything in supp(c) has length <= 2d."""
    return max(1, math.ceil(math.log2(2 * d)))


def kappa_truncated(eps_cert: Fraction, s_size: int, places: int = 10) -> str:
    """Floor of sqrt(2 eps / |S|) at the given number of decimals.

    Exact integer square root, so the printed bound never exceeds the
    certified value.
    """
    if eps_cert <= 0:
        return "0." + "0" * places
    val = 2 * eps_cert / s_size
    scaled = (val.numerator * 10 ** (2 * places)) // val.denominator
    root = math.isqrt(scaled)
    q, rem = divmod(root, 10 ** places)
    return f"{q}.{rem:0{places}d}"


@dataclass
class Certificate:
    """Everything needed to re-verify the bound from scratch.

    The residual is stored as (i, j, value) triples where (i, j) is a
    pairing pair with u_i^-1 u_j equal to the support element; together
    with the ball words this pins every support element without trusting
    any extra data.
    """

    group_name: str
    backend_kind: str                     # fp | matrix | monomial
    group_block: str
    d: int
    n: int
    symmetric_size: int
    bits: int
    complete_identification: bool
    involution_free: bool
    eps_numeric: float
    eps: Fraction
    tau: Fraction
    D: int
    penalty_pow: int
    ball_words: List[Tuple[str, ...]]
    R_num: List[List[int]]                # rounded numerators over 2^bits
    perm: Tuple[int, ...]
    L: List[List[Fraction]]
    r: List[Fraction]
    c_entries: List[Tuple[int, int, Fraction]]
    c_l1: Fraction
    eps_certified: Fraction
    kappa_certified_str: str

    @property
    def kappa_certified(self) -> float:
        return float(Fraction(self.kappa_certified_str))

    @property
    def positive(self) -> bool:
        return self.eps_certified > 0


def certify(bundle: LaplacianBundle, ball: Ball, Q: np.ndarray,
            eps_numeric: float, bits: int = 32,
            group_name: str = "", backend_kind: str = "",
            schedule: Sequence[Fraction] = TAU_SCHEDULE) -> Certificate:
    """Full certification of a numeric Gram solution."""
    backend = ball.backend
    n = len(ball)
    if Q.shape != (n, n):
        raise ValueError("Gram matrix does not match the ball")
    R_num = round_to_dyadic(Q, bits)
    num, den = project_augmentation(R_num, bits)
    fact = exact_ldl_with_shift(num, den, schedule)
    eps = Fraction(round(eps_numeric * 2 ** bits), 2 ** bits)
    c = residual(bundle, eps, ball, num, den, fact.tau)
    c_l1 = Fraction(c.l1_norm())
    D = support_range_exponent(ball.radius)
    involution_free = not backend.symmetric_set_has_involution()
    penalty_pow = 2 * D - 2 if involution_free else 2 * D - 1
    eps_certified = eps - (2 ** penalty_pow) * c_l1
    first_pair = {g: pairs[0] for g, pairs in ball.pairing().items()}
    c_entries = []
    for g in sorted(c.coeffs, key=backend.sort_key):
        i, j = first_pair[g]
        c_entries.append((i, j, c.coeffs[g]))
    return Certificate(
        group_name=group_name or backend.name,
        backend_kind=backend_kind or backend_kind_of(backend),
        group_block=backend.group_block(),
        d=ball.radius, n=n, symmetric_size=bundle.size, bits=bits,
        complete_identification=backend.complete_identification,
        involution_free=involution_free,
        eps_numeric=eps_numeric, eps=eps, tau=fact.tau,
        D=D, penalty_pow=penalty_pow,
        ball_words=[tuple(ball.word_of(g)) for g in ball.elements],
        R_num=R_num, perm=fact.perm, L=fact.L, r=fact.r,
        c_entries=c_entries, c_l1=c_l1, eps_certified=eps_certified,
        kappa_certified_str=kappa_truncated(eps_certified, bundle.size))


def backend_kind_of(backend: Backend) -> str:
    from .backends import (FinitelyPresentedBackend, MatrixBackend,
                           MonomialBackend)
    if isinstance(backend, FinitelyPresentedBackend):
        return "fp"
    if isinstance(backend, MatrixBackend):
        return "matrix"
    if isinstance(backend, MonomialBackend):
        return "monomial"
    return "unknown"
