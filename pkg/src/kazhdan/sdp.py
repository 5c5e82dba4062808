"""The spectral-gap SDP: maximize eps with Delta^2 - eps*Delta accounted
by a PSD Gram matrix over the ball.

For each g in the support universe (every pairing product u^-1 v plus the
supports of Delta^2 and Delta) the constraint reads

    sum_{(i,j): u_i^-1 u_j = g} Q_ij + eps * delta_g = delta2_g,

with Q an n x n PSD matrix indexed by Ball(d).  Fibers of distinct g are
disjoint, so the normal equations of the affine projection are diagonal
plus a rank-one column for eps -- the internal splitting solver exploits
that shape (Sherman-Morrison) and only pays one symmetric
eigendecomposition per iteration for the PSD projection.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .backends import ElementId
from .balls import Ball
from .ring import LaplacianBundle, RingElem


class AssemblyError(ValueError):
    """Raised when Delta^2 support escapes the pairing universe, which
    signals inconsistent identification in the backend."""


@dataclass
class SdpProblem:
    ball: Ball
    n: int
    keys: List[ElementId]                    # universe, deterministic order
    fibers: List[np.ndarray]                 # flat indices into Q.ravel()
    fiber_pairs: List[List[Tuple[int, int]]]
    t_exact: List[int]                       # coeff of g in Delta^2
    u_exact: List[int]                       # coeff of g in Delta
    t: np.ndarray = field(repr=False, default=None)
    u: np.ndarray = field(repr=False, default=None)

    @property
    def num_constraints(self) -> int:
        return len(self.keys)


@dataclass
class SolverParams:
    tolerance: float = 1e-8
    max_iters: int = 200_000
    rho: float = 20.0
    over_relaxation: float = 1.6
    check_every: int = 50

    def __post_init__(self):
        if self.tolerance <= 0 or self.max_iters <= 0 or self.rho <= 0:
            raise ValueError("solver parameters must be positive")
        if not 0.5 <= self.over_relaxation < 2.0:
            raise ValueError("over-relaxation must lie in [0.5, 2)")


@dataclass
class GramSolution:
    Q: np.ndarray
    eps_numeric: float
    residual: float          # max constraint violation of (Q, eps)
    iterations: int
    converged: bool
    solve_seconds: float = 0.0
    min_eigenvalue: float = 0.0

    def diagnostics(self) -> Dict[str, float]:
        return {
            "eps_numeric": self.eps_numeric,
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
            "solve_seconds": round(self.solve_seconds, 3),
            "min_eigenvalue": self.min_eigenvalue,
        }


def assemble(bundle: LaplacianBundle, ball: Ball) -> SdpProblem:
    """Build constraints from exact integer targets; floats are derived."""
    if ball.radius < 1:
        raise ValueError("need ball radius d >= 1")
    n = len(ball)
    delta = bundle.delta
    delta2 = bundle.delta_squared()
    fibers_by_key = ball.pairing()
    for g in delta2.support():
        if g not in fibers_by_key:
            raise AssemblyError(
                f"Delta^2 support element {ball.backend.describe(g)} missing "
                "from the pairing universe (identification inconsistency)")
    keys = sorted(fibers_by_key, key=ball.backend.sort_key)
    fibers, fiber_pairs, t_exact, u_exact = [], [], [], []
    for g in keys:
        pairs = fibers_by_key[g]
        fiber_pairs.append(pairs)
        fibers.append(np.array([i * n + j for i, j in pairs], dtype=np.intp))
        t_exact.append(int(delta2.coeff(g)))
        u_exact.append(int(delta.coeff(g)))
    problem = SdpProblem(
        ball=ball, n=n, keys=keys, fibers=fibers, fiber_pairs=fiber_pairs,
        t_exact=t_exact, u_exact=u_exact,
        t=np.array(t_exact, dtype=float), u=np.array(u_exact, dtype=float))
    if sum(t_exact) != 0 or sum(u_exact) != 0:
        raise AssemblyError("targets escaped the augmentation ideal")
    return problem


def solve_internal(problem: SdpProblem,
                   params: SolverParams = SolverParams()) -> GramSolution:
    """Operator-splitting solve (ADMM with over-relaxation).

    x-block: exact projection onto the affine constraint set with eps as
    an appended scalar column (normal equations are diagonal + rank-one).
    z-block: PSD projection of Q by eigendecomposition; the objective
    'maximize eps' lives here as a linear drift on the eps copy.
    Deterministic: Q = 0, eps = 0 start, fixed iteration order.
    """
    n = problem.n
    fibers = problem.fibers
    sizes = np.array([len(f) for f in fibers], dtype=float)
    idx = np.concatenate(fibers)
    starts = np.cumsum([0] + [len(f) for f in fibers])[:-1]
    reps = np.array([len(f) for f in fibers])
    tvec = problem.t
    uvec = problem.u
    dinv = 1.0 / sizes
    w = dinv * uvec
    denom = 1.0 + uvec @ w
    rho = params.rho
    alpha = params.over_relaxation

    def gather(qflat: np.ndarray, eps: float) -> np.ndarray:
        return np.add.reduceat(qflat[idx], starts) + uvec * eps

    def project_affine(qflat: np.ndarray, eps: float):
        r = tvec - gather(qflat, eps)
        y = dinv * r - w * ((w @ r) / denom)
        qflat[idx] += np.repeat(y, reps)
        return qflat, eps + float(uvec @ y)

    Z = np.zeros((n, n))
    eta = 0.0
    U = np.zeros((n, n))
    v = 0.0
    t0 = time.time()
    it = 0
    converged = False
    for it in range(1, params.max_iters + 1):
        Qx, ex = project_affine((Z - U).ravel().copy(), eta - v)
        Qx = Qx.reshape(n, n)
        Qh = alpha * Qx + (1.0 - alpha) * Z
        eh = alpha * ex + (1.0 - alpha) * eta
        zin = Qh + U
        zin = 0.5 * (zin + zin.T)
        ew, evec = np.linalg.eigh(zin)
        Z = (evec * np.maximum(ew, 0.0)) @ evec.T
        eta = eh + v + 1.0 / rho
        U = U + Qh - Z
        v = v + eh - eta
        if it % params.check_every == 0:
            res = float(np.max(np.abs(tvec - gather(Z.ravel(), eta))))
            gap = abs(ex - eta)
            if res < params.tolerance and gap < params.tolerance * 10.0:
                converged = True
                break
    res = float(np.max(np.abs(tvec - gather(Z.ravel(), eta))))
    Z = 0.5 * (Z + Z.T)
    min_eig = float(np.linalg.eigvalsh(Z).min()) if n else 0.0
    return GramSolution(Q=Z, eps_numeric=float(eta), residual=res,
                        iterations=it, converged=converged,
                        solve_seconds=time.time() - t0, min_eigenvalue=min_eig)


def constraint_residuals(problem: SdpProblem, Q: np.ndarray, eps: float) -> np.ndarray:
    qflat = Q.ravel()
    out = np.empty(len(problem.fibers))
    for k, f in enumerate(problem.fibers):
        out[k] = qflat[f].sum() + problem.u[k] * eps - problem.t[k]
    return out


def validate_solution(problem: SdpProblem, Q: np.ndarray, eps: float,
                      tolerance: float = 1e-6) -> GramSolution:
    """Symmetrize, floor negative eigenvalues, and check feasibility.

    Used by the import path; rejects matrices violating constraints by
    more than the tolerance.
    """
    if Q.shape != (problem.n, problem.n):
        raise ValueError(f"expected {problem.n}x{problem.n} matrix, got {Q.shape}")
    Q = 0.5 * (Q + Q.T)
    res = float(np.max(np.abs(constraint_residuals(problem, Q, eps))))
    if res > tolerance:
        raise ValueError(f"imported solution violates constraints by {res:.3e} "
                         f"(tolerance {tolerance:.1e})")
    ew, evec = np.linalg.eigh(Q)
    floored = float(ew.min())
    Q = (evec * np.maximum(ew, 0.0)) @ evec.T
    Q = 0.5 * (Q + Q.T)
    res = float(np.max(np.abs(constraint_residuals(problem, Q, eps))))
    return GramSolution(Q=Q, eps_numeric=float(eps), residual=res, iterations=0,
                        converged=True, min_eigenvalue=floored)
