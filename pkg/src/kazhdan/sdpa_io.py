"""Sparse SDP interchange files (SDPA-flavoured) and solution import.

Problem export targets the standard sparse SDPA dual form

    maximize  tr(F0 Y)   s.t.  tr(Fk Y) = c_k  (k = 1..m),  Y >= 0,

with two blocks: block 1 is the n x n Gram matrix Q over Ball(d), block 2
a 1x1 slot whose diagonal entry plays the linear role of eps.  Every
constraint k corresponds to one universe element g: the fiber indicator
on block 1 plus the Delta coefficient of g on block 2; the right-hand
side is the Delta^2 coefficient.  See docs/sdp-format.md for the exact
byte-level layout of both files.
"""
from __future__ import annotations

from typing import Dict, List, TextIO, Tuple

import numpy as np

from .sdp import GramSolution, SdpProblem, validate_solution


def export_problem(problem: SdpProblem, fh: TextIO) -> None:
    n = problem.n
    m = problem.num_constraints
    fh.write('"kazhdan spectral-gap SDP: maximize eps (block 2) subject to\n')
    fh.write('"fiber sums of the PSD Gram block matching Delta^2 - eps*Delta\n')
    fh.write(f"{m}\n")
    fh.write("2\n")
    fh.write(f"{n} 1\n")
    fh.write(" ".join(str(t) for t in problem.t_exact) + "\n")
    # objective F0: the eps slot
    fh.write("0 2 1 1 1\n")
    for k, pairs in enumerate(problem.fiber_pairs, start=1):
        weights: Dict[Tuple[int, int], float] = {}
        for i, j in pairs:
            a, b = (i, j) if i <= j else (j, i)
            weights[(a, b)] = weights.get((a, b), 0.0) + (1.0 if a == b else 0.5)
        for (a, b), w in sorted(weights.items()):
            fh.write(f"{k} 1 {a + 1} {b + 1} {_fmt(w)}\n")
        u = problem.u_exact[k - 1]
        if u:
            fh.write(f"{k} 2 1 1 {u}\n")


def _fmt(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def parse_problem_file(fh: TextIO):
    """Parse an exported problem back into raw constraint tuples.

    Returns (m, block_sizes, rhs, entries) where entries are
    (matno, blkno, i, j, value) with 1-based indices, exactly as written.
    """
    lines = [ln.rstrip("\n") for ln in fh if ln.strip() and not ln.lstrip().startswith('"')]
    m = int(lines[0])
    nblocks = int(lines[1])
    sizes = [int(v) for v in lines[2].split()]
    if len(sizes) != nblocks:
        raise ValueError("block size list does not match block count")
    rhs = [float(v) for v in lines[3].split()]
    if len(rhs) != m:
        raise ValueError("right-hand side length does not match constraints")
    entries: List[Tuple[int, int, int, int, float]] = []
    for ln in lines[4:]:
        parts = ln.split()
        if len(parts) != 5:
            raise ValueError(f"malformed entry line: {ln!r}")
        entries.append((int(parts[0]), int(parts[1]), int(parts[2]),
                        int(parts[3]), float(parts[4])))
    return m, sizes, rhs, entries


def export_solution(problem: SdpProblem, Q: np.ndarray, eps: float,
                    fh: TextIO) -> None:
    """Write a primal solution in the documented 'b i j v' format."""
    n = problem.n
    fh.write('"kazhdan SDP solution: block 1 = Gram upper triangle, block 2 = eps\n')
    fh.write(f"2 1 1 {repr(float(eps))}\n")
    for i in range(n):
        for j in range(i, n):
            v = float(Q[i, j])
            if v != 0.0:
                fh.write(f"1 {i + 1} {j + 1} {repr(v)}\n")


def import_solution(problem: SdpProblem, fh: TextIO,
                    tolerance: float = 1e-6) -> GramSolution:
    """Read a solution file, symmetrize, and validate against constraints."""
    n = problem.n
    Q = np.zeros((n, n))
    eps = None
    for lineno, raw in enumerate(fh, start=1):
        line = raw.strip()
        if not line or line.startswith('"') or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 'block i j value'")
        try:
            blk, i, j = int(parts[0]), int(parts[1]), int(parts[2])
            v = float(parts[3])
        except ValueError:
            raise ValueError(f"line {lineno}: malformed numbers") from None
        if blk == 2:
            if (i, j) != (1, 1):
                raise ValueError(f"line {lineno}: eps block is 1x1")
            eps = v
        elif blk == 1:
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"line {lineno}: index out of range for n={n}")
            Q[i - 1, j - 1] = v
            Q[j - 1, i - 1] = v
        else:
            raise ValueError(f"line {lineno}: unknown block {blk}")
    if eps is None:
        raise ValueError("solution file carries no eps entry (block 2)")
    return validate_solution(problem, Q, eps, tolerance=tolerance)
