"""Independent oracles used by the test suite.

Everything here deliberately avoids the library's SDP/certification path:
spectral gaps come from brute-force regular representations, group
elements from explicit permutation/matrix models.  Oracle values are
computed fresh so the tests never assert an uncomputed number.
"""
from __future__ import annotations

import numpy as np

from kazhdan.backends import Backend


def enumerate_group(backend: Backend, limit: int = 5000):
    """Full element list by BFS; raises if the group exceeds the limit."""
    gens = backend.generator_ids()
    seen = {backend.identity()}
    frontier = [backend.identity()]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = backend.multiply(g, s)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        if len(seen) > limit:
            raise RuntimeError(f"group larger than {limit}")
        frontier = nxt
    return sorted(seen, key=backend.sort_key)


def regular_rep_gap(backend: Backend, limit: int = 5000) -> float:
    """Smallest nonzero eigenvalue of |S| - sum_s lambda(s) on l^2(G).

    For a finite group this equals the optimal eps in the sum-of-squares
    sense, giving an exact independent check of the SDP pipeline.
    """
    elements = enumerate_group(backend, limit)
    index = {g: i for i, g in enumerate(elements)}
    n = len(elements)
    op = np.zeros((n, n))
    np.fill_diagonal(op, len(backend.generator_ids()))
    for s in backend.generator_ids():
        for g in elements:
            op[index[backend.multiply(s, g)], index[g]] -= 1.0
    eigs = np.linalg.eigvalsh(op)
    nonzero = [e for e in eigs if e > 1e-9]
    if len(nonzero) == n:
        raise AssertionError("missing trivial eigenvalue")
    return float(min(nonzero))


def cyclic_gap(k: int, exponents) -> float:
    """Gap of |S| - sum a^e on Z/k via circulant eigenvalues."""
    vals = []
    for j in range(k):
        lam = len(exponents) - sum(np.cos(2 * np.pi * e * j / k) for e in exponents)
        vals.append(lam)
    nonzero = [v for v in vals if v > 1e-12]
    return float(min(nonzero))


# explicit permutation model of the symmetric group, for ground-truth
# equality checks against finitely presented backends

def perm_mul(p, q):
    """Apply p first, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def perm_eval(word, images):
    """Evaluate a word (generator indices) in explicit permutations."""
    deg = len(next(iter(images.values())))
    acc = tuple(range(deg))
    for s in word:
        acc = perm_mul(acc, images[s])
    return acc
