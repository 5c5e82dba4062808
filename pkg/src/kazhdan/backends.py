"""Group backends: where elements live and products are decided.

Three interchangeable element models:

* ``FinitelyPresentedBackend`` -- elements are shortlex normal-form words.
  Identification is by Knuth-Bendix rewriting; when completion ran out of
  budget, a relator-closure pass over the enumerated ball merges what the
  partial system missed.  Identification is always sound (equal ids imply
  equal group elements), complete only when flagged.
* ``MatrixBackend`` -- exact integer or prime-field matrices; equality is
  literal, so identification is complete.  Integer entries are arbitrary
  precision by construction.
* ``MonomialBackend`` -- elements of G(m,p,n) as (permutation, exponent
  vector) pairs realizing complex monomial matrices; identification is
  complete.

Element ids are plain hashable values (word tuple / matrix tuple /
(sigma, k) pair); ``sort_key`` gives the deterministic order used for
ball enumeration and report reproducibility.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from .presentations import PresentationSpec
from .rewriting import RewriteBudget, RewriteSystem, bounded_completion
from .words import Word

ElementId = Hashable


class Backend:
    """Shared interface; concrete backends fill in the element model."""

    name: str = ""

    def identity(self) -> ElementId:
        raise NotImplementedError

    def generator_names(self) -> Tuple[str, ...]:
        """Names of the symmetric generating set S, in canonical order."""
        raise NotImplementedError

    def generator_id(self, name: str) -> ElementId:
        raise NotImplementedError

    def multiply(self, x: ElementId, y: ElementId) -> ElementId:
        raise NotImplementedError

    def invert(self, x: ElementId) -> ElementId:
        raise NotImplementedError

    def sort_key(self, x: ElementId):
        raise NotImplementedError

    def describe(self, x: ElementId) -> str:
        raise NotImplementedError

    def prepare(self, radius: int) -> None:
        """Hook for backends that precompute identification up to a radius."""

    @property
    def complete_identification(self) -> bool:
        return True

    # shared conveniences -------------------------------------------------

    def generator_ids(self) -> List[ElementId]:
        return [self.generator_id(n) for n in self.generator_names()]

    def id_from_word(self, names: Sequence[str]) -> ElementId:
        g = self.identity()
        for n in names:
            g = self.multiply(g, self.generator_id(n))
        return g

    def symmetric_set_has_involution(self) -> bool:
        return any(self.invert(g) == g for g in self.generator_ids())

    def group_block(self) -> str:
        """Self-contained textual description, embedded in certificates."""
        raise NotImplementedError


# ---------------------------------------------------------------------------
# finitely presented groups


class FinitelyPresentedBackend(Backend):
    """Words modulo a bounded rewriting system, with closure fallback.

    ``prepare(r)`` must be called (with the largest radius the caller will
    ever multiply inside) before products are taken whenever the rewrite
    system is incomplete; the closure table is frozen per prepared radius,
    which keeps canonicalization a pure function between preparations.
    """

    def __init__(self, spec: PresentationSpec,
                 budget: RewriteBudget = RewriteBudget(),
                 closure_slack: int = 2,
                 max_closure_states: int = 500_000):
        self.spec = spec
        self.alphabet = spec.alphabet
        self.rws: RewriteSystem = bounded_completion(spec, budget)
        self.closure_slack = closure_slack
        self.max_closure_states = max_closure_states
        self.name = spec.name or "fp"
        self._canon: Dict[Word, Word] = {}
        self._prepared_radius = -1
        self._rewrite_patterns: Optional[List[Tuple[Word, Word]]] = None

    # identification ------------------------------------------------------

    @property
    def complete_identification(self) -> bool:
        return self.rws.complete

    def prepare(self, radius: int) -> None:
        if self.rws.complete or radius <= self._prepared_radius:
            return
        self._build_closure(radius)
        self._prepared_radius = radius

    def canonicalize(self, word: Sequence[int]) -> Word:
        nf = self.rws.normal_form(word)
        if self.rws.complete:
            return nf
        return self._canon.get(nf, nf)

    # Backend interface ---------------------------------------------------

    def identity(self) -> Word:
        return ()

    def generator_names(self) -> Tuple[str, ...]:
        return self.alphabet.names

    def generator_id(self, name: str) -> Word:
        return self.canonicalize((self.alphabet.index(name),))

    def multiply(self, x: Word, y: Word) -> Word:
        return self.canonicalize(x + y)

    def invert(self, x: Word) -> Word:
        return self.canonicalize(self.alphabet.inverse_word(x))

    def sort_key(self, x: Word):
        return (len(x), x)

    def describe(self, x: Word) -> str:
        return self.alphabet.word_str(x)

    def group_block(self) -> str:
        return self.spec.to_text()

    # closure fallback ----------------------------------------------------

    def _patterns(self) -> List[Tuple[Word, Word]]:
        """All single-relator rewrites p -> q (r = p*q' cyclically)."""
        if self._rewrite_patterns is not None:
            return self._rewrite_patterns
        alphabet = self.alphabet
        pats = set()
        for rel in self.spec.relators:
            for base in (rel, alphabet.inverse_word(rel)):
                n = len(base)
                for k in range(n):
                    rot = base[k:] + base[:k]
                    for sp in range(1, n + 1):
                        p, q = rot[:sp], rot[sp:]
                        pats.add((p, alphabet.inverse_word(q)))
        self._rewrite_patterns = sorted(pats)
        return self._rewrite_patterns

    def _build_closure(self, radius: int) -> None:
        """BFS the normal-form states to radius+slack, then union-find
        every pair connected by one relator application; canonical id of a
        class is its shortlex-least member."""
        nf = self.rws.normal_form
        nsym = self.alphabet.size
        reach = radius + self.closure_slack
        depth: Dict[Word, int] = {(): 0}
        frontier: List[Word] = [()]
        truncated = False
        for level in range(1, reach + 1):
            nxt = []
            for w in frontier:
                for s in range(nsym):
                    v = nf(w + (s,))
                    if v not in depth:
                        depth[v] = level
                        nxt.append(v)
            frontier = nxt
            if len(depth) > self.max_closure_states:
                truncated = True
                break
        states = depth
        parent: Dict[Word, Word] = {w: w for w in states}

        def find(w: Word) -> Word:
            root = w
            while parent[root] != root:
                root = parent[root]
            while parent[w] != root:
                parent[w], w = root, parent[w]
            return root

        def union(a: Word, b: Word) -> None:
            ra, rb = find(a), find(b)
            if ra == rb:
                return
            if (len(ra), ra) > (len(rb), rb):
                ra, rb = rb, ra
            parent[rb] = ra

        pats = self._patterns()
        for w in list(states):
            lw = len(w)
            for p, q in pats:
                lp = len(p)
                if lp > lw:
                    continue
                first = p[0]
                for i in range(lw - lp + 1):
                    if w[i] == first and w[i:i + lp] == p:
                        w2 = nf(w[:i] + q + w[i + lp:])
                        if w2 in states:
                            union(w, w2)
        self._canon = {w: find(w) for w in states}
        self._closure_truncated = truncated


# ---------------------------------------------------------------------------
# matrix groups

Matrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class MatrixGroupSpec:
    """Generators of a subgroup of SL(n) over Z (modulus None) or F_p."""

    dimension: int
    modulus: Optional[int]
    generators: Tuple[Tuple[str, Matrix], ...]
    name: str = ""

    def __post_init__(self):
        for nm, m in self.generators:
            if len(m) != self.dimension or any(len(r) != self.dimension for r in m):
                raise ValueError(f"generator {nm} has wrong shape")


class MatrixBackend(Backend):
    def __init__(self, spec: MatrixGroupSpec):
        self.spec = spec
        self.n = spec.dimension
        self.p = spec.modulus
        self.name = spec.name or "matrix"
        self._gens: Dict[str, Matrix] = {}
        for nm, m in spec.generators:
            self._gens[nm] = self._reduce(m)
        # spec invariant: generator list closed under inverse
        inv_set = {self.invert(g) for g in self._gens.values()}
        if inv_set != set(self._gens.values()):
            raise ValueError("generator set not closed under inverse")

    def _reduce(self, m) -> Matrix:
        if self.p is None:
            return tuple(tuple(int(v) for v in row) for row in m)
        return tuple(tuple(int(v) % self.p for v in row) for row in m)

    def identity(self) -> Matrix:
        n = self.n
        return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))

    def generator_names(self) -> Tuple[str, ...]:
        return tuple(self._gens)

    def generator_id(self, name: str) -> Matrix:
        return self._gens[name]

    def multiply(self, x: Matrix, y: Matrix) -> Matrix:
        n = self.n
        p = self.p
        if p is None:
            return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(n))
                               for j in range(n)) for i in range(n))
        return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(n)) % p
                           for j in range(n)) for i in range(n))

    def invert(self, x: Matrix) -> Matrix:
        if self.p is None:
            return _int_matrix_inverse(x)
        return _mod_matrix_inverse(x, self.p)

    def sort_key(self, x: Matrix):
        return x

    def describe(self, x: Matrix) -> str:
        return ";".join(",".join(str(v) for v in row) for row in x)

    def group_block(self) -> str:
        lines = [f"matrix-group dimension: {self.n}",
                 f"modulus: {self.p if self.p is not None else 'Z'}"]
        for nm, m in self.spec.generators:
            lines.append(f"gen {nm}: " + self.describe(m))
        return "\n".join(lines) + "\n"


def _int_matrix_inverse(m: Matrix) -> Matrix:
    """Exact inverse of an integer matrix with unit determinant."""
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [v / pv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            v = a[i][n + j]
            if v.denominator != 1:
                raise ValueError("inverse is not integral")
            row.append(int(v))
        out.append(tuple(row))
    return tuple(out)


def _mod_matrix_inverse(m: Matrix, p: int) -> Matrix:
    n = len(m)
    a = [[m[i][j] % p for j in range(n)] + [int(i == j) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] % p != 0), None)
        if piv is None:
            raise ValueError("singular matrix mod p")
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [(v * inv) % p for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] % p != 0:
                f = a[r][col]
                a[r] = [(x - f * y) % p for x, y in zip(a[r], a[col])]
    return tuple(tuple(a[i][n + j] % p for j in range(n)) for i in range(n))


def elementary_matrix(n: int, i: int, j: int, v: int) -> Matrix:
    """E_ij(v): identity plus v in position (i, j), zero-based indices."""
    if i == j:
        raise ValueError("off-diagonal position required")
    return tuple(tuple(1 if a == b else (v if (a, b) == (i, j) else 0)
                       for b in range(n)) for a in range(n))


def special_linear_spec(n: int, modulus: Optional[int] = None) -> MatrixGroupSpec:
    """SL(n) with the symmetric set E_n of elementary matrices, +-1 off
    the diagonal."""
    gens: List[Tuple[str, Matrix]] = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for v in (1, -1):
                sign = "p" if v == 1 else "m"
                gens.append((f"e{i + 1}{j + 1}{sign}", elementary_matrix(n, i, j, v)))
    tag = "Z" if modulus is None else f"F{modulus}"
    return MatrixGroupSpec(n, modulus, tuple(gens), name=f"sl:{n}:{tag}")


# ---------------------------------------------------------------------------
# monomial groups G(m, p, n)

Monomial = Tuple[Tuple[int, ...], Tuple[int, ...]]  # (sigma, k): entries k_i of zeta_m


@dataclass(frozen=True)
class MonomialGroupSpec:
    """G(m,p,n): monomial matrices [(zeta_m^{k_1},...,zeta_m^{k_n}), sigma]
    with sum(k) = 0 mod p; requires p | m."""

    m: int
    p: int
    n: int
    name: str = ""

    def __post_init__(self):
        if self.m < 1 or self.p < 1 or self.n < 1 or self.m % self.p != 0:
            raise ValueError("need m, p, n >= 1 with p | m")


class MonomialBackend(Backend):
    """Product convention is fixed by the matrix realization
    diag(zeta^k) P_sigma: permutation part composes as i -> tau(sigma(i)),
    coefficient part as c_i = k_i + l_{sigma(i)} (exponents mod m)."""

    def __init__(self, spec: MonomialGroupSpec):
        self.spec = spec
        self.m, self.p, self.n = spec.m, spec.p, spec.n
        self.name = spec.name or f"g({self.m},{self.p},{self.n})"
        self._gens = self._build_generators()

    def _build_generators(self) -> Dict[str, Monomial]:
        m, p, n = self.m, self.p, self.n
        ident = tuple(range(n))
        gens: Dict[str, Monomial] = {}

        def transposition(i: int) -> Tuple[int, ...]:
            sig = list(range(n))
            sig[i], sig[i + 1] = sig[i + 1], sig[i]
            return tuple(sig)

        def add(name: str, g: Monomial) -> None:
            self._check(g)
            gens[name] = g
            gi = self.invert(g)
            if gi != g and gi not in gens.values():
                gens[name + "'"] = gi

        if p == 1:
            # scalar zeta_m in the first coordinate
            add("t", (ident, (1,) + (0,) * (n - 1)))
        elif p == m:
            if n < 2:
                raise ValueError("G(m,m,n) needs n >= 2")
            add("u", (transposition(0), (-1 % m, 1) + (0,) * (n - 2)))
        else:
            add("z", (ident, (p,) + (0,) * (n - 1)))
            if n < 2:
                raise ValueError("G(m,p,n) with 1<p<m needs n >= 2")
            add("u", (transposition(0), (-1 % m, 1) + (0,) * (n - 2)))
        for i in range(n - 1):
            add(f"s{i + 1}", (transposition(i), (0,) * n))
        return gens

    def _check(self, g: Monomial) -> None:
        sig, k = g
        if sorted(sig) != list(range(self.n)) or len(k) != self.n:
            raise ValueError("malformed monomial element")
        if sum(k) % self.p != 0:
            raise ValueError("exponent sum not 0 mod p")

    def identity(self) -> Monomial:
        return (tuple(range(self.n)), (0,) * self.n)

    def generator_names(self) -> Tuple[str, ...]:
        return tuple(self._gens)

    def generator_id(self, name: str) -> Monomial:
        return self._gens[name]

    def multiply(self, x: Monomial, y: Monomial) -> Monomial:
        sig, k = x
        tau, l = y
        m = self.m
        comp = tuple(tau[sig[i]] for i in range(self.n))
        coeff = tuple((k[i] + l[sig[i]]) % m for i in range(self.n))
        return (comp, coeff)

    def invert(self, x: Monomial) -> Monomial:
        sig, k = x
        m = self.m
        inv_sig = [0] * self.n
        for i, si in enumerate(sig):
            inv_sig[si] = i
        coeff = tuple((-k[inv_sig[i]]) % m for i in range(self.n))
        return (tuple(inv_sig), coeff)

    def sort_key(self, x: Monomial):
        return x

    def describe(self, x: Monomial) -> str:
        sig, k = x
        return f"perm={sig} k={k}"

    def realize(self, x: Monomial):
        """Complex monomial matrix: entry (i, sigma(i)) = zeta_m^{k_i}."""
        import numpy as np
        sig, k = x
        out = np.zeros((self.n, self.n), dtype=complex)
        for i in range(self.n):
            out[i, sig[i]] = np.exp(2j * np.pi * k[i] / self.m)
        return out

    def group_block(self) -> str:
        return f"monomial-group m: {self.m}\np: {self.p}\nn: {self.n}\n"
