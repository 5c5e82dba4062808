"""Sparse group-ring arithmetic over float64 or exact rationals.

Elements are finite coefficient maps keyed by canonical element ids from
one backend.  Products canonicalize every resulting id immediately, so
supports stay minimal under the backend's identification.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple, Union

from .backends import Backend, ElementId

Scalar = Union[int, float, Fraction]


class RingElem:
    """Immutable sparse element of R[G] (or Q[G]); no zero coefficients."""

    __slots__ = ("backend", "coeffs")

    def __init__(self, backend: Backend, coeffs: Mapping[ElementId, Scalar]):
        self.backend = backend
        self.coeffs: Dict[ElementId, Scalar] = {g: c for g, c in coeffs.items() if c != 0}

    @classmethod
    def zero(cls, backend: Backend) -> "RingElem":
        return cls(backend, {})

    @classmethod
    def unit(cls, backend: Backend, scale: Scalar = 1) -> "RingElem":
        return cls(backend, {backend.identity(): scale})

    @classmethod
    def from_generator(cls, backend: Backend, name: str, scale: Scalar = 1) -> "RingElem":
        return cls(backend, {backend.generator_id(name): scale})

    # ring operations -------------------------------------------------------

    def __add__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) + c
        return RingElem(self.backend, out)

    def __sub__(self, other: "RingElem") -> "RingElem":
        self._check(other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0) - c
        return RingElem(self.backend, out)

    def scale(self, k: Scalar) -> "RingElem":
        return RingElem(self.backend, {g: k * c for g, c in self.coeffs.items()})

    def __neg__(self) -> "RingElem":
        return self.scale(-1)

    def __mul__(self, other: "RingElem") -> "RingElem":
        """Convolution product; every product id is canonicalized."""
        self._check(other)
        mult = self.backend.multiply
        out: Dict[ElementId, Scalar] = {}
        for g1, c1 in self.coeffs.items():
            for g2, c2 in other.coeffs.items():
                g = mult(g1, g2)
                out[g] = out.get(g, 0) + c1 * c2
        return RingElem(self.backend, out)

    def star(self) -> "RingElem":
        """The involution g -> g^-1 extended linearly."""
        inv = self.backend.invert
        out: Dict[ElementId, Scalar] = {}
        for g, c in self.coeffs.items():
            gi = inv(g)
            out[gi] = out.get(gi, 0) + c
        return RingElem(self.backend, out)

    # functionals ------------------------------------------------------------

    def augmentation(self) -> Scalar:
        return sum(self.coeffs.values())

    def l1_norm(self) -> Scalar:
        return sum(abs(c) for c in self.coeffs.values())

    def coeff(self, g: ElementId) -> Scalar:
        return self.coeffs.get(g, 0)

    def support(self) -> Iterable[ElementId]:
        return self.coeffs.keys()

    def is_self_adjoint(self) -> bool:
        return self.star().coeffs == self.coeffs

    def to_float(self) -> "RingElem":
        return RingElem(self.backend, {g: float(c) for g, c in self.coeffs.items()})

    def to_fraction(self) -> "RingElem":
        return RingElem(self.backend, {g: Fraction(c) for g, c in self.coeffs.items()})

    # misc --------------------------------------------------------------------

    def _check(self, other: "RingElem") -> None:
        if other.backend is not self.backend:
            raise ValueError("operands from different backends")

    def __eq__(self, other) -> bool:
        return (isinstance(other, RingElem) and other.backend is self.backend
                and other.coeffs == self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __repr__(self) -> str:
        terms = sorted(self.coeffs.items(), key=lambda kv: self.backend.sort_key(kv[0]))
        inner = " + ".join(f"{c}*[{self.backend.describe(g)}]" for g, c in terms[:8])
        if len(terms) > 8:
            inner += f" + ... ({len(terms)} terms)"
        return f"RingElem({inner or '0'})"

    def dump(self) -> str:
        """Debug format: one 'coefficient<TAB>word' line, shortlex order."""
        terms = sorted(self.coeffs.items(), key=lambda kv: self.backend.sort_key(kv[0]))
        return "\n".join(f"{c}\t{self.backend.describe(g)}" for g, c in terms)


class LaplacianBundle:
    """The unnormalized Laplacian |S| - sum(S) with its generating set."""

    def __init__(self, backend: Backend):
        self.backend = backend
        gens = backend.generator_ids()
        if not gens:
            raise ValueError("empty generating set")
        if {backend.invert(g) for g in gens} != set(gens):
            raise ValueError("generating set not closed under inverse")
        self.generators: Tuple[ElementId, ...] = tuple(gens)
        self.size = len(gens)
        coeffs: Dict[ElementId, Scalar] = {backend.identity(): self.size}
        for s in gens:
            coeffs[s] = coeffs.get(s, 0) - 1
        self.delta = RingElem(backend, coeffs)
        if self.delta.augmentation() != 0:
            raise AssertionError("Laplacian not in augmentation ideal")

    def delta_squared(self) -> RingElem:
        return self.delta * self.delta


def laplacian(backend: Backend) -> LaplacianBundle:
    return LaplacianBundle(backend)
