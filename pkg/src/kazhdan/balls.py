"""Word-metric balls and the pairing table u^-1 v.

The element order is fixed globally (identity first, then by discovery
depth, then by the backend sort key) so that SDP assembly and the
resulting certificates are reproducible bit for bit.  Each element keeps
the generator word that discovered it: its length is the recorded word
length (an upper bound on the true length, exact when identification is
complete).
"""
from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

from .backends import Backend, ElementId


class Ball:
    """All elements of word length <= radius, indexed, plus pairing fibers."""

    def __init__(self, backend: Backend, radius: int,
                 elements: Sequence[ElementId],
                 lengths: Dict[ElementId, int],
                 words: Dict[ElementId, Tuple[str, ...]]):
        self.backend = backend
        self.radius = radius
        self.elements: Tuple[ElementId, ...] = tuple(elements)
        self.lengths = lengths
        self.words = words
        self.index: Dict[ElementId, int] = {g: i for i, g in enumerate(self.elements)}
        self._pairing: Dict[ElementId, List[Tuple[int, int]]] = {}

    def __len__(self) -> int:
        return len(self.elements)

    def length_of(self, g: ElementId) -> int:
        return self.lengths[g]

    def word_of(self, g: ElementId) -> Tuple[str, ...]:
        return self.words[g]

    def pairing(self) -> Dict[ElementId, List[Tuple[int, int]]]:
        """Fibers of (u, v) -> u^-1 v, grouped by the product id.

        The SDP constraint for g needs exactly the fiber over g; every
        product lies in Ball(2*radius) when identification is complete.
        """
        if not self._pairing:
            backend = self.backend
            inverses = [backend.invert(u) for u in self.elements]
            fibers: Dict[ElementId, List[Tuple[int, int]]] = {}
            for i, ui in enumerate(inverses):
                for j, v in enumerate(self.elements):
                    g = backend.multiply(ui, v)
                    fibers.setdefault(g, []).append((i, j))
            self._pairing = fibers
        return self._pairing


def enumerate_ball(backend: Backend, radius: int) -> Ball:
    """Breadth-first enumeration over S with canonical deduplication.

    BFS only multiplies inside the radius, so ``prepare(radius)`` suffices
    here; callers that will use the pairing table must have prepared the
    backend to twice the radius beforehand (the pipeline does), since
    growing an incomplete system's closure after enumeration would
    re-canonicalize ids out from under the ball.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    backend.prepare(radius)
    gen_names = backend.generator_names()
    gens = [(nm, backend.generator_id(nm)) for nm in gen_names]
    ident = backend.identity()
    lengths: Dict[ElementId, int] = {ident: 0}
    words: Dict[ElementId, Tuple[str, ...]] = {ident: ()}
    ordered: List[ElementId] = [ident]
    frontier: List[ElementId] = [ident]
    for depth in range(1, radius + 1):
        found = []
        for g in frontier:
            for nm, s in gens:
                h = backend.multiply(g, s)
                if h not in lengths:
                    lengths[h] = depth
                    words[h] = words[g] + (nm,)
                    found.append(h)
        found.sort(key=backend.sort_key)
        ordered.extend(found)
        frontier = found
    return Ball(backend, radius, ordered, lengths, words)
