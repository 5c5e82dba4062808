"""Symbols and words over a symmetric generating alphabet.

Words are tuples of symbol indices. The alphabet fixes a global order
(declaration order, each generator immediately followed by its formal
inverse) which induces the shortlex order used everywhere downstream:
rewrite orientation, normal forms, ball ordering.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Tuple

Word = Tuple[int, ...]

EMPTY: Word = ()


@dataclass(frozen=True)
class Alphabet:
    """Symbol table closed under formal inversion.

    ``names[i]`` is the printable name of symbol ``i`` and ``inv[i]`` the
    index of its formal inverse; involutions satisfy ``inv[i] == i``.
    """

    names: Tuple[str, ...]
    inv: Tuple[int, ...]

    def __post_init__(self):
        if len(self.names) != len(self.inv):
            raise ValueError("names and inv length mismatch")
        for i, j in enumerate(self.inv):
            if not 0 <= j < len(self.inv) or self.inv[j] != i:
                raise ValueError("inv is not an involution")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate symbol names")

    @property
    def size(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown symbol {name!r}") from None

    def inverse_word(self, w: Word) -> Word:
        return tuple(self.inv[s] for s in reversed(w))

    def free_reduce(self, w: Iterable[int]) -> Word:
        """Cancel adjacent formal-inverse pairs (x followed by inv(x))."""
        out: list[int] = []
        inv = self.inv
        for s in w:
            if out and out[-1] == inv[s]:
                out.pop()
            else:
                out.append(s)
        return tuple(out)

    def word_str(self, w: Word) -> str:
        return "*".join(self.names[s] for s in w) if w else "e"


def shortlex_less(a: Word, b: Word) -> bool:
    return (len(a), a) < (len(b), b)


def shortlex_key(w: Word):
    return (len(w), w)


def make_alphabet(generators: Iterable[str], involutions: Iterable[str] = ()) -> Alphabet:
    """Build the symmetric alphabet from base generator names.

    Non-involutive generators get a companion inverse symbol: the
    uppercased name when the base is a single lowercase letter, else
    ``name + "'"``.
    """
    invol = set(involutions)
    gens = list(generators)
    for g in invol:
        if g not in gens:
            raise ValueError(f"involution {g!r} not among generators")
    names: list[str] = []
    inv: list[int] = []
    for g in gens:
        if g in names:
            raise ValueError(f"duplicate generator {g!r}")
        if g in invol:
            names.append(g)
            inv.append(len(names) - 1)
        else:
            i = len(names)
            names.append(g)
            names.append(inverse_name(g))
            inv.extend([i + 1, i])
    return Alphabet(tuple(names), tuple(inv))


def inverse_name(name: str) -> str:
    if len(name) == 1 and name.islower():
        return name.upper()
    return name + "'"
