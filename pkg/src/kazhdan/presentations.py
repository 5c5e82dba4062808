"""Finite presentations and the presentation file format.

File syntax (UTF-8 text, one directive per line, ``#`` comments)::

    name: ronan G1           # optional
    gens: a b c
    involutions: s t         # optional; marks self-inverse generators
    rel: a^3
    rel: (a*b)^2 = b*a

Words use ``*`` for concatenation, ``^`` for (possibly negative) integer
powers, parentheses for grouping, and either an uppercase single letter
or a trailing ``'`` for a generator's inverse.  A relation ``u = v`` is
stored as the relator ``u v^-1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence, Tuple

from .words import Alphabet, Word, inverse_name, make_alphabet


@dataclass(frozen=True)
class PresentationSpec:
    """A finite presentation over a symmetric alphabet.

    The alphabet already contains formal inverses; the symmetric
    generating set S is the full symbol set.  Relators are cyclically
    reduced words equal to the identity.
    """

    alphabet: Alphabet
    relators: Tuple[Word, ...]
    name: str = ""

    def __post_init__(self):
        for r in self.relators:
            for s in r:
                if not 0 <= s < self.alphabet.size:
                    raise ValueError(f"relator symbol {s} out of range")

    @property
    def symmetric_size(self) -> int:
        return self.alphabet.size

    def relator_strings(self) -> list[str]:
        return [self.alphabet.word_str(r) for r in self.relators]

    def max_relator_length(self) -> int:
        return max((len(r) for r in self.relators), default=0)

    def suggested_radius(self) -> int:
        """Smallest len such that the longest relator is shorter than 4*len."""
        return self.max_relator_length() // 4 + 1

    def to_text(self) -> str:
        """Re-serialize in the presentation file format."""
        base, invol = [], []
        seen = set()
        for i, nm in enumerate(self.alphabet.names):
            if i in seen:
                continue
            j = self.alphabet.inv[i]
            seen.update((i, j))
            base.append(nm)
            if j == i:
                invol.append(nm)
        lines = []
        if self.name:
            lines.append(f"name: {self.name}")
        lines.append("gens: " + " ".join(base))
        if invol:
            lines.append("involutions: " + " ".join(invol))
        for r in self.relators:
            lines.append("rel: " + self.alphabet.word_str(r))
        return "\n".join(lines) + "\n"


class PresentationError(ValueError):
    pass


def presentation(generators: Sequence[str], relators: Sequence[str],
                 involutions: Sequence[str] = (), name: str = "") -> PresentationSpec:
    """Programmatic constructor; relator strings use the file word syntax."""
    alphabet = make_alphabet(generators, involutions)
    rels = tuple(_parse_word_expr(r, alphabet) for r in relators)
    return PresentationSpec(alphabet, rels, name=name)


def parse_presentation(text: str, name: str = "") -> PresentationSpec:
    """Parse the documented presentation file format."""
    gens: list[str] = []
    invol: list[str] = []
    rel_srcs: list[tuple[int, str]] = []
    pname = name
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise PresentationError(f"line {lineno}: expected 'key: value'")
        key, _, val = line.partition(":")
        key = key.strip().lower()
        val = val.strip()
        if key == "name":
            pname = val
        elif key == "gens":
            gens.extend(val.split())
        elif key == "involutions":
            invol.extend(val.split())
        elif key == "rel":
            rel_srcs.append((lineno, val))
        else:
            raise PresentationError(f"line {lineno}: unknown directive {key!r}")
    if not gens:
        raise PresentationError("empty generator list")
    try:
        alphabet = make_alphabet(gens, invol)
    except ValueError as exc:
        raise PresentationError(str(exc)) from None
    relators = []
    for lineno, src in rel_srcs:
        try:
            relators.append(_parse_word_expr(src, alphabet))
        except PresentationError as exc:
            raise PresentationError(f"line {lineno}: {exc}") from None
    return PresentationSpec(alphabet, tuple(relators), name=pname)


def _parse_word_expr(src: str, alphabet: Alphabet) -> Word:
    """Parse ``u`` or ``u = v`` into the relator word u*v^-1, freely reduced."""
    if "=" in src:
        left, _, right = src.partition("=")
        lw = _parse_word(left.strip(), alphabet)
        rw = _parse_word(right.strip(), alphabet)
        return alphabet.free_reduce(lw + alphabet.inverse_word(rw))
    return alphabet.free_reduce(_parse_word(src.strip(), alphabet))


def _tokenize(src: str) -> list[str]:
    toks: list[str] = []
    i = 0
    while i < len(src):
        ch = src[i]
        if ch.isspace() or ch == "*":
            i += 1
        elif ch in "()^":
            toks.append(ch)
            i += 1
        elif ch == "-" or ch.isdigit():
            j = i + 1
            while j < len(src) and src[j].isdigit():
                j += 1
            toks.append(src[i:j])
            i = j
        elif ch.isalnum() or ch == "_":
            j = i + 1
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            if j < len(src) and src[j] == "'":
                j += 1
            toks.append(src[i:j])
            i = j
        else:
            raise PresentationError(f"bad character {ch!r} in word {src!r}")
    return toks


def _parse_word(src: str, alphabet: Alphabet) -> Word:
    """Recursive-descent parser for the word grammar."""
    toks = _tokenize(src)
    pos = 0

    def parse_seq(stop_at_close: bool) -> Word:
        nonlocal pos
        out: list[int] = []
        while pos < len(toks):
            t = toks[pos]
            if t == ")":
                if not stop_at_close:
                    raise PresentationError("unbalanced ')'")
                return tuple(out)
            out.extend(parse_factor())
        if stop_at_close:
            raise PresentationError("missing ')'")
        return tuple(out)

    def parse_factor() -> Word:
        nonlocal pos
        t = toks[pos]
        if t == "(":
            pos += 1
            base = parse_seq(stop_at_close=True)
            pos += 1  # consume ')'
        elif t == "^":
            raise PresentationError("'^' without base")
        else:
            base = (_symbol(t),)
            pos += 1
        if pos < len(toks) and toks[pos] == "^":
            pos += 1
            if pos >= len(toks):
                raise PresentationError("'^' without exponent")
            try:
                n = int(toks[pos])
            except ValueError:
                raise PresentationError(f"bad exponent {toks[pos]!r}") from None
            pos += 1
            if n < 0:
                base = alphabet.inverse_word(base)
                n = -n
            base = base * n
        return base

    def _symbol(tok: str) -> int:
        names = alphabet.names
        if tok in names:
            return names.index(tok)
        # uppercase single letter denotes the inverse of its lowercase
        if len(tok) == 1 and tok.isupper() and tok.lower() in names:
            return alphabet.inv[names.index(tok.lower())]
        if tok.endswith("'") and tok[:-1] in names:
            return alphabet.inv[names.index(tok[:-1])]
        raise PresentationError(f"unknown symbol {tok!r}")

    word = parse_seq(stop_at_close=False)
    if not word and not toks:
        raise PresentationError("empty word")
    return word


def free_group_spec(rank: int, name: str = "") -> PresentationSpec:
    gens = [chr(ord("a") + i) for i in range(rank)]
    return presentation(gens, [], name=name or f"free:{rank}")
