"""Shortlex Knuth-Bendix completion with hard budgets.

Completion over the symmetric alphabet always includes the free-reduction
rules x*inv(x) -> e.  If completion finishes inside the budget the system
is confluent and normal forms are canonical (the word problem is solved
on the nose); otherwise the partial system is still sound: every rule is
a consequence of the relators, so equal normal forms imply equal group
elements, never the other way around.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from .presentations import PresentationSpec
from .words import Alphabet, Word, shortlex_less


@dataclass(frozen=True)
class RewriteBudget:
    max_rules: int = 20_000
    max_rule_len: int = 40
    # pair-processing cap keeps pathological completions from spinning; it
    # scales with the rule cap so a custom --rewrite-budget moves both.
    max_pairs: Optional[int] = None

    def pair_cap(self) -> int:
        return self.max_pairs if self.max_pairs is not None else 60 * self.max_rules

    def __post_init__(self):
        if self.max_rules <= 0 or self.max_rule_len <= 0:
            raise ValueError("budget caps must be positive")


@dataclass
class RewriteSystem:
    """A shortlex-decreasing rewrite system, possibly incomplete."""

    alphabet: Alphabet
    rules: Dict[Word, Word]
    complete: bool
    stats: Dict[str, int] = field(default_factory=dict)
    _max_lhs: int = 0

    def __post_init__(self):
        self._max_lhs = max((len(l) for l in self.rules), default=1)

    def normal_form(self, w: Iterable[int]) -> Word:
        """Leftmost rewriting to an irreducible word (stack algorithm)."""
        rules = self.rules
        maxl = self._max_lhs
        buf = list(w)
        out: list[int] = []
        i = 0
        while i < len(buf):
            out.append(buf[i])
            i += 1
            while out:
                top = min(maxl, len(out))
                for ll in range(top, 0, -1):
                    rhs = rules.get(tuple(out[-ll:]))
                    if rhs is not None:
                        del out[len(out) - ll:]
                        buf[i:i] = rhs
                        break
                else:
                    break
        return tuple(out)


def bounded_completion(spec: PresentationSpec,
                       budget: RewriteBudget = RewriteBudget()) -> RewriteSystem:
    """Run Knuth-Bendix on the presentation until confluent or out of budget."""
    alphabet = spec.alphabet
    rules: Dict[Word, Word] = {}
    for x in range(alphabet.size):
        rules[(x, alphabet.inv[x])] = ()
    system = RewriteSystem(alphabet, rules, complete=False)
    pending: deque[Tuple[Word, Word]] = deque()
    for rel in spec.relators:
        pending.append((rel, ()))
    dropped = False
    pairs_done = 0
    pair_cap = budget.pair_cap()

    def add_equation(a: Word, b: Word) -> None:
        nonlocal dropped
        a = system.normal_form(a)
        b = system.normal_form(b)
        if a == b:
            return
        lhs, rhs = (a, b) if shortlex_less(b, a) else (b, a)
        if len(lhs) > budget.max_rule_len:
            dropped = True
            return
        if len(rules) >= budget.max_rules:
            dropped = True
            return
        # interreduce: pull out rules whose lhs is reducible by the new rule
        redo: List[Tuple[Word, Word]] = []
        for l2 in list(rules):
            if l2 != lhs and _contains(l2, lhs):
                redo.append((l2, rules.pop(l2)))
        rules[lhs] = rhs
        if len(lhs) > system._max_lhs:
            system._max_lhs = len(lhs)
        for eq in redo:
            pending.append(eq)
        # critical pairs from overlaps with every current rule (both orders)
        for l2, r2 in list(rules.items()):
            _overlap_pairs(lhs, rhs, l2, r2, pending)
            if l2 != lhs:
                _overlap_pairs(l2, r2, lhs, rhs, pending)

    while pending:
        pairs_done += 1
        if pairs_done > pair_cap:
            dropped = True
            break
        a, b = pending.popleft()
        add_equation(a, b)

    system.complete = not dropped and not pending
    system.stats = {"rules": len(rules), "pairs": pairs_done}
    return system


def _overlap_pairs(l1: Word, r1: Word, l2: Word, r2: Word,
                   pending: deque) -> None:
    """Critical pairs from proper overlaps: a suffix of l1 equals a prefix of l2."""
    top = min(len(l1), len(l2))
    for k in range(1, top):
        if l1[-k:] == l2[:k]:
            pending.append((r1 + l2[k:], l1[:-k] + r2))


def _contains(big: Word, small: Word) -> bool:
    n, m = len(big), len(small)
    if m > n:
        return False
    first = small[0]
    return any(big[i] == first and big[i:i + m] == small
               for i in range(n - m + 1))
