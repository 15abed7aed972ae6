"""Head-cuts and the admissible set H^(T,P) of a saturated partition."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .partition import Partition
from .syntax import Atom, KnowledgeBase, Rule


@dataclass(frozen=True)
class HeadCut:
    """A choice of at most one head atom per rule, as ``(rule_id, atom)`` pairs sorted by rule id."""
    pairs: tuple[tuple[int, Atom], ...] = ()

    def __post_init__(self):
        pairs = tuple(sorted(self.pairs, key=lambda p: p[0]))
        ids = [r for r, _ in pairs]
        if len(set(ids)) != len(ids):
            raise ValueError("a head-cut picks at most one head per rule")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, Atom]] | dict) -> "HeadCut":
        if isinstance(pairs, dict):
            pairs = pairs.items()
        return cls(tuple(pairs))

    @property
    def rules(self) -> frozenset[int]:
        return frozenset(r for r, _ in self.pairs)

    @property
    def heads(self) -> frozenset[Atom]:
        return frozenset(h for _, h in self.pairs)

    def as_dict(self) -> dict[int, Atom]:
        return dict(self.pairs)

    def within(self, other: "HeadCut") -> bool:
        return set(self.pairs) <= set(other.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __str__(self):
        return "{" + ", ".join(f"({r}, {h})" for r, h in self.pairs) + "}"

    def validate(self, kb: KnowledgeBase):
        for r, h in self.pairs:
            if not 1 <= r <= len(kb.program) or h not in kb.rule(r).head:
                raise ValueError(f"({r}, {h}) is not a head of rule {r}")


def _body_true(part: Partition, r: Rule) -> bool:
    return set(r.body_pos) <= part.true and part.possible.isdisjoint(r.body_neg)


def rule_required(kb: KnowledgeBase, part: Partition, r: Rule) -> bool:
    """Whether every cut in H^(T,P) must pick a head for ``r``.

    True when the body is not false and, if it is only undefined, no head atom
    is already true.
    """
    not_false = set(r.body_pos) <= part.possible and part.true.isdisjoint(r.body_neg)
    return not_false and (part.true.isdisjoint(r.head) or _body_true(part, r))


def admissible_heads(kb: KnowledgeBase, part: Partition, r: Rule) -> tuple[Atom, ...]:
    """Head atoms a cut may pick for ``r``: true ones if the body is true, undefined ones otherwise."""
    bt = _body_true(part, r)
    return tuple(h for h in r.head if h in part.possible and (h in part.true) == bt)


def required_rules(kb: KnowledgeBase, part: Partition) -> list[Rule]:
    return [r for r in kb.program if rule_required(kb, part, r)]


def enumerate_headcuts(kb: KnowledgeBase, part: Partition) -> Iterator[HeadCut]:
    """Lazily yield H^(T,P) in lexicographic order (rule id, then head order)."""
    req = required_rules(kb, part)
    choices = [admissible_heads(kb, part, r) for r in req]
    if any(not c for c in choices):
        return
    ids = [r.id for r in req]
    for pick in itertools.product(*choices):
        yield HeadCut(tuple(zip(ids, pick)))


def count_headcuts(kb: KnowledgeBase, part: Partition) -> int:
    n = 1
    for r in required_rules(kb, part):
        n *= len(admissible_heads(kb, part, r))
    return n


def is_empty(kb: KnowledgeBase, part: Partition) -> bool:
    return next(enumerate_headcuts(kb, part), None) is None


def total_headcuts(kb: KnowledgeBase) -> Iterator[HeadCut]:
    ids = [r.id for r in kb.program]
    for pick in itertools.product(*(r.head for r in kb.program)):
        yield HeadCut(tuple(zip(ids, pick)))


def format_headcuts(cuts: Iterable[HeadCut]) -> str:
    lines = [str(c) for c in cuts]
    return "\n".join(lines) if lines else "EMPTY"
