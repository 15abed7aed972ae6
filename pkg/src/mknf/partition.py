"""Partial partitions (T, P) of KA, their three-valued reading, and saturation."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Iterable, Optional

from .entailment import ObjectiveKnowledge, knowledge
from .syntax import Atom, ATOM_RE, KnowledgeBase, ParseError, Rule


class TruthValue(IntEnum):
    FALSE = 0
    UNDEFINED = 1
    TRUE = 2

    def __invert__(self) -> "TruthValue":
        return TruthValue(2 - self)

    @property
    def symbol(self) -> str:
        return "fut"[self]


F, U, T = TruthValue.FALSE, TruthValue.UNDEFINED, TruthValue.TRUE


@dataclass(frozen=True)
class Partition:
    """``true`` holds the true atoms, ``possible`` the true-or-undefined ones.

    ``ka``, when given, is the universe the partition lives in; it is only used
    for validation and does not take part in equality.
    """
    true: frozenset
    possible: frozenset
    ka: Optional[tuple] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "true", frozenset(self.true))
        object.__setattr__(self, "possible", frozenset(self.possible))
        if not self.true <= self.possible:
            raise ValueError(f"T must be a subset of P: {sorted(self.true - self.possible)} not in P")
        if self.ka is not None:
            object.__setattr__(self, "ka", tuple(self.ka))
            extra = self.possible - set(self.ka)
            if extra:
                raise ValueError(f"atoms outside KA: {sorted(extra)}")

    @classmethod
    def of(cls, kb: KnowledgeBase, true: Iterable[Atom], possible: Iterable[Atom]) -> "Partition":
        return cls(frozenset(true), frozenset(possible), kb.ka)

    @classmethod
    def from_values(cls, values: dict) -> "Partition":
        return cls(
            frozenset(a for a, v in values.items() if v == T),
            frozenset(a for a, v in values.items() if v != F),
            tuple(values),
        )

    @property
    def undefined(self) -> frozenset:
        return self.possible - self.true

    def values(self, ka: Iterable[Atom]) -> dict:
        return {a: atom_value(self, a) for a in ka}

    def format(self, ka: Iterable[Atom] | None = None) -> str:
        order = list(ka or self.ka or sorted(self.possible))
        t = [a for a in order if a in self.true]
        p = [a for a in order if a in self.possible]
        return f"T: {', '.join(t)}.\nP: {', '.join(p)}."

    def __str__(self):
        return self.format().replace("\n", " ")


def atom_value(part: Partition, a: Atom) -> TruthValue:
    if part.ka is not None and a not in part.ka:
        raise ValueError(f"atom {a!r} not in KA")
    if a in part.true:
        return T
    if a not in part.possible:
        return F
    return U


def body_value(part: Partition, r: Rule) -> TruthValue:
    v = T
    for b in r.body_pos:
        v = min(v, atom_value(part, b))
    for c in r.body_neg:
        v = min(v, ~atom_value(part, c))
    return v


def head_value(part: Partition, r: Rule) -> TruthValue:
    return max(atom_value(part, h) for h in r.head)


_PART_RE = re.compile(r"^\s*T\s*:(?P<t>[^.]*)\.\s*P\s*:(?P<p>[^.]*)\.\s*$", re.S)


def _strip_comments(text: str) -> str:
    return "\n".join(line.split("%", 1)[0] for line in text.splitlines())


def _atom_list(s: str) -> list[Atom]:
    out = [x.strip() for x in s.split(",") if x.strip()]
    for a in out:
        if not ATOM_RE.fullmatch(a):
            raise ParseError(f"invalid atom {a!r} in partition")
    return out


def parse_pair(text: str) -> tuple[frozenset, frozenset]:
    """Parse ``T: a, b. P: a, b, c.`` without requiring T to be a subset of P."""
    m = _PART_RE.match(_strip_comments(text))
    if m is None:
        raise ParseError("expected 'T: <atoms>. P: <atoms>.'")
    return frozenset(_atom_list(m["t"])), frozenset(_atom_list(m["p"]))


def parse_partition(text: str, kb: KnowledgeBase | None = None) -> Partition:
    t, p = parse_pair(text)
    return Partition(t, p, kb.ka if kb is not None else None)


# ---------------------------------------------------------------------------
# saturation

@dataclass(frozen=True)
class SaturationReport:
    saturated: bool
    clause: Optional[int] = None  # 1: OB_P inconsistent, 2: OB_T |= a, a not in T, 3: OB_P |= a, a not in P
    witness: Optional[Atom] = None

    def __bool__(self):
        return self.saturated

    def describe(self) -> str:
        if self.saturated:
            return "saturated"
        if self.clause == 1:
            return "not saturated: OB_P is inconsistent"
        which = "T" if self.clause == 2 else "P"
        return f"not saturated: OB_{which} entails {self.witness}, which is outside {which}"


def is_saturated(kb: KnowledgeBase, part: Partition, ok: ObjectiveKnowledge | None = None) -> SaturationReport:
    ok = ok or knowledge(kb)
    if not ok.consistent(part.possible):
        return SaturationReport(False, 1)
    for clause, s in ((2, part.true), (3, part.possible)):
        derived = ok.consequences(s)
        for a in kb.ka:
            if a in derived and a not in s:
                return SaturationReport(False, clause, a)
    return SaturationReport(True)


class SaturationFailure(Exception):
    pass


def saturate(kb: KnowledgeBase, part: Partition, ok: ObjectiveKnowledge | None = None) -> Partition:
    """Close T and P under ontology consequences.

    Raises :class:`SaturationFailure` if OB_P becomes inconsistent.
    """
    ok = ok or knowledge(kb)
    t, p = part.true, part.possible
    while True:
        if not ok.consistent(p):
            raise SaturationFailure(f"OB_P is inconsistent for P = {sorted(p)}")
        t2 = ok.consequences(t)
        p2 = ok.consequences(p) | t2
        if (t2, p2) == (t, p):
            return Partition(t, p, kb.ka)
        t, p = t2, p2
