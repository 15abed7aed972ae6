"""Liu-You approximator for normal hybrid MKNF KBs and its stable revision.

Pairs live in the bilattice of subsets of a universe of atoms (KA of the KB by
default), ordered by precision: ``(x, y) <=p (x', y')`` iff ``x <= x'`` and
``y' <= y``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

from .entailment import knowledge
from .headcut import HeadCut, enumerate_headcuts, total_headcuts
from .partition import Partition, TruthValue, body_value
from .qfix import check_model, induced_normal_kb
from .syntax import Atom, KnowledgeBase


@dataclass(frozen=True)
class LatticePair:
    lo: frozenset
    hi: frozenset

    def __post_init__(self):
        object.__setattr__(self, "lo", frozenset(self.lo))
        object.__setattr__(self, "hi", frozenset(self.hi))

    @property
    def consistent(self) -> bool:
        return self.lo <= self.hi

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def leq_p(self, other: "LatticePair") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def as_partition(self, ka=None) -> Partition:
        return Partition(self.lo, self.hi, ka)

    @classmethod
    def of(cls, part: Partition) -> "LatticePair":
        return cls(part.true, part.possible)


class NotNormal(ValueError):
    pass


def _require_normal(kb: KnowledgeBase):
    if not kb.is_normal:
        raise NotNormal("operator is only defined for normal knowledge bases")


class Approximator:
    """Phi_K for one normal KB.

    Pairs range over KA(K), or over KA of ``parent`` when the KB was induced
    from a disjunctive one (the parent must share the ontology).
    """

    def __init__(self, kb: KnowledgeBase, parent: KnowledgeBase | None = None):
        _require_normal(kb)
        ctx = parent if parent is not None else kb
        if ctx.ontology != kb.ontology:
            raise ValueError("parent KB must have the same ontology")
        missing = set(kb.ka) - set(ctx.ka)
        if missing:
            raise ValueError(f"parent KA misses atoms {sorted(missing)}")
        self.kb = kb
        self.universe = ctx.ka
        self.ok = knowledge(ctx)
        self._rules = [(r.head[0], frozenset(r.body_pos), frozenset(r.body_neg)) for r in kb.program]
        self._compatible: dict[tuple, bool] = {}

    def entailed(self, s: frozenset) -> frozenset:
        """Universe atoms entailed by OB(s)."""
        return self.ok.consequences(s)

    def compatible(self, s: frozenset, a: Atom) -> bool:
        """OB(s) does not entail ~a."""
        key = (s, a)
        out = self._compatible.get(key)
        if out is None:
            out = self._compatible[key] = self.ok.consistent_with(s, a)
        return out

    def lower(self, t: frozenset, p: frozenset) -> frozenset:
        out = set(self.entailed(t))
        for h, pos, neg in self._rules:
            if pos <= t and p.isdisjoint(neg):
                out.add(h)
        return frozenset(out)

    def upper(self, t: frozenset, p: frozenset) -> frozenset:
        out = set(self.entailed(p))
        for h, pos, neg in self._rules:
            if pos <= p and t.isdisjoint(neg) and self.compatible(t, h):
                out.add(h)
        return frozenset(out)

    def __call__(self, pair: LatticePair) -> LatticePair:
        return LatticePair(self.lower(pair.lo, pair.hi), self.upper(pair.lo, pair.hi))

    def lfp_lower(self, hi: frozenset) -> frozenset:
        z = frozenset()
        while True:
            nxt = self.lower(z, hi)
            if nxt == z:
                return z
            z = nxt

    def lfp_upper(self, lo: frozenset) -> frozenset:
        z = frozenset()
        while True:
            nxt = self.upper(lo, z)
            if nxt == z:
                return z
            z = nxt

    def stable_revision(self, pair: LatticePair) -> LatticePair:
        return LatticePair(self.lfp_lower(pair.hi), self.lfp_upper(pair.lo))

    def well_founded(self) -> LatticePair:
        pair = LatticePair(frozenset(), frozenset(self.universe))
        while True:
            nxt = self.stable_revision(pair)
            if nxt == pair:
                return pair
            pair = nxt

    def is_stable_fixpoint(self, pair: LatticePair) -> bool:
        return self.stable_revision(pair) == pair

    def side_condition(self, pair: LatticePair) -> bool:
        """OB of the least fixpoint of lower(., T) is satisfiable."""
        return self.ok.consistent(self.lfp_lower(pair.lo))

    def check_model(self, pair: LatticePair) -> bool:
        if not pair.consistent:
            raise ValueError("model checking needs a consistent pair")
        return self.is_stable_fixpoint(pair) and self.side_condition(pair)


# --- functional interface ---------------------------------------------------

def phi(kb_normal: KnowledgeBase, pair: LatticePair, parent=None) -> LatticePair:
    return Approximator(kb_normal, parent)(pair)


def stable_revision(kb_normal: KnowledgeBase, pair: LatticePair, parent=None) -> LatticePair:
    return Approximator(kb_normal, parent).stable_revision(pair)


def well_founded(kb_normal: KnowledgeBase, parent=None) -> LatticePair:
    return Approximator(kb_normal, parent).well_founded()


def check_model_normal(kb_normal: KnowledgeBase, pair: LatticePair, parent=None) -> bool:
    return Approximator(kb_normal, parent).check_model(pair)


def all_pairs(universe: tuple) -> Iterator[LatticePair]:
    """Every pair of subsets of ``universe`` (consistent or not)."""
    subsets = [frozenset(c) for k in range(len(universe) + 1) for c in itertools.combinations(universe, k)]
    for lo in subsets:
        for hi in subsets:
            yield LatticePair(lo, hi)


def normal_models(kb_normal: KnowledgeBase, parent=None) -> list[LatticePair]:
    """Consistent pairs passing :func:`check_model_normal`, by brute force over the universe."""
    app = Approximator(kb_normal, parent)
    return [p for p in all_pairs(app.universe) if p.consistent and app.check_model(p)]


# --- bridge to the head-cut characterisation --------------------------------

def faithful(kb: KnowledgeBase, part: Partition, total: HeadCut) -> bool:
    """The total cut never picks a false head for a rule whose body is not false.

    An induced normal KB that does is violated by (T, P) outright, even when it
    extends a cut of H^(T,P): such a rule is exempt from the cut only because
    some other head is already true.
    """
    picks = total.as_dict()
    return all(
        picks[r.id] in part.possible
        for r in kb.program
        if body_value(part, r) is not TruthValue.FALSE
    )


def cross_check(kb: KnowledgeBase, part: Partition) -> bool:
    """AFT side of the bridge between Phi over induced normal KBs and head-cuts.

    True iff H^(T,P) is nonempty and (T, P) is a consistent stable fixpoint,
    with satisfiable side condition, of Phi for every induced normal KB that
    extends some cut of H^(T,P) and is :func:`faithful` to (T, P). Each
    induced KB is read over the parent's KA.
    """
    if not part.true <= part.possible:
        raise ValueError("cross_check needs T to be a subset of P")
    cuts = list(enumerate_headcuts(kb, part))
    if not cuts:
        return False
    pair = LatticePair.of(part)
    for total in total_headcuts(kb):
        if faithful(kb, part, total) and any(c.within(total) for c in cuts):
            if not Approximator(induced_normal_kb(kb, total), kb).check_model(pair):
                return False
    return True


def extension_cross_check(kb: KnowledgeBase, part: Partition) -> bool:
    """Like :func:`cross_check` but without the faithfulness filter (kept for comparison)."""
    cuts = list(enumerate_headcuts(kb, part))
    pair = LatticePair.of(part)
    return bool(cuts) and all(
        Approximator(induced_normal_kb(kb, total), kb).check_model(pair)
        for total in total_headcuts(kb)
        if any(c.within(total) for c in cuts)
    )


def literal_cross_check(kb: KnowledgeBase, part: Partition) -> bool:
    """Phi-model condition demanded of *every* induced normal KB (kept for comparison)."""
    pair = LatticePair.of(part)
    return all(
        Approximator(induced_normal_kb(kb, total), kb).check_model(pair)
        for total in total_headcuts(kb)
    )


def bridge_sides(kb: KnowledgeBase, part: Partition) -> tuple[bool, bool]:
    """``(aft_side, headcut_side)``; the two should always agree."""
    return cross_check(kb, part), check_model(kb, part).is_model
