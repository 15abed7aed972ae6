"""The Q operator over head-cuts, its least fixpoint, and model checking/enumeration.

A saturated partition (T, P) is induced by a three-valued MKNF model iff
H^(T,P) is nonempty and the least fixpoint of Q over every cut in it is P.
"""
from __future__ import annotations

import enum
import itertools
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .entailment import ObjectiveKnowledge, knowledge
from .headcut import HeadCut, enumerate_headcuts, total_headcuts
from .partition import Partition, SaturationReport, is_saturated
from .syntax import Atom, KnowledgeBase, Rule

log = logging.getLogger(__name__)

KA_CAP = 12


class Status(enum.Enum):
    MODEL = "Model"
    NOT_SATURATED = "NotSaturated"
    EMPTY_H = "EmptyH"
    FIXPOINT_MISMATCH = "FixpointMismatch"


@dataclass
class CheckVerdict:
    status: Status
    saturation: Optional[SaturationReport] = None
    cut: Optional[HeadCut] = None  # failing cut for FixpointMismatch
    lfp: Optional[frozenset] = None  # its least fixpoint
    cuts_checked: int = 0
    fixpoints: list = field(default_factory=list)  # (cut, lfp) for every cut examined

    @property
    def is_model(self) -> bool:
        return self.status is Status.MODEL

    def __bool__(self):
        return self.is_model


def q_step(kb: KnowledgeBase, part: Partition, cut: HeadCut, s, ok: ObjectiveKnowledge | None = None) -> frozenset:
    """One application of Q^cut_(T,P) to ``s``.

    True atoms may only be justified by true premises: the ontology sees
    ``s & T`` when deriving members of T, and all of ``s`` for undefined ones.
    """
    ok = ok or knowledge(kb)
    s = frozenset(s)
    out = {h for r, h in cut if s.issuperset(kb.rule(r).body_pos)}
    out |= ok.consequences(s & part.true) & part.true
    out |= ok.consequences(s) & part.undefined
    return frozenset(out)


def lfp_trace(kb: KnowledgeBase, part: Partition, cut: HeadCut, ok: ObjectiveKnowledge | None = None) -> list[frozenset]:
    """Kleene iterates of Q from the empty set; the last entry is the least fixpoint."""
    ok = ok or knowledge(kb)
    seq = [frozenset()]
    while True:
        nxt = q_step(kb, part, cut, seq[-1], ok)
        if nxt == seq[-1]:
            return seq
        seq.append(nxt)


def lfp_q(kb: KnowledgeBase, part: Partition, cut: HeadCut, ok: ObjectiveKnowledge | None = None) -> frozenset:
    return lfp_trace(kb, part, cut, ok)[-1]


def _true_from_undefined(kb: KnowledgeBase, part: Partition, cut: HeadCut, trace: list[frozenset]) -> list[Atom]:
    """True atoms whose first derivation fired a rule with an undefined premise."""
    heads = cut.as_dict()
    flagged = []
    for prev, cur in zip(trace, trace[1:]):
        for h in (cur - prev) & part.true:
            rules = [r for r, x in heads.items() if x == h and prev.issuperset(kb.rule(r).body_pos)]
            if rules and all(not part.true.issuperset(kb.rule(r).body_pos) for r in rules):
                flagged.append(h)
    return flagged


def check_model(kb: KnowledgeBase, part: Partition, ok: ObjectiveKnowledge | None = None,
                exhaustive: bool = False) -> CheckVerdict:
    """Decide whether ``part`` is induced by a three-valued MKNF model of ``kb``.

    Checks saturation, then nonemptiness of H^(T,P), then each cut's least
    fixpoint, stopping at the first failure unless ``exhaustive`` is set (in
    which case every cut's fixpoint is recorded).
    """
    ok = ok or knowledge(kb)
    sat = is_saturated(kb, part, ok)
    if not sat:
        return CheckVerdict(Status.NOT_SATURATED, saturation=sat)
    verdict = CheckVerdict(Status.MODEL, saturation=sat)
    for cut in enumerate_headcuts(kb, part):
        trace = lfp_trace(kb, part, cut, ok)
        fix = trace[-1]
        verdict.cuts_checked += 1
        verdict.fixpoints.append((cut, fix))
        if fix != part.possible:
            if verdict.status is Status.MODEL:
                verdict.status, verdict.cut, verdict.lfp = Status.FIXPOINT_MISMATCH, cut, fix
            if not exhaustive:
                return verdict
        else:
            for h in _true_from_undefined(kb, part, cut, trace):
                log.warning("true atom %s first derived from undefined premises under cut %s", h, cut)
    if verdict.cuts_checked == 0:
        verdict.status = Status.EMPTY_H
    elif verdict.is_model:
        assert all(part.true <= fix for _, fix in verdict.fixpoints)
    return verdict


# ---------------------------------------------------------------------------
# enumeration

VALUES = (0, 1, 2)  # false, undefined, true


def candidate(ka: tuple, index: int) -> Partition:
    """The ``index``-th partition in base-3 order, first KA atom most significant."""
    digits = []
    for _ in ka:
        index, d = divmod(index, 3)
        digits.append(d)
    digits.reverse()
    return Partition(
        frozenset(a for a, d in zip(ka, digits) if d == 2),
        frozenset(a for a, d in zip(ka, digits) if d >= 1),
        ka,
    )


def candidates(kb: KnowledgeBase) -> Iterator[Partition]:
    ka = kb.ka
    for digits in itertools.product(VALUES, repeat=len(ka)):
        yield Partition(
            frozenset(a for a, d in zip(ka, digits) if d == 2),
            frozenset(a for a, d in zip(ka, digits) if d >= 1),
            ka,
        )


class CapExceeded(ValueError):
    pass


def _models_in_range(kb: KnowledgeBase, start: int, stop: int) -> list[int]:
    ok = knowledge(kb)
    return [i for i in range(start, stop) if check_model(kb, candidate(kb.ka, i), ok).is_model]


def resolve_jobs(jobs: int) -> int:
    return jobs if jobs > 0 else (os.cpu_count() or 1)


def enumerate_models(kb: KnowledgeBase, cap: int = KA_CAP, jobs: int = 1) -> list[Partition]:
    """All partitions of KA induced by an MKNF model, in base-3 candidate order."""
    n = len(kb.ka)
    if n > cap:
        raise CapExceeded(f"|KA| = {n} exceeds cap {cap}")
    total = 3 ** n
    jobs = resolve_jobs(jobs)
    if jobs == 1 or total < 256:
        hits = _models_in_range(kb, 0, total)
    else:
        step = -(-total // (jobs * 4))
        bounds = [(i, min(i + step, total)) for i in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_models_in_range, itertools.repeat(kb), *zip(*bounds))
            hits = [i for chunk in parts for i in chunk]
    return [candidate(kb.ka, i) for i in hits]


# ---------------------------------------------------------------------------
# induced normal knowledge bases

def induced_normal_kb(kb: KnowledgeBase, cut: HeadCut) -> KnowledgeBase:
    """The normal KB keeping every rule's body and only the head ``cut`` picks for it."""
    picks = cut.as_dict()
    if set(picks) != {r.id for r in kb.program}:
        raise ValueError("an induced normal KB needs a total head-cut")
    prog = tuple(Rule(r.id, (picks[r.id],), r.body_pos, r.body_neg) for r in kb.program)
    return KnowledgeBase(kb.ontology, prog)


def induced_normal_kbs(kb: KnowledgeBase) -> Iterator[KnowledgeBase]:
    for cut in total_headcuts(kb):
        yield induced_normal_kb(kb, cut)


def cut_of(normal_kb: KnowledgeBase) -> HeadCut:
    """The total head-cut a normal KB corresponds to."""
    if not normal_kb.is_normal:
        raise ValueError("knowledge base is not normal")
    return HeadCut(tuple((r.id, r.head[0]) for r in normal_kb.program))


def corollary1_check(kb: KnowledgeBase, part: Partition, normal_kb: KnowledgeBase) -> bool:
    """Whether some cut of H^(T,P) is contained in the program of ``normal_kb``."""
    total = cut_of(normal_kb)
    return any(cut.within(total) for cut in enumerate_headcuts(kb, part))
