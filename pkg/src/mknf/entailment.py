"""Objective knowledge OB(S) and exact propositional reasoning over it.

Two interchangeable backends decide consistency and entailment over a finite
signature:

* :class:`EnumerationEntailer` walks every assignment with
  :func:`itertools.product`. Slow, obviously correct; the reference.
* :class:`TruthTableEntailer` compiles each formula into one Python int whose
  bit ``k`` is the formula's value on row ``k`` of the truth table. Consistency
  and entailment become a handful of bitwise operations.

The module-level functions use whichever backend is installed with
:func:`use_entailer` (the truth-table one by default).
"""
from __future__ import annotations

import contextlib
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Protocol

from .syntax import (
    And, Atom, Const, Formula, Iff, Implies, KnowledgeBase, Neg, Or, Var, evaluate,
)

SIGNATURE_CAP = 16

Assignment = dict  # Atom -> bool, total over a theory's signature


class SignatureCapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Theory:
    formulas: tuple[Formula, ...]
    signature: tuple[Atom, ...]

    def __post_init__(self):
        object.__setattr__(self, "formulas", tuple(self.formulas))
        object.__setattr__(self, "signature", tuple(self.signature))

    def extend(self, *formulas: Formula) -> "Theory":
        return Theory(self.formulas + formulas, self.signature)


def ob(kb: KnowledgeBase, s: Iterable[Atom]) -> Theory:
    """The ontology plus every atom of ``s`` as a unit fact."""
    s = list(dict.fromkeys(s))
    ka = set(kb.ka)
    bad = [a for a in s if a not in ka]
    if bad:
        raise ValueError(f"atoms outside KA: {bad}")
    return Theory(kb.ontology + tuple(Var(a) for a in s), kb.signature)


class Entailer(Protocol):
    def is_consistent(self, t: Theory) -> bool: ...
    def entails(self, t: Theory, a: Atom) -> bool: ...
    def all_models(self, t: Theory, cap: int = SIGNATURE_CAP) -> list[Assignment]: ...


def _check_atom(t: Theory, a: Atom):
    if a not in t.signature:
        raise ValueError(f"atom {a!r} not in signature")


def _check_cap(t: Theory, cap: int):
    if len(t.signature) > cap:
        raise SignatureCapExceeded(f"signature has {len(t.signature)} atoms, cap is {cap}")


class EnumerationEntailer:
    """Reference backend: try every assignment."""

    def _rows(self, t: Theory):
        for bits in itertools.product((False, True), repeat=len(t.signature)):
            yield dict(zip(t.signature, bits))

    def _sat(self, t: Theory, row: Assignment) -> bool:
        true = {a for a, v in row.items() if v}
        return all(evaluate(f, true) for f in t.formulas)

    def all_models(self, t, cap=SIGNATURE_CAP):
        _check_cap(t, cap)
        return [row for row in self._rows(t) if self._sat(t, row)]

    def is_consistent(self, t):
        return any(self._sat(t, row) for row in self._rows(t))

    def entails(self, t, a):
        _check_atom(t, a)
        return all(row[a] for row in self._rows(t) if self._sat(t, row))


# --- truth-table bitsets ----------------------------------------------------
# Row k of the table assigns signature[i] the value of bit (n - 1 - i) of k, so
# increasing k is lexicographic order with the first atom most significant.

@lru_cache(maxsize=None)
def _columns(n: int) -> tuple[int, ...]:
    rows = 1 << n
    cols = []
    for i in range(n):
        half = 1 << (n - 1 - i)  # run length of equal values in this column
        block = ((1 << half) - 1) << half  # half zeros then half ones
        period = 2 * half
        reps = rows // period
        cols.append(block * (((1 << (period * reps)) - 1) // ((1 << period) - 1)))
    return tuple(cols)


def compile_formula(f: Formula, index: dict[Atom, int], n: int) -> int:
    full = (1 << (1 << n)) - 1
    cols = _columns(n)

    def go(g):
        if isinstance(g, Var):
            return cols[index[g.name]]
        if isinstance(g, Const):
            return full if g.value else 0
        if isinstance(g, Neg):
            return full & ~go(g.arg)
        l, r = go(g.left), go(g.right)
        if isinstance(g, And):
            return l & r
        if isinstance(g, Or):
            return l | r
        if isinstance(g, Implies):
            return (full & ~l) | r
        if isinstance(g, Iff):
            return full & ~(l ^ r)
        raise TypeError(f"not a formula: {g!r}")

    return go(f)


class TruthTableEntailer:
    """Bitset backend; one int per formula, one bit per assignment."""

    @staticmethod
    @lru_cache(maxsize=1 << 14)
    def _mask(t: Theory) -> int:
        n = len(t.signature)
        index = {a: i for i, a in enumerate(t.signature)}
        m = (1 << (1 << n)) - 1
        for f in t.formulas:
            m &= compile_formula(f, index, n)
            if not m:
                break
        return m

    def is_consistent(self, t):
        return self._mask(t) != 0

    def entails(self, t, a):
        _check_atom(t, a)
        col = _columns(len(t.signature))[t.signature.index(a)]
        return self._mask(t) & ~col == 0

    def all_models(self, t, cap=SIGNATURE_CAP):
        _check_cap(t, cap)
        n, m = len(t.signature), self._mask(t)
        out = []
        for k in range(1 << n):
            if m >> k & 1:
                out.append({a: bool(k >> (n - 1 - i) & 1) for i, a in enumerate(t.signature)})
        return out


_backend: Entailer = TruthTableEntailer()


def get_entailer() -> Entailer:
    return _backend


@contextlib.contextmanager
def use_entailer(e: Entailer):
    global _backend
    old, _backend = _backend, e
    try:
        yield e
    finally:
        _backend = old


def is_consistent(t: Theory) -> bool:
    return _backend.is_consistent(t)


def entails(t: Theory, a: Atom) -> bool:
    return _backend.entails(t, a)


def all_models(t: Theory, cap: int = SIGNATURE_CAP) -> list[Assignment]:
    return _backend.all_models(t, cap)


# --- per-KB memoised view ---------------------------------------------------

class ObjectiveKnowledge:
    """Memoised ``OB(S)`` queries for one knowledge base.

    ``consequences(s)`` is the set of KA atoms entailed by ``OB(s)`` (all of KA
    when ``OB(s)`` is inconsistent). With an empty ontology this is just ``s``.
    """

    def __init__(self, kb: KnowledgeBase, entailer: Entailer | None = None):
        self.kb = kb
        self.entailer = entailer
        self._cons: dict[frozenset, frozenset] = {}
        self._ok: dict[frozenset, bool] = {}

    @property
    def _e(self) -> Entailer:
        return self.entailer or _backend

    def consistent(self, s: frozenset) -> bool:
        if not self.kb.ontology:
            return True
        s = frozenset(s)
        if s not in self._ok:
            self._ok[s] = self._e.is_consistent(ob(self.kb, s))
        return self._ok[s]

    def consequences(self, s: frozenset) -> frozenset:
        s = frozenset(s)
        if not self.kb.ontology:
            return s
        out = self._cons.get(s)
        if out is None:
            t = ob(self.kb, s)
            out = frozenset(a for a in self.kb.ka if a in s or self._e.entails(t, a))
            self._cons[s] = out
        return out

    def entails(self, s: frozenset, a: Atom) -> bool:
        return a in self.consequences(s)

    def consistent_with(self, s: frozenset, a: Atom) -> bool:
        """True iff OB(s) does not entail ~a, i.e. OB(s) + {a} is satisfiable."""
        if not self.kb.ontology:
            return True
        return self._e.is_consistent(ob(self.kb, s).extend(Var(a)))


@lru_cache(maxsize=256)
def knowledge(kb: KnowledgeBase) -> ObjectiveKnowledge:
    return ObjectiveKnowledge(kb)
