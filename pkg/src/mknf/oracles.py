"""Brute-force semantic oracles.

Nothing here uses the partition, head-cut or fixpoint machinery; the point is
to have an independent route to the same answers.

* :func:`eval_mknf` evaluates MKNF formulas in a three-valued structure
  ``(I, <M, M1>, <N, N1>)`` over explicit sets of interpretations.
* :func:`satisfies_program` builds the canonical interpretation pair of a
  partition and checks the KB formula with it.
* :func:`partial_stable_bruteforce` and :func:`two_valued_stable_bruteforce`
  enumerate partial stable and stable models of ontology-free programs.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .entailment import EnumerationEntailer, SIGNATURE_CAP, Theory
from .syntax import (
    And, Atom, Const, Formula, Iff, Implies, KnowledgeBase, Neg, Or, Var, conj,
)

TRUE, UNDEF, FALSE = 2, 1, 0

Interp = frozenset  # the atoms true in a two-valued interpretation


@dataclass(frozen=True)
class Know:
    arg: Formula


@dataclass(frozen=True)
class Naf:
    arg: Formula


def _modal_free(f) -> bool:
    if isinstance(f, (Know, Naf)):
        return False
    if isinstance(f, (Var, Const)):
        return True
    if isinstance(f, Neg):
        return _modal_free(f.arg)
    return _modal_free(f.left) and _modal_free(f.right)


@lru_cache(maxsize=None)
def _objective_free(f) -> bool:
    """No atom of ``f`` sits outside a modal operator, so its value ignores I."""
    if isinstance(f, (Know, Naf, Const)):
        return True
    if isinstance(f, Var):
        return False
    if isinstance(f, Neg):
        return _objective_free(f.arg)
    return _objective_free(f.left) and _objective_free(f.right)


class Structure:
    """The pair components of an MKNF structure; the interpretation I is passed per call."""

    def __init__(self, m: Iterable[Interp], m1: Iterable[Interp], n: Iterable[Interp], n1: Iterable[Interp]):
        self.m, self.m1 = [frozenset(x) for x in m], [frozenset(x) for x in m1]
        self.n, self.n1 = [frozenset(x) for x in n], [frozenset(x) for x in n1]
        self._memo: dict = {}

    def value(self, f, i: Interp) -> int:
        if _objective_free(f):
            out = self._memo.get(f)
            if out is None:
                out = self._memo[f] = self._value(f, i)
            return out
        return self._value(f, i)

    def _value(self, f, i: Interp) -> int:
        if isinstance(f, Var):
            return TRUE if f.name in i else FALSE
        if isinstance(f, Const):
            return TRUE if f.value else FALSE
        if isinstance(f, Neg):
            return 2 - self.value(f.arg, i)
        if isinstance(f, And):
            return min(self.value(f.left, i), self.value(f.right, i))
        if isinstance(f, Or):
            return max(self.value(f.left, i), self.value(f.right, i))
        if isinstance(f, Implies):
            # f.left -> f.right, i.e. right "subset" left: t iff right >= left
            return TRUE if self.value(f.right, i) >= self.value(f.left, i) else FALSE
        if isinstance(f, Iff):
            return self.value(And(Implies(f.left, f.right), Implies(f.right, f.left)), i)
        if isinstance(f, (Know, Naf)):
            if not _modal_free(f.arg):
                raise NotImplementedError("nested modal operators are outside the KB fragment")
            if isinstance(f, Know):
                if all(self._value(f.arg, j) == TRUE for j in self.m):
                    return TRUE
                if any(self._value(f.arg, j) == FALSE for j in self.m1):
                    return FALSE
                return UNDEF
            if any(self._value(f.arg, j) == FALSE for j in self.n1):
                return TRUE
            if all(self._value(f.arg, j) == TRUE for j in self.n):
                return FALSE
            return UNDEF
        raise TypeError(f"not an MKNF formula: {f!r}")


def eval_mknf(kb: KnowledgeBase | None, m: Iterable[Interp], n: Iterable[Interp], i: Interp, formula) -> int:
    """Value of ``formula`` in ``(I, <M, N>, <M, N>)`` (0 false, 1 undefined, 2 true).

    When ``kb`` is given, every interpretation must stay inside its signature.
    """
    m = [frozenset(x) for x in m]
    n = [frozenset(x) for x in n]
    i = frozenset(i)
    if kb is not None:
        sig = set(kb.signature)
        for x in (*m, *n, i):
            if not x <= sig:
                raise ValueError(f"interpretation mentions atoms outside the signature: {sorted(x - sig)}")
    return Structure(m, n, m, n).value(formula, i)


def pi_rule(head: Sequence[Atom], pos: Sequence[Atom], neg: Sequence[Atom]) -> Formula:
    h = None
    for a in head:
        h = Know(Var(a)) if h is None else Or(h, Know(Var(a)))
    body = conj([Know(Var(a)) for a in pos] + [Naf(Var(a)) for a in neg])
    return Implies(body, h)


def pi_kb(kb: KnowledgeBase) -> Formula:
    rules = [pi_rule(r.head, r.body_pos, r.body_neg) for r in kb.program]
    return And(conj(rules), Know(conj(kb.ontology)))


def models_of(kb: KnowledgeBase, atoms: Iterable[Atom], cap: int = SIGNATURE_CAP) -> list[Interp]:
    """Interpretations over kb.signature satisfying the ontology and every atom in ``atoms``."""
    t = Theory(kb.ontology + tuple(Var(a) for a in atoms), kb.signature)
    rows = EnumerationEntailer().all_models(t, cap)
    return [frozenset(a for a, v in row.items() if v) for row in rows]


def satisfies_program(kb: KnowledgeBase, part, cap: int = SIGNATURE_CAP) -> bool:
    """Does the canonical pair of ``part`` satisfy pi(P) and K pi(O) at every I in M?

    ``part`` is anything with ``true`` and ``possible`` atom sets.
    """
    m = models_of(kb, part.true, cap)
    n = models_of(kb, part.possible, cap)
    if not n:
        raise ValueError("OB_P is inconsistent; no interpretation pair induces this partition")
    s = Structure(m, n, m, n)
    f = pi_kb(kb)
    return all(s.value(f, i) == TRUE for i in m)


def induced_partition(kb: KnowledgeBase, m: Iterable[Interp], n: Iterable[Interp]) -> tuple[frozenset, frozenset]:
    """The (T, P) that the pair (M, N) induces on KA."""
    m, n = list(m), list(n)
    s = Structure(m, n, m, n)
    t = frozenset(a for a in kb.ka if s.value(Know(Var(a)), frozenset()) == TRUE)
    p = frozenset(a for a in kb.ka if s.value(Know(Var(a)), frozenset()) != FALSE)
    return t, p


# ---------------------------------------------------------------------------
# partial stable models of ontology-free programs

class OracleError(ValueError):
    pass


def _program(kb: KnowledgeBase, cap: int):
    if kb.ontology:
        raise OracleError("oracle needs an empty ontology")
    if len(kb.ka) > cap:
        raise OracleError(f"|KA| = {len(kb.ka)} exceeds cap {cap}")
    idx = {a: i for i, a in enumerate(kb.ka)}
    return [
        (tuple(idx[a] for a in r.head), tuple(idx[a] for a in r.body_pos), tuple(idx[a] for a in r.body_neg))
        for r in kb.program
    ]


def _reduct_model(rules, interp: tuple, consts: tuple) -> bool:
    """Every rule of the reduct holds in ``interp``: head value >= body value."""
    for (head, pos, _), neg_consts in zip(rules, consts):
        body = min([interp[b] for b in pos] + list(neg_consts), default=TRUE)
        if max(interp[h] for h in head) < body:
            return False
    return True


def partial_stable_bruteforce(kb: KnowledgeBase, cap: int = 12) -> list[tuple[frozenset, frozenset]]:
    """Partial stable models as ``(T, P)`` pairs, in base-3 order over KA.

    An interpretation I qualifies when it is a minimal three-valued model of
    the reduct that replaces each ``not c`` by the constant ``~I(c)``;
    minimality is pointwise in the order f < u < t.
    """
    rules = _program(kb, cap)
    ka = kb.ka
    out = []
    for interp in itertools.product((FALSE, UNDEF, TRUE), repeat=len(ka)):
        consts = [tuple(2 - interp[c] for c in neg) for _, _, neg in rules]
        if not _reduct_model(rules, interp, consts):
            continue
        smaller = itertools.product(*(range(v + 1) for v in interp))
        if any(j != interp and _reduct_model(rules, j, consts) for j in smaller):
            continue
        out.append((
            frozenset(a for a, v in zip(ka, interp) if v == TRUE),
            frozenset(a for a, v in zip(ka, interp) if v != FALSE),
        ))
    return out


def two_valued_stable_bruteforce(kb: KnowledgeBase, cap: int = 12) -> list[frozenset]:
    """Stable models via the Gelfond-Lifschitz reduct, smallest-first by subset size."""
    rules = _program(kb, cap)
    ka = kb.ka
    n = len(ka)

    def model(s: frozenset, reduct) -> bool:
        return all(not set(pos) <= s or any(h in s for h in head) for head, pos in reduct)

    out = []
    for k in range(n + 1):
        for combo in itertools.combinations(range(n), k):
            s = frozenset(combo)
            reduct = [(head, pos) for head, pos, neg in rules if s.isdisjoint(neg)]
            if not model(s, reduct):
                continue
            proper = (frozenset(c) for j in range(k) for c in itertools.combinations(combo, j))
            if any(model(x, reduct) for x in proper):
                continue
            out.append(frozenset(ka[i] for i in combo))
    return out
