"""Random and exhaustive knowledge-base generators for property sweeps."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .syntax import Formula, Implies, KnowledgeBase, Neg, Or, And, Var, make_kb

ATOMS = tuple("abcdefghij")


@dataclass(frozen=True)
class ProgramShape:
    max_atoms: int = 5
    max_rules: int = 5
    max_head: int = 3
    max_body: int = 2


def random_rule(rng: random.Random, atoms, shape: ProgramShape) -> tuple:
    head = rng.sample(atoms, rng.randint(1, min(shape.max_head, len(atoms))))
    pos = rng.sample(atoms, rng.randint(0, min(shape.max_body, len(atoms))))
    neg = rng.sample(atoms, rng.randint(0, min(shape.max_body, len(atoms))))
    return head, pos, neg


def random_program(rng: random.Random, shape: ProgramShape = ProgramShape(), ontology=()) -> KnowledgeBase:
    # skewed toward the caps so sweeps spend their time on nontrivial programs
    atoms = list(ATOMS[: rng.randint((shape.max_atoms + 1) // 2, shape.max_atoms)])
    rules = [random_rule(rng, atoms, shape) for _ in range(rng.randint(1, shape.max_rules))]
    return make_kb(rules, ontology)


def random_implication(rng: random.Random, atoms, max_atoms: int = 3) -> Formula:
    """An implication between small conjunctions/disjunctions of (possibly negated) atoms."""
    chosen = rng.sample(atoms, rng.randint(1, min(max_atoms, len(atoms))))
    lits = [Var(a) if rng.random() < 0.8 else Neg(Var(a)) for a in chosen]
    if len(lits) == 1:
        return Implies(lits[0], lits[0]) if rng.random() < 0.2 else lits[0]
    cut = rng.randint(1, len(lits) - 1)
    lhs, rhs = lits[:cut], lits[cut:]
    join = And if rng.random() < 0.5 else Or

    def fold(xs, op):
        out = xs[0]
        for x in xs[1:]:
            out = op(out, x)
        return out

    return Implies(fold(lhs, join), fold(rhs, And if rng.random() < 0.6 else Or))


def random_kb(rng: random.Random, shape: ProgramShape = ProgramShape(5, 4, 3, 2), max_axioms: int = 2) -> KnowledgeBase:
    kb = random_program(rng, shape)
    pool = list(ATOMS[: max(len(kb.ka), 1) + 1])  # occasionally an ontology-only atom
    onto = tuple(random_implication(rng, pool) for _ in range(rng.randint(0, max_axioms)))
    return KnowledgeBase(onto, kb.program)


def all_rules(atoms) -> list[tuple]:
    subsets = [tuple(c) for k in range(len(atoms) + 1) for c in itertools.combinations(atoms, k)]
    return [(h, p, n) for h in subsets if h for p in subsets for n in subsets]


def all_programs(atoms=("a", "b"), max_rules: int = 2) -> Iterator[KnowledgeBase]:
    """Every ordered program over ``atoms`` with at most ``max_rules`` rules."""
    rules = all_rules(atoms)
    for k in range(max_rules + 1):
        for combo in itertools.product(rules, repeat=k):
            yield make_kb(combo)
