import random

import pytest
from hypothesis import given, settings, strategies as st

from mknf.generate import ProgramShape, random_kb
from mknf.syntax import (
    HEADER, And, Implies, KnowledgeBase, Or, ParseError, Var, compute_ka, make_kb,
    parse_formula, parse_kb, render_kb,
)


def test_disjunctive_rule():
    kb = parse_kb("a ; b :- c.")
    [r] = kb.program
    assert (r.id, r.head, r.body_pos, r.body_neg) == (1, ("a", "b"), ("c",), ())


def test_negative_body_and_ka():
    kb = parse_kb("x ; y :- p, not q.")
    [r] = kb.program
    assert r.head == ("x", "y") and r.body_pos == ("p",) and r.body_neg == ("q",)
    assert set(kb.ka) == {"x", "y", "p", "q"}


@pytest.mark.parametrize("text, line, col", [
    (":- a.", 1, 1),
    ("a.\n  :- b.", 2, 3),
])
def test_empty_head_rejected(text, line, col):
    with pytest.raises(ParseError, match="empty rule head") as e:
        parse_kb(text)
    assert (e.value.line, e.value.col) == (line, col)


@pytest.mark.parametrize("text", [
    "a ; a.",
    "a :- b, b.",
    "a :- not b, not b.",
])
def test_duplicate_atom_rejected(text):
    with pytest.raises(ParseError, match="duplicate"):
        parse_kb(text)


@pytest.mark.parametrize("text, where", [
    ("a :- b", (1, 7)),
    ("a :- B.", (1, 6)),
    ("#ont a -> .", (1, 11)),
    ("a ; not.", (1, 5)),
    ("a $ b.", (1, 3)),
])
def test_syntax_errors_carry_location(text, where):
    with pytest.raises(ParseError) as e:
        parse_kb(text)
    assert (e.value.line, e.value.col) == where


def test_formula_precedence():
    assert parse_formula("a | b & c") == Or(Var("a"), And(Var("b"), Var("c")))
    assert parse_formula("a -> b -> c") == Implies(Var("a"), Implies(Var("b"), Var("c")))
    assert parse_formula("c -> (b & d)") == parse_formula("c -> b & d")


def test_render_empty():
    assert render_kb(KnowledgeBase()) == HEADER + "\n"


def test_render_example1():
    kb = parse_kb("a;b:-c.\nx;y :- p,not q.")
    assert render_kb(kb).splitlines()[1:] == ["a ; b :- c.", "x ; y :- p, not q."]


def test_render_ontology_first():
    kb = parse_kb("a ; b.\n#ont c -> (b & d).")
    lines = render_kb(kb).splitlines()
    assert lines[1] == "#ont c -> b & d."
    assert lines[2] == "a ; b."


def test_compute_ka():
    kb = parse_kb("a ; b :- c.\nx ; y :- p, not q.")
    assert compute_ka(kb) == {"a", "b", "c", "x", "y", "p", "q"}
    assert compute_ka(KnowledgeBase()) == frozenset()


def test_ontology_only_atom_not_in_ka():
    kb = parse_kb("#ont z -> z.\na :- b.")
    assert "z" not in kb.ka and "z" in kb.signature
    assert set(kb.signature) - set(kb.ka) == {"z"}


def test_rule_ids_must_be_contiguous():
    from mknf.syntax import Rule
    with pytest.raises(ValueError):
        KnowledgeBase((), (Rule(2, ("a",)),))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9))
def test_round_trip(seed):
    kb = random_kb(random.Random(seed), ProgramShape(5, 5, 3, 3), max_axioms=3)
    text = render_kb(kb)
    again = parse_kb(text)
    assert again == kb
    assert render_kb(again) == text


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9), st.randoms(use_true_random=False))
def test_ka_ignores_rule_order(seed, rnd):
    kb = random_kb(random.Random(seed))
    rules = [(r.head, r.body_pos, r.body_neg) for r in kb.program]
    rnd.shuffle(rules)
    shuffled = make_kb(rules, kb.ontology)
    assert compute_ka(shuffled) == compute_ka(kb)
    assert set(kb.ka) <= set(kb.signature)
