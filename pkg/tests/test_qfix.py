import random

import pytest
from hypothesis import given, settings, strategies as st

from mknf import aft
from mknf.generate import ProgramShape, random_kb, random_program
from mknf.headcut import HeadCut, enumerate_headcuts, total_headcuts
from mknf.partition import Partition, is_saturated
from mknf.qfix import (
    CapExceeded, Status, candidate, candidates, check_model, corollary1_check, cut_of,
    _true_from_undefined, enumerate_models, induced_normal_kb, induced_normal_kbs, lfp_q, lfp_trace, q_step,
)
from mknf.syntax import parse_kb

from conftest import load, load_part, part

R_EX2 = HeadCut.of({1: "a", 2: "c", 3: "z"})


def test_example2_o1(ex2_o1):
    p = load_part("example2.part", ex2_o1)
    assert lfp_q(ex2_o1, p, R_EX2) == {"z", "a", "c", "d"}
    assert "b" not in lfp_q(ex2_o1, p, R_EX2)


def test_example2_o2(ex2_o2):
    p = load_part("example2.part", ex2_o2)
    trace = lfp_trace(ex2_o2, p, R_EX2)
    assert trace[0] == frozenset()
    assert trace[1] == {"a", "c", "z"}
    assert trace[-1] == {"z", "a", "c", "b", "d"}


def test_q_step_true_atoms_need_true_premises(ex2_o1):
    # c is undefined, so c -> b cannot make the true atom b hold
    p = load_part("example2.part", ex2_o1)
    assert "b" not in q_step(ex2_o1, p, R_EX2, {"a", "c", "z"})
    assert "d" in q_step(ex2_o1, p, R_EX2, {"a", "c", "z"})


def test_example3(ex3):
    v = check_model(ex3, load_part("example3_model.part", ex3))
    assert v.status is Status.MODEL and v.is_model and bool(v)
    v = check_model(ex3, load_part("example3_mismatch.part", ex3))
    assert v.status is Status.FIXPOINT_MISMATCH
    assert v.lfp == {"a", "b"}
    assert not v


def test_example4(ex4):
    p = load_part("example4.part", ex4)
    v = check_model(ex4, p, exhaustive=True)
    assert v.status is Status.MODEL
    assert {c.pairs for c, _ in v.fixpoints} == {
        ((1, "a"), (2, "a"), (3, "b"), (4, "c"), (5, "d")),
        ((1, "b"), (2, "a"), (3, "b"), (4, "c"), (5, "d")),
    }
    assert all(fix == p.possible for _, fix in v.fixpoints)
    assert len(list(induced_normal_kbs(ex4))) == 4


def test_example5(ex5, ex5_parts):
    v = check_model(ex5, ex5_parts[1], exhaustive=True)
    assert v.status is Status.FIXPOINT_MISMATCH and v.cuts_checked == 4
    got = {c.pairs: fix for c, fix in v.fixpoints}
    assert got == {
        ((1, "a"), (2, "x")): {"a", "x", "y"},
        ((1, "a"), (2, "y")): {"a", "x", "y"},
        ((1, "b"), (2, "x")): {"b", "x", "y"},
        ((1, "b"), (2, "y")): {"b", "x", "y"},
    }
    v = check_model(ex5, ex5_parts[2])
    assert v.status is Status.NOT_SATURATED and v.saturation.witness == "b"
    v = check_model(ex5, ex5_parts[3], exhaustive=True)
    assert v.status is Status.MODEL and v.cuts_checked == 2
    assert all(fix == ex5_parts[3].possible for _, fix in v.fixpoints)


def test_empty_h(ex1, ex1_parts):
    v = check_model(ex1, ex1_parts[4])
    assert v.status is Status.EMPTY_H and v.cuts_checked == 0


def test_first_failure_stops(ex5, ex5_parts):
    v = check_model(ex5, ex5_parts[1])
    assert v.cuts_checked == 1 and v.cut.pairs == ((1, "a"), (2, "x"))


def test_candidate_order():
    ka = ("a", "b")
    got = [candidate(ka, i) for i in range(9)]
    assert got[0] == Partition(set(), set())
    assert got[1] == Partition(set(), {"b"})
    assert got[2] == Partition({"b"}, {"b"})
    assert got[3] == Partition(set(), {"a"})
    assert got[8] == Partition({"a", "b"}, {"a", "b"})
    kb = parse_kb("a :- b.")
    assert list(candidates(kb)) == got


def test_enumerate_simple():
    assert enumerate_models(load("fact.mknf")) == [Partition({"a"}, {"a"})]
    assert enumerate_models(load("odd_loop.mknf")) == [Partition(set(), {"a"})]
    assert enumerate_models(load("even_loop.mknf")) == [
        Partition({"b"}, {"b"}), Partition(set(), {"a", "b"}), Partition({"a"}, {"a"}),
    ]
    assert set(enumerate_models(load("choice.mknf"))) == {Partition({"a"}, {"a"}), Partition({"b"}, {"b"})}


def test_enumerate_cap():
    kb = parse_kb("a ; b ; c ; d.")
    with pytest.raises(CapExceeded):
        enumerate_models(kb, cap=3)


def test_enumerate_parallel_matches_serial():
    kb = random_program(random.Random(7), ProgramShape(6, 6, 3, 2))
    assert enumerate_models(kb, jobs=1) == enumerate_models(kb, jobs=3)


def test_example3_models(ex3):
    assert Partition({"a"}, {"a", "b", "c"}) in enumerate_models(ex3)


def test_induced_normal_kb(ex5):
    n = induced_normal_kb(ex5, HeadCut.of({1: "a", 2: "y"}))
    assert n.is_normal and n.ontology == ex5.ontology
    assert [str(r) for r in n.program] == ["a.", "y :- not x."]
    assert cut_of(n) == HeadCut.of({1: "a", 2: "y"})
    with pytest.raises(ValueError):
        induced_normal_kb(ex5, HeadCut.of({1: "a"}))
    with pytest.raises(ValueError):
        cut_of(ex5)


def test_cut_containment(ex5, ex5_parts):
    p = ex5_parts[3]
    mk = lambda d: induced_normal_kb(ex5, HeadCut.of(d))
    assert corollary1_check(ex5, p, mk({1: "a", 2: "x"}))
    assert corollary1_check(ex5, p, mk({1: "a", 2: "y"}))
    assert not corollary1_check(ex5, p, mk({1: "b", 2: "x"}))
    assert not corollary1_check(ex5, p, mk({1: "b", 2: "y"}))


def test_true_atom_needs_true_body():
    # b is true but its only rule has an undefined premise, so nothing derives it
    kb = parse_kb("a.\nb :- c.\nc :- not c.")
    p = Partition({"a", "b"}, {"a", "b", "c"}, kb.ka)
    v = check_model(kb, p)
    assert v.status is Status.FIXPOINT_MISMATCH and v.lfp == {"a", "c"}


# --- properties ------------------------------------------------------------------

def _random_instance(rng):
    kb = random_kb(rng)
    p = candidate(kb.ka, rng.randrange(3 ** len(kb.ka)))
    return kb, p


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_q_monotone(rng):
    kb, p = _random_instance(rng)
    if not is_saturated(kb, p):
        return
    for cut in enumerate_headcuts(kb, p):
        s = frozenset(a for a in kb.ka if rng.random() < 0.5)
        s2 = s | frozenset(a for a in kb.ka if rng.random() < 0.5)
        assert q_step(kb, p, cut, s) <= q_step(kb, p, cut, s2)
        fix = lfp_q(kb, p, cut)
        assert q_step(kb, p, cut, fix) == fix
        break


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_model_implies_saturated_nonempty(rng):
    kb, p = _random_instance(rng)
    v = check_model(kb, p, exhaustive=True)
    if v.is_model:
        assert is_saturated(kb, p)
        assert v.cuts_checked >= 1
        assert all(p.true <= fix == p.possible for _, fix in v.fixpoints)
        for cut, _ in v.fixpoints:
            assert _true_from_undefined(kb, p, cut, lfp_trace(kb, p, cut)) == []


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_two_valued_models_need_total_cuts(rng):
    # for total partitions every required rule has a true body, so every cut fires a true head
    kb, _ = _random_instance(rng)
    for m in enumerate_models(kb):
        if m.true == m.possible:
            for cut in enumerate_headcuts(kb, m):
                assert cut.heads <= m.true


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_faithful_extensions_keep_models(rng):
    """Faithful induced KBs extending a cut of a model's H keep it as a Phi-model."""
    kb, p = _random_instance(rng)
    if not check_model(kb, p).is_model:
        return
    pair = aft.LatticePair.of(p)
    for total in total_headcuts(kb):
        n = induced_normal_kb(kb, total)
        if corollary1_check(kb, p, n) and aft.faithful(kb, p, total):
            assert aft.check_model_normal(n, pair, parent=kb)


def test_containing_a_cut_is_not_enough():
    # rule 2 is exempt from every cut because c is true, but the induced KB that
    # picks the false head d for it is violated by the partition
    kb = parse_kb("#ont c.\nb ; a ; d :- c, not a.\nd ; c ; b :- not a, not b.")
    p = Partition({"c"}, {"a", "c"}, kb.ka)
    assert check_model(kb, p).is_model
    bad = induced_normal_kb(kb, HeadCut.of({1: "a", 2: "d"}))
    good = induced_normal_kb(kb, HeadCut.of({1: "a", 2: "c"}))
    assert corollary1_check(kb, p, bad) and corollary1_check(kb, p, good)
    assert not check_model(bad, p).is_model
    assert check_model(good, p).is_model


def test_inconsistent_extension_of_a_cut():
    # a model of the disjunctive KB whose cut sits inside an MKNF-inconsistent
    # induced KB: that KB picks c for rule 1 although c is false
    kb = parse_kb("#ont (a -> d | b) & ~c.\na ; c ; b :- not b.\nb :- not b.\nc ; b ; a.")
    p = Partition({"a"}, {"a", "b"}, kb.ka)
    assert check_model(kb, p).is_model
    total = HeadCut.of({1: "c", 2: "b", 3: "a"})
    n = induced_normal_kb(kb, total)
    assert corollary1_check(kb, p, n)
    assert enumerate_models(n) == []
    assert not aft.faithful(kb, p, total)


@settings(max_examples=60, deadline=None)
@given(st.randoms(use_true_random=False))
def test_faithful_extensions_are_consistent(rng):
    kb = random_kb(rng, ProgramShape(4, 3, 3, 2), 3)
    for p in enumerate_models(kb):
        for cut in enumerate_headcuts(kb, p):
            for total in total_headcuts(kb):
                if cut.within(total) and aft.faithful(kb, p, total):
                    n = induced_normal_kb(kb, total)
                    assert aft.check_model_normal(n, aft.LatticePair.of(p), parent=kb)


@settings(max_examples=150, deadline=None)
@given(st.randoms(use_true_random=False))
def test_lfp_within_possible(rng):
    kb, p = _random_instance(rng)
    for cut in enumerate_headcuts(kb, p):
        assert lfp_q(kb, p, cut) <= p.possible
