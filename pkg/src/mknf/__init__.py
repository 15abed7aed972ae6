"""Three-valued MKNF models of disjunctive hybrid knowledge bases via head-cuts."""
from .syntax import KnowledgeBase, Rule, parse_kb, render_kb, compute_ka, make_kb, ParseError
from .entailment import ob, is_consistent, entails, all_models
from .partition import Partition, TruthValue, atom_value, body_value, is_saturated, saturate
from .headcut import HeadCut, rule_required, admissible_heads, enumerate_headcuts, total_headcuts
from .qfix import (
    Status, CheckVerdict, q_step, lfp_q, check_model, enumerate_models,
    induced_normal_kbs, corollary1_check,
)
from .aft import LatticePair, phi, stable_revision, well_founded, check_model_normal, cross_check, faithful
