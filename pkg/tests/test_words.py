import random
import re

import pytest

from conftest import clean_not_perfect
from schemadet.automata import (
    AlphabetMismatch,
    NotDeterministic,
    UnknownSymbol,
    accepts,
    is_deterministic,
    make_nfa,
    run_word,
    subset_label,
)
from schemadet.formats import serialize_automaton
from schemadet.generate import random_nfa
from schemadet.oracle import (
    EnumerationBound,
    accessible_part,
    enum_words,
    iso_check,
    lang_equal_bounded,
    naive_determinize,
)
from schemadet.queries import one_x_dfa
from schemadet.words import (
    canonical,
    determinize,
    product,
    project_first,
    schema_clean,
    schema_determinize,
)

BOUND8 = EnumerationBound(max_word_length=8)


def language(a, max_length):
    return {w for w in enum_words(a.alphabet.symbols, max_length) if accepts(a, w)}


def named_subsets(a, subsets):
    return [subset_label(sub, a.names) for sub in subsets]


# --- A0, a three-state NFA for (x + empty)(x a)* ---------------------------

def test_a0_recognizes_optional_x_then_xa_star(a0):
    # regex oracle, independent of the automaton code
    for w in enum_words(("a", "x"), 8):
        assert accepts(a0, w) == bool(re.fullmatch(r"x?(xa)*", "".join(w)))


def test_a0_membership_examples(a0):
    assert accepts(a0, "x")
    assert accepts(a0, "x x a")
    assert not run_word(a0, a0.initial, "x a").isdisjoint(a0.final)
    assert not is_deterministic(a0)


def test_det_a0_has_the_four_subsets(a0):
    det = determinize(a0)
    assert det.automaton.num_states == 4
    assert sorted(named_subsets(a0, det.subsets)) == ["{2,3}", "{2,4}", "{2}", "{3}"]
    (init,) = det.automaton.initial
    assert subset_label(det.subsets[init], a0.names) == "{2,4}"
    assert is_deterministic(det.automaton)


def test_det_a0_frozen_structure(a0):
    # derived by running the construction once, cross-checked with the naive oracle
    det = determinize(a0)
    assert det.subsets == ((0, 2), (0, 1), (0,), (1,))
    assert det.automaton.final == {0, 1, 2}
    assert det.automaton.rules == {(0, 1, 1), (1, 0, 2), (1, 1, 3), (2, 1, 3), (3, 0, 2)}
    assert det.stats.agenda_pushes == 4 == det.stats.agenda_pops
    assert iso_check(det.automaton, accessible_part(naive_determinize(a0))[0]) is not None


def test_det_a0_cleaning_drops_empty_word_and_xxa(a0, onex):
    det = determinize(a0).automaton
    clean = schema_clean(det, onex).automaton
    for w in ((), ("x", "x", "a")):
        assert accepts(det, w)
        assert not accepts(clean, w)
    for w in (("x",), ("x", "a")):
        assert accepts(clean, w)
    ok, witness = lang_equal_bounded(det, clean, BOUND8)
    assert not ok and witness == ()


def test_a0_inside_schema_is_x_and_xa(a0, onex):
    det = determinize(a0).automaton
    both = {w for w in language(det, 6) if accepts(onex, w)}
    assert both == {("x",), ("x", "a")}
    assert language(product(a0, onex).automaton, 4) == {("x",), ("x", "a")}


def test_a0_is_schema_clean(a0, onex):
    res = schema_clean(a0, onex)
    assert res.automaton == a0
    assert res.origin == (0, 1, 2)
    assert res.automaton.names == a0.names


def test_schema_det_of_a0_equals_cleaned_det(a0, onex):
    sdet = schema_determinize(a0, onex)
    det = determinize(a0)
    clean = schema_clean(det.automaton, onex)
    assert clean.origin == (0, 1, 2)
    left = canonical(sdet.automaton, sdet.alignments.subsets)
    right = canonical(clean.automaton, [det.subsets[q] for q in clean.origin])
    assert serialize_automaton(left) == serialize_automaton(right)
    assert sdet.stats.agenda_pushes == len(sdet.alignments.pairs) == 3
    assert sorted(named_subsets(a0, sdet.alignments.subsets)) == ["{2,3}", "{2,4}", "{2}"]


# --- determinize ------------------------------------------------------------

def test_det_of_empty_initial_has_no_states():
    a = make_nfa(["a"], 2, [], [1], [(0, "a", 1)])
    res = determinize(a)
    assert res.automaton.num_states == 0 and res.subsets == ()


def test_det_of_accessible_dfa_is_singleton_renaming():
    d = make_nfa(["a", "b"], 3, [0], [2], [(0, "a", 1), (1, "b", 2), (2, "a", 0)])
    res = determinize(d)
    assert sorted(res.subsets) == [(0,), (1,), (2,)]
    mapping = iso_check(res.automaton, d)
    assert mapping == {i: sub[0] for i, sub in enumerate(res.subsets)}


def test_stats_pops_equal_pushes():
    rng = random.Random(5)
    for _ in range(50):
        a = random_nfa(rng, 5, 2, 0.5)
        stats = determinize(a).stats
        assert stats.agenda_pops == stats.agenda_pushes == determinize(a).automaton.num_states


def test_unknown_letter_is_reported(a0):
    with pytest.raises(UnknownSymbol, match="'b'"):
        accepts(a0, "x b")


# --- product and projection -------------------------------------------------

def test_product_diagonal_of_dfa():
    d = make_nfa(["a", "b"], 3, [0], [1], [(0, "a", 1), (1, "b", 0), (2, "a", 2)])
    res = product(d, d)
    assert all(q == t for q, t in res.pairs)
    assert sorted(q for q, _ in res.pairs) == [0, 1]
    proj = project_first(res.automaton, res.pairs)
    assert proj.origin == (0, 1)
    assert proj.automaton.rules == {(0, 0, 1), (1, 1, 0)}


def test_product_with_no_initial_schema(a0):
    s = make_nfa(["a", "x"], 1, [], [0], [])
    assert product(a0, s).automaton.num_states == 0
    empty = product(a0, s)
    assert project_first(empty.automaton, empty.pairs).automaton.num_states == 0


def test_product_alphabet_mismatch(a0):
    with pytest.raises(AlphabetMismatch):
        product(a0, one_x_dfa(["b"]))


def test_projection_never_adds_rules():
    rng = random.Random(11)
    for _ in range(50):
        a = random_nfa(rng, 4, 2, 0.6)
        s = random_nfa(rng, 3, 2, 0.6)
        p = product(a, s)
        assert len(project_first(p.automaton, p.pairs).automaton.rules) <= len(p.automaton.rules)


# --- cleaning ---------------------------------------------------------------

def test_clean_rejects_nondeterministic_schema(a0):
    with pytest.raises(NotDeterministic):
        schema_clean(a0, a0)
    with pytest.raises(NotDeterministic):
        schema_determinize(a0, a0)


def test_clean_dfa_by_itself_is_identity():
    d = make_nfa(["a", "b"], 3, [0], [2], [(0, "a", 1), (1, "b", 2), (2, "a", 2)])
    assert schema_clean(d, d).automaton == d


def test_clean_but_not_perfect(onex):
    d = clean_not_perfect()
    assert is_deterministic(d)
    assert accepts(d, "x a x a") and not accepts(onex, "x a x a")
    assert run_word(d, d.initial, "a") == run_word(d, d.initial, "x a") == {1}
    assert schema_clean(d, onex).automaton == d


# --- schema-based determinization -------------------------------------------

def test_schema_det_with_empty_schema(a0):
    s = make_nfa(["a", "x"], 2, [], [1], [(0, "x", 1)])
    assert schema_determinize(a0, s).automaton.num_states == 0


def test_schema_det_never_larger_than_det():
    rng = random.Random(3)
    for _ in range(1000):
        a = random_nfa(rng, rng.randint(0, 6), 2, rng.choice((0.2, 0.5, 0.8)))
        s = random_nfa(rng, rng.randint(1, 4), 2, 0.6, deterministic=True)
        sdet = schema_determinize(a, s)
        det = determinize(a)
        assert sdet.automaton.num_states <= det.automaton.num_states
        assert set(sdet.alignments.subsets) <= set(det.subsets)


def test_alignments_are_distinct_and_valid():
    rng = random.Random(8)
    for _ in range(100):
        a = random_nfa(rng, 5, 2, 0.5)
        s = random_nfa(rng, 3, 2, 0.7, deterministic=True)
        pairs = schema_determinize(a, s).alignments.pairs
        assert len(set(pairs)) == len(pairs)
        assert all(0 <= t < s.num_states for _, t in pairs)
