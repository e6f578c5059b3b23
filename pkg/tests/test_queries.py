import random

import pytest

from schemadet.automata import AutomatonError, accepts, make_nfa
from schemadet.formats import parse_nested_word
from schemadet.generate import random_nfa, random_sha
from schemadet.hedges import (
    Tree,
    accepts_nested,
    determinize_sha,
    schema_clean_sha,
    schema_determinize_sha,
)
from schemadet.oracle import enum_hedges, enum_words
from schemadet.queries import (
    NOT_X,
    X,
    annotate,
    insert_word,
    nodes,
    one_x_dfa,
    one_x_like,
    one_x_sha,
    select_nodes,
    select_word,
)
from schemadet.words import determinize, schema_clean, schema_determinize

H = parse_nested_word


def test_one_x_dfa_shape():
    d = one_x_dfa(["a", "b"])
    assert d.num_states == 2
    assert len(d.rules) == 2 * 2 + 1
    assert d.alphabet.symbols == ("a", "b", "x")


def test_one_x_dfa_language():
    d = one_x_dfa(["a", "b"])
    for w in enum_words(d.alphabet.symbols, 8):
        assert accepts(d, w) == (w.count(X) == 1)
    for w in ("x", "a x", "x a a"):
        assert accepts(d, w)
    for w in ("", "x x", "a"):
        assert not accepts(d, w)


def test_one_x_sha_shape():
    s = one_x_sha(["a"])
    assert s.apply_rules == {(0, 0, 0), (0, 1, 1), (1, 0, 1)}
    assert s.tree_initial == {0} and s.initial == {0} and s.final == {1}
    assert s.alphabet.symbols == ("a", "x", "not-x")


def test_one_x_sha_examples():
    s = one_x_sha(["a", "b"])
    assert accepts_nested(s, H("< x >"))
    assert accepts_nested(s, H("a x b"))
    assert not accepts_nested(s, H("< x > x"))


def test_one_x_sha_language_small_bound():
    s = one_x_sha(["a"])
    for h in enum_hedges(s.alphabet.symbols, 6, 2):
        assert accepts_nested(s, h) == (sum(1 for sym in _letters(h) if sym == X) == 1)


def _letters(h):
    for item in h:
        if isinstance(item, Tree):
            yield from _letters(item.children)
        else:
            yield item


def test_reserved_symbols_rejected():
    with pytest.raises(AutomatonError):
        one_x_dfa(["x"])
    with pytest.raises(AutomatonError):
        one_x_sha(["not-x"])


def test_one_x_like_follows_alphabet_order():
    a = make_nfa(["x", "b", "a"], 1, [0], [0], [])
    s = one_x_like(a)
    assert s.alphabet == a.alphabet
    for w in enum_words(a.alphabet.symbols, 5):
        assert accepts(s, w) == (w.count(X) == 1)
    with pytest.raises(AutomatonError):
        one_x_like(make_nfa(["a"], 1, [0], [0], []))


def test_insert_word():
    assert insert_word((), 0) == ("x",)
    assert insert_word(("a",), 0) == ("x", "a")
    assert insert_word(("a", "b"), 2) == ("a", "b", "x")
    with pytest.raises(AutomatonError):
        insert_word(("a",), 2)


def test_select_word_a0(a0):
    assert select_word(a0, ()) == {0}
    assert select_word(a0, ("a",)) == {0}
    assert select_word(a0, ("a", "a")) == set()
    with pytest.raises(AutomatonError):
        select_word(a0, ("x",))


def test_nodes_preorder():
    assert nodes(()) == set()
    assert nodes(("a", "b")) == set()
    h = H("< a < b > > c < d < > >")
    assert nodes(h) == {1, 2, 3, 4}
    # node 2 is the child of node 1, node 4 the child of node 3
    assert annotate(h, 2) == H("< not-x a < x b > > c < not-x d < not-x > >")
    assert annotate(h, 4) == H("< not-x a < not-x b > > c < not-x d < x > >")


def test_annotate_examples():
    assert annotate(H("< a >"), 1) == H("< x a >")
    assert annotate(H("< a > < b >"), 1) == H("< x a > < not-x b >")
    assert annotate(H("< < > >"), 2) == H("< not-x < x > >")
    with pytest.raises(AutomatonError):
        annotate(H("< a >"), 2)


def test_select_nodes_with_schema_as_query():
    s = one_x_sha(["a"])
    for h in enum_hedges(("a",), 5, 2):
        assert select_nodes(s, h) == nodes(h)
    assert select_nodes(s, ()) == set()
    with pytest.raises(AutomatonError):
        select_nodes(s, H("< not-x >"))


def test_select_word_only_sees_v_structures():
    rng = random.Random(1)
    schema = one_x_dfa(["a", "b"])
    for _ in range(50):
        a = random_nfa(rng, 4, schema.alphabet, 0.5)
        for w in enum_words(("a", "b"), 3):
            for pi in select_word(a, w):
                assert accepts(schema, insert_word(w, pi))


def test_queries_invariant_under_cleaning_and_determinization():
    rng = random.Random(12)
    schema = one_x_dfa(["a", "b"])
    for _ in range(60):
        a = random_nfa(rng, rng.randint(1, 5), schema.alphabet, rng.choice((0.2, 0.5, 0.8)))
        variants = [schema_clean(a, schema).automaton, determinize(a).automaton,
                    schema_determinize(a, schema).automaton]
        for w in enum_words(("a", "b"), 4):
            expected = select_word(a, w)
            assert all(select_word(v, w) == expected for v in variants)


def test_node_queries_invariant_under_cleaning_and_determinization():
    rng = random.Random(13)
    schema = one_x_sha(["a"])
    subjects = [h for h in enum_hedges(("a",), 4, 2) if nodes(h)]
    for _ in range(40):
        a = random_sha(rng, rng.randint(1, 4), schema.alphabet, 0.5, rng.choice((0.2, 0.5, 0.8)))
        variants = [schema_clean_sha(a, schema).automaton, determinize_sha(a).automaton,
                    schema_determinize_sha(a, schema).automaton]
        for h in subjects:
            expected = select_nodes(a, h)
            assert all(select_nodes(v, h) == expected for v in variants)
