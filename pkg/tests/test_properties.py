from hypothesis import given, settings
from hypothesis import strategies as st

from schemadet import checks
from schemadet.automata import Alphabet, Nfa, Sha
from schemadet.formats import format_nested_word, parse_automaton, parse_nested_word, serialize_automaton
from schemadet.hedges import Tree, eval_hedge
from schemadet.oracle import EnumerationBound

BOUND = EnumerationBound(max_word_length=6, max_hedge_items=6, max_depth=2)
SIGMA = Alphabet(["a", "b"])


@st.composite
def nfas(draw, deterministic=False, max_states=5):
    n = draw(st.integers(0 if not deterministic else 1, max_states))
    states = st.integers(0, n - 1) if n else st.nothing()
    letters = st.integers(0, len(SIGMA) - 1)
    if deterministic:
        table = draw(st.dictionaries(st.tuples(states, letters), states, max_size=n * len(SIGMA)))
        rules = {(q, l, t) for (q, l), t in table.items()}
        initial = draw(st.sets(states, max_size=1))
    else:
        rules = draw(st.sets(st.tuples(states, letters, states), max_size=3 * n))
        initial = draw(st.sets(states, max_size=n))
    final = draw(st.sets(states, max_size=n))
    return Nfa(SIGMA, n, initial, final, rules)


@st.composite
def shas(draw, deterministic=False, max_states=4):
    word = draw(nfas(deterministic, max_states))
    n = word.num_states
    states = st.integers(0, n - 1) if n else st.nothing()
    if deterministic:
        table = draw(st.dictionaries(st.tuples(states, states), states, max_size=n * n))
        applies = {(q1, q, t) for (q1, q), t in table.items()}
        tree_initial = draw(st.sets(states, max_size=1))
    else:
        applies = draw(st.sets(st.tuples(states, states, states), max_size=3 * n))
        tree_initial = draw(st.sets(states, max_size=n))
    return Sha(SIGMA, n, word.initial, word.final, word.rules, None, tree_initial, applies)


hedges = st.recursive(
    st.lists(st.sampled_from(["a", "b"]), max_size=3).map(tuple),
    lambda inner: st.lists(st.one_of(st.sampled_from(["a", "b"]), inner.map(Tree)), max_size=3).map(tuple),
    max_leaves=8,
)

WORD_CHECKS = [name for name in checks.CHECKS if name != "det-vs-naive"]


@settings(max_examples=150, deadline=None)
@given(nfas(), nfas(deterministic=True))
def test_word_invariants(a, s):
    for name in WORD_CHECKS:
        assert checks.CHECKS[name](a, s, BOUND) is None, name


@settings(max_examples=80, deadline=None)
@given(shas(), shas(deterministic=True))
def test_hedge_invariants(a, s):
    for name in WORD_CHECKS:
        assert checks.CHECKS[name](a, s, BOUND) is None, name


@settings(max_examples=100, deadline=None)
@given(nfas(max_states=4))
def test_det_matches_naive_oracle(a):
    assert checks.check_det_naive(a, None, BOUND) is None


@settings(max_examples=200, deadline=None)
@given(st.one_of(nfas(), shas()))
def test_serialization_round_trip(a):
    text = serialize_automaton(a)
    assert parse_automaton(text) == a
    assert serialize_automaton(parse_automaton(text)) == text


@settings(max_examples=200, deadline=None)
@given(hedges)
def test_nested_word_round_trip(h):
    assert parse_nested_word(format_nested_word(h)) == h


@settings(max_examples=150, deadline=None)
@given(shas(), hedges, hedges, st.sets(st.integers(0, 3)))
def test_eval_compositional(a, h1, h2, start):
    start = {q for q in start if q < a.num_states}
    assert eval_hedge(a, start, h1 + h2) == eval_hedge(a, eval_hedge(a, start, h1), h2)
