"""Accessible and schema-based determinization for automata on words and
stepwise hedge automata on nested words."""
from .automata import (
    Alphabet,
    AlphabetMismatch,
    AutomatonError,
    Nfa,
    NotDeterministic,
    RunStats,
    Sha,
    Timeout,
    UnknownSymbol,
    accepts,
    as_sha,
    is_deterministic,
    make_nfa,
    make_sha,
    run_word,
)
from .formats import (
    ParseError,
    format_nested_word,
    parse_automaton,
    parse_nested_word,
    serialize_automaton,
    to_dot,
)
from .hedges import (
    Tree,
    accepts_nested,
    determinize_sha,
    eval_hedge,
    is_deterministic_sha,
    product_sha,
    project_sha,
    schema_clean_sha,
    schema_determinize_sha,
    tree,
)
from .queries import annotate, nodes, one_x_dfa, one_x_sha, select_nodes, select_word
from .words import (
    canonical,
    determinize,
    product,
    project_first,
    schema_clean,
    schema_determinize,
)

__version__ = "0.1.0"
