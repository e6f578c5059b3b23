"""The one-x schemas and monadic query semantics on words and nested words."""
from __future__ import annotations

from .automata import Alphabet, AutomatonError, Nfa, Sha, accepts
from .hedges import Tree, accepts_nested, hedge_letters

X = "x"
NOT_X = "not-x"


def _base_alphabet(sigma) -> Alphabet:
    return sigma if isinstance(sigma, Alphabet) else Alphabet(sigma)


def one_x_dfa(sigma) -> Nfa:
    """DFA over ``sigma + [x]`` accepting the words with exactly one ``x``.

    States: 0 (no x read yet, initial) and 1 (one x read, final). ``x`` is
    undefined in state 1.
    """
    sigma = _base_alphabet(sigma)
    if X in sigma:
        raise AutomatonError(f"alphabet already contains the reserved symbol {X!r}")
    alphabet = sigma.extend(X)
    x = alphabet.index(X)
    rules = {(q, a, q) for q in (0, 1) for a in range(len(sigma))}
    rules.add((0, x, 1))
    return Nfa(alphabet, 2, {0}, {1}, rules)


def one_x_sha(sigma) -> Sha:
    """dSHA over ``sigma + [x, not-x]`` accepting nested words with exactly one ``x``."""
    sigma = _base_alphabet(sigma)
    for reserved in (X, NOT_X):
        if reserved in sigma:
            raise AutomatonError(f"alphabet already contains the reserved symbol {reserved!r}")
    alphabet = sigma.extend(X, NOT_X)
    x, not_x = alphabet.index(X), alphabet.index(NOT_X)
    plain = list(range(len(sigma))) + [not_x]
    rules = {(q, a, q) for q in (0, 1) for a in plain}
    rules.add((0, x, 1))
    applies = {(0, 0, 0), (0, 1, 1), (1, 0, 1)}
    return Sha(alphabet, 2, {0}, {1}, rules, None, {0}, applies)


def one_x_like(a: Nfa) -> Nfa:
    """The one-x schema over exactly the alphabet of ``a``, in its symbol order.

    A SHA gets the nested-word schema, an NFA the word schema.
    """
    nested = isinstance(a, Sha)
    reserved = (X, NOT_X) if nested else (X,)
    missing = [sym for sym in reserved if sym not in a.alphabet]
    if missing:
        raise AutomatonError(f"alphabet lacks the reserved symbol {missing[0]!r}")
    sigma = [sym for sym in a.alphabet if sym not in reserved]
    model = one_x_sha(sigma) if nested else one_x_dfa(sigma)
    position = [model.alphabet.index(sym) for sym in a.alphabet]
    rules = {(q1, k, q2) for k, old in enumerate(position)
             for q1, letter, q2 in model.rules if letter == old}
    if nested:
        return Sha(a.alphabet, 2, model.initial, model.final, rules, None,
                   model.tree_initial, model.apply_rules)
    return Nfa(a.alphabet, 2, model.initial, model.final, rules)


def insert_word(w, pi: int) -> tuple:
    """Insert ``x`` after position ``pi`` (position 0 is the start)."""
    w = tuple(w.split()) if isinstance(w, str) else tuple(w)
    if not 0 <= pi <= len(w):
        raise AutomatonError(f"position {pi} out of range 0..{len(w)}")
    return w[:pi] + (X,) + w[pi:]


def select_word(a: Nfa, w) -> frozenset:
    """Positions ``pi`` of ``w`` such that ``a`` accepts ``w`` with ``x`` inserted after ``pi``."""
    w = tuple(w.split()) if isinstance(w, str) else tuple(w)
    if X in w:
        raise AutomatonError(f"subject word must not contain {X!r}")
    return frozenset(pi for pi in range(len(w) + 1) if accepts(a, insert_word(w, pi)))


def nodes(h) -> frozenset:
    """Node ids of a hedge: trees numbered 1, 2, ... in document (pre-)order."""
    count = 0

    def walk(items):
        nonlocal count
        for item in items:
            if isinstance(item, Tree):
                count += 1
                walk(item.children)

    walk(h)
    return frozenset(range(1, count + 1))


def annotate(h, pi: int) -> tuple:
    """Prepend ``x`` to the children of node ``pi`` and ``not-x`` to every other node."""
    if pi not in nodes(h):
        raise AutomatonError(f"invalid node id {pi}")
    count = 0

    def walk(items):
        nonlocal count
        out = []
        for item in items:
            if isinstance(item, Tree):
                count += 1
                mark = X if count == pi else NOT_X
                out.append(Tree((mark,) + walk(item.children)))
            else:
                out.append(item)
        return tuple(out)

    return walk(h)


def select_nodes(a: Sha, h) -> frozenset:
    for sym in hedge_letters(h):
        if sym in (X, NOT_X):
            raise AutomatonError(f"subject hedge must not contain {sym!r}")
    return frozenset(pi for pi in nodes(h) if accepts_nested(a, annotate(h, pi)))
