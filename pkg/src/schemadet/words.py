"""Accessible determinization, accessible product, projection, schema-based
cleaning and schema-based determinization for automata on words.

Every construction is an agenda/store saturation: a state is pushed on the
(LIFO) agenda only after a failed store-membership test, so each result
state is processed exactly once.
"""
from __future__ import annotations

import time
from typing import NamedTuple, Optional

from .automata import (
    Nfa,
    RunStats,
    Timeout,
    _Counter,
    check_same_alphabet,
    relabel,
    require_deterministic_schema,
    subset_label,
)
from .kernels import get_kernel


class DetResult(NamedTuple):
    automaton: Nfa
    subsets: tuple  # result state -> sorted tuple of source states
    stats: RunStats


class ProductResult(NamedTuple):
    automaton: Nfa
    pairs: tuple  # result state -> (state of a, state of s)
    stats: RunStats


class Projection(NamedTuple):
    automaton: Nfa
    origin: tuple  # result state -> state of the projected-onto automaton


class CleanResult(NamedTuple):
    automaton: Nfa
    origin: tuple
    stats: RunStats


class AlignmentMap(NamedTuple):
    """Subsets of the result states plus the alignments ``Q ~ s`` found.

    ``pairs`` lists ``(result state, schema state)`` in discovery order; a
    subset may be aligned to several schema states.
    """

    subsets: tuple
    pairs: tuple


class SchemaDetResult(NamedTuple):
    automaton: Nfa
    alignments: AlignmentMap
    stats: RunStats


def _check_deadline(deadline):
    if deadline is not None and time.perf_counter() > deadline:
        raise Timeout("construction exceeded its deadline")


def determinize(a: Nfa, *, backend: Optional[str] = None, deadline: Optional[float] = None) -> DetResult:
    """Accessible subset construction.

    Only subsets reachable from the initial subset are created; result state
    ids follow discovery order.
    """
    counter = _Counter()
    if not a.initial:
        return DetResult(Nfa(a.alphabet, 0, (), (), ()), (), counter.freeze())
    kernel = get_kernel(backend)(a.num_states, len(a.alphabet), a.rules)
    store: dict = {}
    agenda: list = []
    rules: set = set()

    def intern(subset):
        idx = store.get(subset)
        if idx is None:
            idx = store[subset] = kernel.add(subset)
            agenda.append(idx)
            counter.pushes += 1
        return idx

    init = intern(tuple(sorted(a.initial)))
    while agenda:
        _check_deadline(deadline)
        i = agenda.pop()
        counter.pops += 1
        for letter, image in kernel.letter_images(i):
            counter.emitted += 1
            rules.add((i, letter, intern(image)))

    subsets = tuple(store)
    final = {i for i, sub in enumerate(subsets) if not a.final.isdisjoint(sub)}
    dfa = Nfa(a.alphabet, len(subsets), {init}, final, rules)
    return DetResult(dfa, subsets, counter.freeze())


def product(a: Nfa, s: Nfa, *, deadline: Optional[float] = None) -> ProductResult:
    """Accessible product; recognizes the intersection of both languages."""
    check_same_alphabet(a, s)
    counter = _Counter()
    succ_a, succ_s = a.successors(), s.successors()
    nletters = len(a.alphabet)
    store: dict = {}
    agenda: list = []
    rules: set = set()

    def intern(pair):
        idx = store.get(pair)
        if idx is None:
            idx = store[pair] = len(store)
            agenda.append(pair)
            counter.pushes += 1
        return idx

    initial = {intern((q, t)) for q in sorted(a.initial) for t in sorted(s.initial)}
    while agenda:
        _check_deadline(deadline)
        q1, s1 = pair = agenda.pop()
        counter.pops += 1
        src = store[pair]
        for letter in range(nletters):
            targets_a = succ_a.get((q1, letter))
            if not targets_a:
                continue
            for s2 in succ_s.get((s1, letter), ()):
                for q2 in targets_a:
                    counter.emitted += 1
                    rules.add((src, letter, intern((q2, s2))))

    pairs = tuple(store)
    final = {i for i, (q, t) in enumerate(pairs) if q in a.final and t in s.final}
    result = Nfa(a.alphabet, len(pairs), initial, final, rules)
    return ProductResult(result, pairs, counter.freeze())


def project_first(p: Nfa, pairs) -> Projection:
    """Project a product automaton onto the first components of its pairs.

    Result states are the distinct first components, renumbered densely in
    ascending order; ``origin`` maps them back.
    """
    origin = tuple(sorted({q for q, _ in pairs}))
    new_id = {q: i for i, q in enumerate(origin)}
    first = [new_id[q] for q, _ in pairs]
    result = Nfa(
        p.alphabet,
        len(origin),
        {first[i] for i in p.initial},
        {first[i] for i in p.final},
        {(first[x], letter, first[y]) for x, letter, y in p.rules},
    )
    return Projection(result, origin)


def _carry_names(a: Nfa, result: Nfa, origin) -> Nfa:
    if a.names is None:
        return result
    return result.with_names(tuple(a.names[q] for q in origin))


def schema_clean(a: Nfa, s: Nfa, *, deadline: Optional[float] = None) -> CleanResult:
    """Keep only the states and rules of ``a`` used by some word of the schema.

    ``origin[i]`` is the state of ``a`` that result state ``i`` stands for;
    origins ascend, so the cleaning preserves the relative order of states.
    """
    check_same_alphabet(a, s)
    require_deterministic_schema(s)
    prod = product(a, s, deadline=deadline)
    proj = project_first(prod.automaton, prod.pairs)
    return CleanResult(_carry_names(a, proj.automaton, proj.origin), proj.origin, prod.stats)


def schema_determinize(a: Nfa, s: Nfa, *, backend: Optional[str] = None,
                       deadline: Optional[float] = None) -> SchemaDetResult:
    """Subset construction that only materializes subsets aligned to a schema state.

    Equal, up to renaming states by their subsets, to
    ``schema_clean(determinize(a).automaton, s)``.
    """
    check_same_alphabet(a, s)
    require_deterministic_schema(s)
    counter = _Counter()
    if not a.initial or not s.initial:
        return SchemaDetResult(Nfa(a.alphabet, 0, (), (), ()), AlignmentMap((), ()), counter.freeze())
    kernel = get_kernel(backend)(a.num_states, len(a.alphabet), a.rules)
    succ_s = s.successors()
    subset_ids: dict = {}
    store: dict = {}
    agenda: list = []
    rules: set = set()
    images: dict = {}

    def subset_id(subset):
        idx = subset_ids.get(subset)
        if idx is None:
            idx = subset_ids[subset] = kernel.add(subset)
        return idx

    def align(i, state):
        if (i, state) not in store:
            store[(i, state)] = len(store)
            agenda.append((i, state))
            counter.pushes += 1

    (s0,) = s.initial
    init = subset_id(tuple(sorted(a.initial)))
    align(init, s0)
    while agenda:
        _check_deadline(deadline)
        i, s1 = agenda.pop()
        counter.pops += 1
        row = images.get(i)
        if row is None:
            row = images[i] = kernel.letter_images(i)
        for letter, image in row:
            for s2 in succ_s.get((s1, letter), ()):
                j = subset_id(image)
                counter.emitted += 1
                rules.add((i, letter, j))
                align(j, s2)

    subsets = tuple(subset_ids)
    final = {i for i, t in store if t in s.final and not a.final.isdisjoint(subsets[i])}
    dfa = Nfa(a.alphabet, len(subsets), {init}, final, rules)
    return SchemaDetResult(dfa, AlignmentMap(subsets, tuple(store)), counter.freeze())


def canonical(a: Nfa, subsets, source_names=None) -> Nfa:
    """Rename subset states by ascending subset and name them after it.

    Two constructions that build the same subsets in different orders yield
    identical canonical automata. ``source_names`` spells the members of each
    subset; state ids are used when it is omitted.
    """
    labels = tuple(subset_label(sub, source_names) for sub in subsets)
    return relabel(a.with_names(labels), subsets)
