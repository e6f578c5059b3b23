"""Brute-force machinery for checking the constructions.

Nothing here calls into the construction modules: simulation, powerset
determinization and isomorphism checking are written from the definitions,
over bitmask state sets, so they can serve as independent oracles.

Enumeration order
-----------------
Words: by length, then lexicographically by alphabet order.

Hedges: by total size (letters plus trees, counted recursively), then by the
first item (letters in alphabet order before trees; trees ordered by inner
size, then by the order of their inner hedge), then by the rest of the hedge.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional, Sequence

from .automata import AutomatonError, Nfa, Sha, check_same_alphabet
from .hedges import Tree


@dataclass(frozen=True)
class EnumerationBound:
    max_word_length: int = 8
    max_hedge_items: int = 8
    max_depth: int = 3

    def __post_init__(self):
        if min(self.max_word_length, self.max_hedge_items, self.max_depth) < 0:
            raise ValueError("bounds must be non-negative")


def enum_words(sigma: Sequence[str], max_length: int) -> Iterator[tuple]:
    sigma = tuple(sigma)
    for n in range(max_length + 1):
        yield from itertools.product(sigma, repeat=n)


def enum_hedges(sigma: Sequence[str], max_items: int, max_depth: int) -> Iterator[tuple]:
    sigma = tuple(sigma)

    @lru_cache(maxsize=None)
    def exact(n, d):
        if n == 0:
            return ((),)
        out = []
        for sym in sigma:
            out.extend((sym,) + rest for rest in exact(n - 1, d))
        if d >= 1:
            for m in range(n):
                for inner in exact(m, d - 1):
                    t = Tree(inner)
                    out.extend((t,) + rest for rest in exact(n - 1 - m, d))
        return tuple(out)

    for n in range(max_items + 1):
        yield from exact(n, max_depth)


def count_hedges(num_letters: int, max_items: int, max_depth: int) -> int:
    """Closed-form recurrence for the number of hedges :func:`enum_hedges` yields.

    H(0, d) = 1 and H(n, d) = k H(n-1, d) + [d >= 1] sum_m H(m, d-1) H(n-1-m, d).
    """

    @lru_cache(maxsize=None)
    def h(n, d):
        if n == 0:
            return 1
        total = num_letters * h(n - 1, d)
        if d >= 1:
            total += sum(h(m, d - 1) * h(n - 1 - m, d) for m in range(n))
        return total

    return sum(h(n, max_depth) for n in range(max_items + 1))


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Simulator:
    """Bitmask simulation of an NFA or SHA."""

    def __init__(self, a: Nfa):
        n = a.num_states
        nl = len(a.alphabet)
        self.alphabet = a.alphabet
        self.letter = [[0] * n for _ in range(nl)]
        for src, letter, dst in a.rules:
            self.letter[letter][src] |= 1 << dst
        self.apply = {}
        self.tree_initial = 0
        if isinstance(a, Sha):
            for q1, q, q2 in a.apply_rules:
                self.apply[(q1, q)] = self.apply.get((q1, q), 0) | (1 << q2)
            for q in a.tree_initial:
                self.tree_initial |= 1 << q
        self.initial = sum(1 << q for q in a.initial)
        self.final = sum(1 << q for q in a.final)

    def step_letter(self, mask, letter):
        row = self.letter[letter]
        out = 0
        for q in _bits(mask):
            out |= row[q]
        return out

    def step_tree(self, mask, tree_mask):
        if not mask or not tree_mask:
            return 0
        out = 0
        apply = self.apply
        for q1 in _bits(mask):
            for q in _bits(tree_mask):
                out |= apply.get((q1, q), 0)
        return out

    def run(self, mask, h):
        for item in h:
            if isinstance(item, Tree):
                mask = self.step_tree(mask, self.run(self.tree_initial, item.children))
            else:
                mask = self.step_letter(mask, self.alphabet.index(item))
        return mask

    def accepts(self, h) -> bool:
        return bool(self.run(self.initial, h) & self.final)


def walk_hedges(a: Nfa, max_items: int, max_depth: int, visit, weight=None) -> int:
    """Call ``visit(mask, total)`` once for every hedge within the bound.

    ``mask`` is the bitmask of states reached from the initial states and
    ``total`` the sum of ``weight[letter index]`` over all letters of the
    hedge. Hedges are walked depth-first, each one extended by a single item
    from its longest proper prefix, so no two hedges are merged. Returns the
    number of hedges visited.
    """
    n = a.num_states
    if n > 10:
        raise AutomatonError("walk_hedges tabulates all state sets; at most 10 states")
    sim = Simulator(a)
    nletters = len(a.alphabet)
    weight = list(weight) if weight is not None else [0] * nletters
    masks = range(1 << n)
    letter_table = [[sim.step_letter(m, l) for l in range(nletters)] for m in masks]
    tree_table = [[sim.step_tree(m, t) for t in masks] for m in masks]
    letter_moves = list(zip(range(nletters), weight))

    def dfs(mask, total, size, budget, depth, emit):
        emit(mask, total, size)
        if size == budget:
            return
        row = letter_table[mask]
        for letter, w in letter_moves:
            dfs(row[letter], total + w, size + 1, budget, depth, emit)
        if depth >= 1:
            inner = trees[depth - 1]
            trow = tree_table[mask]
            for m in range(budget - size):
                for tmask, tw in inner[m]:
                    dfs(trow[tmask], total + tw, size + 1 + m, budget, depth, emit)

    # trees[d][m]: (state mask, weight) of every inner hedge of size m and depth <= d
    trees: list = []
    for d in range(max_depth):
        by_size = [[] for _ in range(max_items)]
        if max_items:
            dfs(sim.tree_initial, 0, 0, max_items - 1, d,
                lambda mask, total, size: by_size[size].append((mask, total)))
        trees.append(by_size)
    count = 0

    def emit_top(mask, total, size):
        nonlocal count
        count += 1
        visit(mask, total)

    dfs(sim.initial, 0, 0, max_items, max_depth, emit_top)
    return count


def reachable_configurations(automata: Sequence[Nfa], max_items: int, max_depth: int = 0,
                             nested: bool = False) -> set:
    """All tuples of reached state sets, one per automaton, over every input in the bound.

    Equivalent to running each automaton on every word (or hedge) of the
    enumeration and collecting the state sets, but inputs that lead to the
    same tuple are merged layer by layer.
    """
    sims = [Simulator(a) for a in automata]
    nletters = len(automata[0].alphabet)
    start = tuple(s.initial for s in sims)
    tree_start = tuple(s.tree_initial for s in sims)

    def letter_step(cfg, letter):
        return tuple(s.step_letter(m, letter) for s, m in zip(sims, cfg))

    def tree_step(cfg, tcfg):
        return tuple(s.step_tree(m, t) for s, m, t in zip(sims, cfg, tcfg))

    @lru_cache(maxsize=None)
    def layers(origin, n, d):
        trees = [set() for _ in range(n + 1)]
        if nested and d >= 1 and n >= 1:
            inner = layers(tree_start, n - 1, d - 1)
            for k in range(1, n + 1):
                trees[k] = inner[k - 1]
        out = [{origin}]
        for k in range(1, n + 1):
            layer = set()
            for cfg in out[k - 1]:
                for letter in range(nletters):
                    layer.add(letter_step(cfg, letter))
            for j in range(1, k + 1):
                if trees[j]:
                    for cfg in out[k - j]:
                        for tcfg in trees[j]:
                            layer.add(tree_step(cfg, tcfg))
            out.append(frozenset(layer))
        return tuple(out)

    result = set()
    for layer in layers(start, max_items, max_depth if nested else 0):
        result.update(layer)
    return result


def find_violation(automata: Sequence[Nfa], predicate, bound: EnumerationBound = EnumerationBound(),
                   nested: Optional[bool] = None):
    """First input within the bound on which ``predicate`` fails, or None.

    ``predicate`` receives one acceptance boolean per automaton. All automata
    must share one alphabet; SHAs are run on hedges, NFAs on words.
    """
    for other in automata[1:]:
        check_same_alphabet(automata[0], other)
    if nested is None:
        nested = any(isinstance(a, Sha) for a in automata)
    size = bound.max_hedge_items if nested else bound.max_word_length
    sims = [Simulator(a) for a in automata]
    configs = reachable_configurations(automata, size, bound.max_depth, nested)
    if all(predicate(*(bool(m & s.final) for m, s in zip(cfg, sims))) for cfg in configs):
        return None
    symbols = automata[0].alphabet.symbols
    inputs = enum_hedges(symbols, size, bound.max_depth) if nested else enum_words(symbols, size)
    for h in inputs:
        if not predicate(*(s.accepts(h) for s in sims)):
            return h
    raise AssertionError("configuration check and enumeration disagree")


def lang_equal_bounded(a: Nfa, b: Nfa, bound: EnumerationBound = EnumerationBound()):
    """Compare two languages on every input within the bound.

    Returns ``(True, None)`` or ``(False, counterexample)`` where the
    counterexample is the first distinguishing input in enumeration order.
    SHAs are compared on hedges, NFAs on words.
    """
    witness = find_violation([a, b], lambda x, y: x == y, bound)
    return witness is None, witness


def naive_determinize(a: Nfa, max_states: int = 12) -> Nfa:
    """Full powerset construction: one state per non-empty subset.

    State ``mask - 1`` stands for the subset with bitmask ``mask``. For SHAs
    the apply rules are lifted to every pair of subsets.
    """
    n = a.num_states
    if n > max_states:
        raise AutomatonError(f"naive determinization limited to {max_states} states, got {n}")
    sim = Simulator(a)
    full = 1 << n
    rules = set()
    for mask in range(1, full):
        for letter in range(len(a.alphabet)):
            image = sim.step_letter(mask, letter)
            if image:
                rules.add((mask - 1, letter, image - 1))
    initial = {sim.initial - 1} if sim.initial else set()
    final = {mask - 1 for mask in range(1, full) if mask & sim.final}
    if not isinstance(a, Sha):
        return Nfa(a.alphabet, full - 1, initial, final, rules)
    applies = set()
    if sim.apply:
        for m1 in range(1, full):
            for m2 in range(1, full):
                image = sim.step_tree(m1, m2)
                if image:
                    applies.add((m1 - 1, m2 - 1, image - 1))
    tree_initial = {sim.tree_initial - 1} if sim.tree_initial else set()
    return Sha(a.alphabet, full - 1, initial, final, rules, None, tree_initial, applies)


def accessible_part(a: Nfa):
    """Restrict to states reachable from initial (and tree-initial) states.

    Returns ``(automaton, kept)`` with ``kept`` the ascending original ids.
    """
    is_sha = isinstance(a, Sha)
    out_rules: dict = {}
    for src, letter, dst in a.rules:
        out_rules.setdefault(src, []).append(dst)
    apply_by_state: dict = {}
    if is_sha:
        for q1, q, q2 in a.apply_rules:
            apply_by_state.setdefault(q1, []).append((q, q2))
            apply_by_state.setdefault(q, []).append((q1, q2))
    reached = set(a.initial) | (set(a.tree_initial) if is_sha else set())
    todo = list(reached)
    while todo:
        q = todo.pop()
        nexts = list(out_rules.get(q, ()))
        for other, q2 in apply_by_state.get(q, ()):
            if other in reached:
                nexts.append(q2)
        for q2 in nexts:
            if q2 not in reached:
                reached.add(q2)
                todo.append(q2)
    kept = tuple(sorted(reached))
    new = {q: i for i, q in enumerate(kept)}
    rules = {(new[s], l, new[d]) for s, l, d in a.rules if s in new and d in new}
    initial = {new[q] for q in a.initial}
    final = {new[q] for q in a.final if q in new}
    if is_sha:
        applies = {(new[x], new[y], new[z]) for x, y, z in a.apply_rules
                   if x in new and y in new and z in new}
        result = Sha(a.alphabet, len(kept), initial, final, rules, None,
                     {new[q] for q in a.tree_initial}, applies)
    else:
        result = Nfa(a.alphabet, len(kept), initial, final, rules)
    return result, kept


def _det_tables(a: Nfa):
    letters = {}
    for src, letter, dst in a.rules:
        if (src, letter) in letters:
            raise AutomatonError("iso_check needs deterministic automata")
        letters[(src, letter)] = dst
    applies = {}
    for q1, q, q2 in getattr(a, "apply_rules", ()):
        if (q1, q) in applies:
            raise AutomatonError("iso_check needs deterministic automata")
        applies[(q1, q)] = q2
    return letters, applies


def iso_check(a: Nfa, b: Nfa, max_states: int = 64) -> Optional[dict]:
    """State bijection between two deterministic accessible automata, or None.

    Parallel exploration from the initial (and tree-initial) states; for
    deterministic accessible automata the pairing is forced, so any conflict
    proves non-isomorphism.
    """
    for x in (a, b):
        if x.num_states > max_states:
            raise AutomatonError(f"iso_check limited to {max_states} states")
        if len(x.initial) > 1 or len(getattr(x, "tree_initial", ())) > 1:
            raise AutomatonError("iso_check needs deterministic automata")
    if a.alphabet.symbols != b.alphabet.symbols or a.num_states != b.num_states:
        return None
    if len(a.rules) != len(b.rules):
        return None
    if len(getattr(a, "apply_rules", ())) != len(getattr(b, "apply_rules", ())):
        return None
    let_a, app_a = _det_tables(a)
    let_b, app_b = _det_tables(b)
    fwd: dict = {}
    back: dict = {}
    queue: list = []

    def pair(x, y):
        if x is None or y is None:
            return x is None and y is None
        if x in fwd:
            return fwd[x] == y
        if y in back:
            return False
        fwd[x] = y
        back[y] = x
        queue.append(x)
        return True

    starts = [(a.initial, b.initial), (getattr(a, "tree_initial", frozenset()),
                                       getattr(b, "tree_initial", frozenset()))]
    for sa, sb in starts:
        if len(sa) != len(sb):
            return None
        if sa and not pair(next(iter(sa)), next(iter(sb))):
            return None
    done = []
    while queue:
        x = queue.pop(0)
        y = fwd[x]
        if (x in a.final) != (y in b.final):
            return None
        for letter in range(len(a.alphabet)):
            if not pair(let_a.get((x, letter)), let_b.get((y, letter))):
                return None
        done.append(x)
        for x2 in done:
            y2 = fwd[x2]
            if not pair(app_a.get((x, x2)), app_b.get((y, y2))):
                return None
            if not pair(app_a.get((x2, x)), app_b.get((y2, y))):
                return None
    if len(fwd) != a.num_states:
        return None
    return fwd
