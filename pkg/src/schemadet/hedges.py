"""Nested words and stepwise hedge automata (SHAs).

A nested word (hedge) is a tuple of items; an item is either a letter
(a symbol string) or a :class:`Tree` wrapping an inner hedge. Tuple
concatenation is the hedge concatenation, so every abstract nested word has
exactly one representation.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .automata import (
    Sha,
    UnknownSymbol,
    _Counter,
    check_same_alphabet,
    require_deterministic_schema,
)
from .kernels import get_kernel
from .words import (
    AlignmentMap,
    CleanResult,
    DetResult,
    ProductResult,
    Projection,
    SchemaDetResult,
    _carry_names,
    _check_deadline,
)


@dataclass(frozen=True)
class Tree:
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))

    def __repr__(self):
        return f"Tree({self.children!r})"


def tree(*items) -> Tree:
    return Tree(tuple(items))


def hedge_letters(h) -> Iterable[str]:
    for item in h:
        if isinstance(item, Tree):
            yield from hedge_letters(item.children)
        else:
            yield item


def hedge_size(h) -> int:
    """Number of items, counting trees and their contents recursively."""
    return sum(1 + hedge_size(item.children) if isinstance(item, Tree) else 1 for item in h)


def hedge_depth(h) -> int:
    return max((1 + hedge_depth(item.children) for item in h if isinstance(item, Tree)), default=0)


def eval_hedge(a: Sha, start, h) -> frozenset:
    """States reachable from ``start`` by reading the hedge ``h``.

    A tree item is evaluated from the tree-initial states; the resulting
    states then drive the apply rules from every current state.
    """
    succ = a.successors()
    apply = a.apply_successors()
    alphabet = a.alphabet

    def run(current, items):
        for item in items:
            if isinstance(item, Tree):
                inner = run(set(a.tree_initial), item.children)
                nxt = set()
                if inner:
                    for q1 in current:
                        for q in inner:
                            nxt.update(apply.get((q1, q), ()))
            else:
                if item not in alphabet:
                    raise UnknownSymbol(item)
                letter = alphabet.index(item)
                nxt = set()
                for q in current:
                    nxt.update(succ.get((q, letter), ()))
            current = nxt
        return current

    return frozenset(run(set(start), h))


def accepts_nested(a: Sha, h) -> bool:
    return not eval_hedge(a, a.initial, h).isdisjoint(a.final)


def is_deterministic_sha(a: Sha) -> bool:
    if len(a.initial) > 1 or len(getattr(a, "tree_initial", ())) > 1:
        return False
    seen = set()
    for src, letter, _ in a.rules:
        if (src, letter) in seen:
            return False
        seen.add((src, letter))
    seen = set()
    for q1, q, _ in getattr(a, "apply_rules", ()):
        if (q1, q) in seen:
            return False
        seen.add((q1, q))
    return True


def determinize_sha(a: Sha, *, backend: Optional[str] = None,
                    deadline: Optional[float] = None) -> DetResult:
    """Accessible determinization of a SHA.

    Besides the word rules, every popped subset is combined with every stored
    subset (itself included) in both argument orders of the apply rules.
    """
    counter = _Counter()
    kernel = get_kernel(backend)(a.num_states, len(a.alphabet), a.rules, a.apply_rules)
    store: dict = {}
    agenda: list = []
    rules: set = set()
    applies: set = set()

    def intern(subset):
        idx = store.get(subset)
        if idx is None:
            idx = store[subset] = kernel.add(subset)
            agenda.append(idx)
            counter.pushes += 1
        return idx

    initial = {intern(tuple(sorted(a.initial)))} if a.initial else set()
    tree_initial = {intern(tuple(sorted(a.tree_initial)))} if a.tree_initial else set()
    while agenda:
        _check_deadline(deadline)
        i = agenda.pop()
        counter.pops += 1
        for letter, image in kernel.letter_images(i):
            counter.emitted += 1
            rules.add((i, letter, intern(image)))
        for j, fwd, bwd in kernel.apply_row(i, len(kernel)):
            if fwd:
                counter.emitted += 1
                applies.add((i, j, intern(fwd)))
            if bwd and j != i:
                counter.emitted += 1
                applies.add((j, i, intern(bwd)))

    subsets = tuple(store)
    final = {i for i, sub in enumerate(subsets) if not a.final.isdisjoint(sub)}
    result = Sha(a.alphabet, len(subsets), initial, final, rules, None, tree_initial, applies)
    return DetResult(result, subsets, counter.freeze())


def product_sha(a: Sha, s: Sha, *, deadline: Optional[float] = None) -> ProductResult:
    """Accessible product of two SHAs, apply rules included."""
    check_same_alphabet(a, s)
    counter = _Counter()
    succ_a, succ_s = a.successors(), s.successors()
    app_a, app_s = a.apply_successors(), s.apply_successors()
    nletters = len(a.alphabet)
    store: dict = {}
    order: list = []
    agenda: list = []
    rules: set = set()
    applies: set = set()

    def intern(pair):
        idx = store.get(pair)
        if idx is None:
            idx = store[pair] = len(order)
            order.append(pair)
            agenda.append(pair)
            counter.pushes += 1
        return idx

    def combine(left, right):
        # apply rules (left) @ (right) -> (q2, s2)
        (q1, s1), (q, t) = left, right
        targets_a = app_a.get((q1, q))
        if not targets_a:
            return
        for s2 in app_s.get((s1, t), ()):
            for q2 in targets_a:
                counter.emitted += 1
                applies.add((store[left], store[right], intern((q2, s2))))

    initial = {intern((q, t)) for q in sorted(a.initial) for t in sorted(s.initial)}
    tree_initial = {intern((q, t)) for q in sorted(a.tree_initial) for t in sorted(s.tree_initial)}
    while agenda:
        _check_deadline(deadline)
        pair = agenda.pop()
        counter.pops += 1
        q1, s1 = pair
        src = store[pair]
        for letter in range(nletters):
            targets_a = succ_a.get((q1, letter))
            if not targets_a:
                continue
            for s2 in succ_s.get((s1, letter), ()):
                for q2 in targets_a:
                    counter.emitted += 1
                    rules.add((src, letter, intern((q2, s2))))
        if app_a and app_s:
            for k in range(len(order)):
                other = order[k]
                combine(pair, other)
                if other != pair:
                    combine(other, pair)

    final = {i for i, (q, t) in enumerate(order) if q in a.final and t in s.final}
    result = Sha(a.alphabet, len(order), initial, final, rules, None, tree_initial, applies)
    return ProductResult(result, tuple(order), counter.freeze())


def project_sha(p: Sha, pairs) -> Projection:
    origin = tuple(sorted({q for q, _ in pairs}))
    new_id = {q: i for i, q in enumerate(origin)}
    first = [new_id[q] for q, _ in pairs]
    result = Sha(
        p.alphabet,
        len(origin),
        {first[i] for i in p.initial},
        {first[i] for i in p.final},
        {(first[x], letter, first[y]) for x, letter, y in p.rules},
        None,
        {first[i] for i in p.tree_initial},
        {(first[x], first[y], first[z]) for x, y, z in p.apply_rules},
    )
    return Projection(result, origin)


def schema_clean_sha(a: Sha, s: Sha, *, deadline: Optional[float] = None) -> CleanResult:
    check_same_alphabet(a, s)
    require_deterministic_schema(s)
    prod = product_sha(a, s, deadline=deadline)
    proj = project_sha(prod.automaton, prod.pairs)
    return CleanResult(_carry_names(a, proj.automaton, proj.origin), proj.origin, prod.stats)


def schema_determinize_sha(a: Sha, s: Sha, *, backend: Optional[str] = None,
                           deadline: Optional[float] = None) -> SchemaDetResult:
    """Schema-based determinization of a SHA against a deterministic SHA schema.

    Agenda entries are alignments ``(subset, schema state)``. Apply rules are
    explored only where the schema has the matching apply rule, which is
    what keeps unaligned subsets from ever being built.
    """
    check_same_alphabet(a, s)
    require_deterministic_schema(s)
    counter = _Counter()
    kernel = get_kernel(backend)(a.num_states, len(a.alphabet), a.rules, a.apply_rules)
    succ_s = s.successors()
    app_s = s.apply_successors()
    subset_ids: dict = {}
    store: dict = {}
    order: list = []
    agenda: list = []
    rules: set = set()
    applies: set = set()
    letter_cache: dict = {}
    apply_cache: dict = {}

    def subset_id(subset):
        idx = subset_ids.get(subset)
        if idx is None:
            idx = subset_ids[subset] = kernel.add(subset)
        return idx

    def align(i, state):
        if (i, state) not in store:
            store[(i, state)] = len(order)
            order.append((i, state))
            agenda.append((i, state))
            counter.pushes += 1

    def apply_image(i, j):
        key = (i, j)
        image = apply_cache.get(key)
        if image is None:
            image = apply_cache[key] = kernel.apply_image(i, j)
        return image

    def combine(left, right):
        (i, s1), (j, t) = left, right
        targets = app_s.get((s1, t))
        if not targets:
            return
        image = apply_image(i, j)
        if not image:
            return
        k = subset_id(image)
        for s2 in targets:
            counter.emitted += 1
            applies.add((i, j, k))
            align(k, s2)

    initial = set()
    tree_initial = set()
    if a.initial and s.initial:
        (s0,) = s.initial
        init = subset_id(tuple(sorted(a.initial)))
        initial.add(init)
        align(init, s0)
    if a.tree_initial and s.tree_initial:
        (t0,) = s.tree_initial
        tinit = subset_id(tuple(sorted(a.tree_initial)))
        tree_initial.add(tinit)
        align(tinit, t0)

    while agenda:
        _check_deadline(deadline)
        entry = agenda.pop()
        counter.pops += 1
        i, s1 = entry
        row = letter_cache.get(i)
        if row is None:
            row = letter_cache[i] = kernel.letter_images(i)
        for letter, image in row:
            for s2 in succ_s.get((s1, letter), ()):
                j = subset_id(image)
                counter.emitted += 1
                rules.add((i, letter, j))
                align(j, s2)
        if app_s and a.apply_rules:
            for k in range(len(order)):
                other = order[k]
                combine(entry, other)
                if other != entry:
                    combine(other, entry)

    subsets = tuple(subset_ids)
    final = {i for i, t in order if t in s.final and not a.final.isdisjoint(subsets[i])}
    result = Sha(a.alphabet, len(subsets), initial, final, rules, None, tree_initial, applies)
    return SchemaDetResult(result, AlignmentMap(subsets, tuple(order)), counter.freeze())
