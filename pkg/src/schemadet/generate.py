"""Seeded random automata for property checks.

``density`` is the probability that a given source key, a (state, letter)
pair for internal rules or a (state, state) pair for apply rules, has any
rule at all. Nondeterministic keys then get between one and three targets;
deterministic ones get exactly one.
"""
from __future__ import annotations

import random
from typing import Sequence

from .automata import Alphabet, Nfa, Sha


def _alphabet(num_letters: int) -> Alphabet:
    return Alphabet("abcdefghijklmnopqrstuvw"[i] for i in range(num_letters))


def _targets(rng, n, deterministic):
    if deterministic:
        return [rng.randrange(n)]
    return rng.sample(range(n), rng.randint(1, min(3, n)))


def _subset(rng, n, p):
    return {q for q in range(n) if rng.random() < p}


def random_nfa(rng: random.Random, num_states: int, alphabet, density: float,
               deterministic: bool = False) -> Nfa:
    alphabet = _alphabet(alphabet) if isinstance(alphabet, int) else Alphabet(alphabet)
    n = num_states
    rules = set()
    for q in range(n):
        for letter in range(len(alphabet)):
            if rng.random() < density:
                rules.update((q, letter, t) for t in _targets(rng, n, deterministic))
    if deterministic:
        initial = {rng.randrange(n)} if n and rng.random() < 0.95 else set()
    else:
        initial = _subset(rng, n, 0.35) if n else set()
        if n and not initial and rng.random() < 0.9:
            initial = {rng.randrange(n)}
    final = _subset(rng, n, 0.4)
    return Nfa(alphabet, n, initial, final, rules)


def random_sha(rng: random.Random, num_states: int, alphabet, density: float,
               apply_density: float, deterministic: bool = False) -> Sha:
    word = random_nfa(rng, num_states, alphabet, density, deterministic)
    n = num_states
    applies = set()
    for q1 in range(n):
        for q in range(n):
            if rng.random() < apply_density:
                applies.update((q1, q, t) for t in _targets(rng, n, deterministic))
    if deterministic:
        tree_initial = {rng.randrange(n)} if n and rng.random() < 0.95 else set()
    else:
        tree_initial = _subset(rng, n, 0.35) if n else set()
        if n and not tree_initial and rng.random() < 0.9:
            tree_initial = {rng.randrange(n)}
    return Sha(word.alphabet, n, word.initial, word.final, word.rules, None, tree_initial, applies)


WORD_DENSITIES: Sequence[float] = (0.2, 0.5, 0.8)


def word_instances(seed: int, count: int, max_states: int = 6, max_letters: int = 3):
    """Yield ``(nfa, dfa_schema)`` pairs, sweeping the rule density."""
    rng = random.Random(seed)
    for k in range(count):
        density = WORD_DENSITIES[k % len(WORD_DENSITIES)]
        nl = rng.randint(1, max_letters)
        a = random_nfa(rng, rng.randint(0, max_states), nl, density)
        s = random_nfa(rng, rng.randint(1, max_states), nl, rng.choice(WORD_DENSITIES),
                       deterministic=True)
        yield a, s


def hedge_instances(seed: int, count: int, max_states: int = 5, max_letters: int = 2):
    """Yield ``(sha, dsha_schema)`` pairs, sweeping the apply-rule density."""
    rng = random.Random(seed)
    for k in range(count):
        apply_density = WORD_DENSITIES[k % len(WORD_DENSITIES)]
        nl = rng.randint(1, max_letters)
        a = random_sha(rng, rng.randint(0, max_states), nl, rng.choice(WORD_DENSITIES),
                       apply_density)
        s = random_sha(rng, rng.randint(1, max_states), nl, rng.choice(WORD_DENSITIES),
                       rng.choice(WORD_DENSITIES), deterministic=True)
        yield a, s
