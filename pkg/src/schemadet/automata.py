"""Core automaton values: alphabets, NFAs on words and stepwise hedge automata.

All values are immutable. States are dense integers ``0..num_states-1``;
letters inside rules are indices into the alphabet, so the alphabet order
fixes every iteration order downstream.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

RESERVED_TOKENS = ("<", ">")


class AutomatonError(ValueError):
    """Base class for all invalid-input errors raised by this package."""


class AlphabetMismatch(AutomatonError):
    pass


class NotDeterministic(AutomatonError):
    pass


class UnknownSymbol(AutomatonError):
    def __init__(self, symbol):
        super().__init__(f"unknown letter {symbol!r}")
        self.symbol = symbol


class Timeout(RuntimeError):
    """Raised by agenda loops when a caller-supplied deadline passes."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(symbols)
        index = {}
        for i, sym in enumerate(symbols):
            if not isinstance(sym, str) or not sym:
                raise AutomatonError(f"symbol must be a non-empty string, got {sym!r}")
            if sym in RESERVED_TOKENS:
                raise AutomatonError(f"{sym!r} is reserved for nested-word parentheses")
            if any(ch.isspace() or not ch.isprintable() for ch in sym):
                raise AutomatonError(f"symbol {sym!r} contains whitespace or unprintable characters")
            if sym in index:
                raise AutomatonError(f"duplicate symbol {sym!r}")
            index[sym] = i
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", index)

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, sym):
        return sym in self._index

    def index(self, sym: str) -> int:
        try:
            return self._index[sym]
        except KeyError:
            raise UnknownSymbol(sym) from None

    def extend(self, *extra: str) -> "Alphabet":
        return Alphabet(self.symbols + tuple(extra))


def _as_alphabet(alphabet) -> Alphabet:
    return alphabet if isinstance(alphabet, Alphabet) else Alphabet(alphabet)


@dataclass(frozen=True)
class RunStats:
    """Agenda/store counters of one construction run.

    ``rules_emitted`` counts every insertion attempt into the rule store,
    duplicates included, so it bounds the work spent on rules.
    """

    agenda_pushes: int = 0
    agenda_pops: int = 0
    rules_emitted: int = 0


class _Counter:
    # mutable twin of RunStats used inside the agenda loops
    __slots__ = ("pushes", "pops", "emitted")

    def __init__(self):
        self.pushes = self.pops = self.emitted = 0

    def freeze(self) -> RunStats:
        return RunStats(self.pushes, self.pops, self.emitted)


@dataclass(frozen=True)
class Nfa:
    """A finite automaton on words, possibly nondeterministic and partial."""

    alphabet: Alphabet
    num_states: int
    initial: frozenset
    final: frozenset
    rules: frozenset
    names: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", _as_alphabet(self.alphabet))
        for attr in ("initial", "final", "rules"):
            object.__setattr__(self, attr, frozenset(getattr(self, attr)))
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
        self._validate()

    def _check_state(self, q, what):
        if not isinstance(q, int) or not 0 <= q < self.num_states:
            raise AutomatonError(f"{what}: state {q!r} out of range 0..{self.num_states - 1}")

    def _validate(self):
        if self.num_states < 0:
            raise AutomatonError("negative state count")
        for q in self.initial:
            self._check_state(q, "initial")
        for q in self.final:
            self._check_state(q, "final")
        nsym = len(self.alphabet)
        for rule in self.rules:
            src, letter, dst = rule
            self._check_state(src, "rule source")
            self._check_state(dst, "rule target")
            if not isinstance(letter, int) or not 0 <= letter < nsym:
                raise AutomatonError(f"rule {rule!r}: letter index out of range")
        if self.names is not None and len(self.names) != self.num_states:
            raise AutomatonError("names must have one entry per state")

    @property
    def size(self) -> int:
        return self.num_states + len(self.rules)

    def successors(self) -> dict:
        """Map ``(state, letter index)`` to the tuple of target states."""
        table = self.__dict__.get("_succ")
        if table is None:
            acc: dict = {}
            for src, letter, dst in sorted(self.rules):
                acc.setdefault((src, letter), []).append(dst)
            table = {k: tuple(v) for k, v in acc.items()}
            object.__setattr__(self, "_succ", table)
        return table

    def state_name(self, q: int) -> str:
        return self.names[q] if self.names else str(q)

    def with_names(self, names) -> "Nfa":
        return Nfa(self.alphabet, self.num_states, self.initial, self.final, self.rules, names)


@dataclass(frozen=True)
class Sha(Nfa):
    """Stepwise hedge automaton: an NFA plus tree-initial states and apply rules.

    An apply rule ``(q1, q, q2)`` lets a hedge in state ``q1`` read a tree
    evaluated to ``q`` and continue in ``q2``.
    """

    tree_initial: frozenset = frozenset()
    apply_rules: frozenset = frozenset()

    def _validate(self):
        object.__setattr__(self, "tree_initial", frozenset(self.tree_initial))
        object.__setattr__(self, "apply_rules", frozenset(self.apply_rules))
        super()._validate()
        for q in self.tree_initial:
            self._check_state(q, "tree-initial")
        for rule in self.apply_rules:
            if len(rule) != 3:
                raise AutomatonError(f"apply rule {rule!r} is not a triple")
            for q in rule:
                self._check_state(q, "apply rule")

    @property
    def size(self) -> int:
        return self.num_states + len(self.rules) + len(self.apply_rules)

    def apply_successors(self) -> dict:
        """Map ``(q1, q)`` to the tuple of states ``q2`` with ``(q1, q, q2)``."""
        table = self.__dict__.get("_apply")
        if table is None:
            acc: dict = {}
            for q1, q, q2 in sorted(self.apply_rules):
                acc.setdefault((q1, q), []).append(q2)
            table = {k: tuple(v) for k, v in acc.items()}
            object.__setattr__(self, "_apply", table)
        return table

    def with_names(self, names) -> "Sha":
        return Sha(self.alphabet, self.num_states, self.initial, self.final, self.rules,
                   names, self.tree_initial, self.apply_rules)

    def word_part(self) -> Nfa:
        return Nfa(self.alphabet, self.num_states, self.initial, self.final, self.rules, self.names)


Automaton = Union[Nfa, Sha]


def make_nfa(alphabet, num_states, initial, final, rules, names=None) -> Nfa:
    """Build an NFA from rules written with symbol names, e.g. ``(0, "a", 1)``."""
    alphabet = _as_alphabet(alphabet)
    encoded = {(s, alphabet.index(a) if isinstance(a, str) else a, d) for s, a, d in rules}
    return Nfa(alphabet, num_states, initial, final, encoded, names)


def make_sha(alphabet, num_states, initial, final, rules, tree_initial=(), apply_rules=(),
             names=None) -> Sha:
    alphabet = _as_alphabet(alphabet)
    encoded = {(s, alphabet.index(a) if isinstance(a, str) else a, d) for s, a, d in rules}
    return Sha(alphabet, num_states, initial, final, encoded, names, tree_initial, apply_rules)


def as_sha(a: Nfa) -> Sha:
    """Embed an NFA as a SHA without apply rules and tree-initial states."""
    if isinstance(a, Sha):
        return a
    return Sha(a.alphabet, a.num_states, a.initial, a.final, a.rules, a.names)


def empty_like(alphabet, kind=Nfa):
    if kind is Sha:
        return Sha(alphabet, 0, (), (), ())
    return Nfa(alphabet, 0, (), (), ())


def check_same_alphabet(a: Nfa, s: Nfa):
    if a.alphabet.symbols != s.alphabet.symbols:
        raise AlphabetMismatch(
            f"alphabets differ: {list(a.alphabet.symbols)} vs {list(s.alphabet.symbols)}")


def encode_word(a: Nfa, w) -> list:
    if isinstance(w, str):
        w = w.split()
    return [a.alphabet.index(sym) for sym in w]


def run_word(a: Nfa, start: Iterable[int], w: Union[str, Sequence[str]]) -> frozenset:
    """States reachable from ``start`` by reading ``w``.

    ``w`` is a sequence of symbols; a plain string is split on whitespace.
    """
    letters = encode_word(a, w)
    succ = a.successors()
    current = set(start)
    for letter in letters:
        nxt = set()
        for q in current:
            nxt.update(succ.get((q, letter), ()))
        current = nxt
    return frozenset(current)


def accepts(a: Nfa, w) -> bool:
    return not run_word(a, a.initial, w).isdisjoint(a.final)


def is_deterministic(a: Nfa) -> bool:
    if len(a.initial) > 1:
        return False
    seen = set()
    for src, letter, _ in a.rules:
        if (src, letter) in seen:
            return False
        seen.add((src, letter))
    return True


def require_deterministic_schema(s: Nfa):
    from .hedges import is_deterministic_sha

    ok = is_deterministic_sha(s) if isinstance(s, Sha) else is_deterministic(s)
    if not ok:
        raise NotDeterministic("schema must be deterministic")


def relabel(a: Automaton, keys: Sequence) -> Automaton:
    """Rename states so that state ``i`` becomes the rank of ``keys[i]``.

    Used to compare automata built in different discovery orders; keys must
    be distinct and mutually comparable.
    """
    order = sorted(range(a.num_states), key=lambda i: keys[i])
    new_id = [0] * a.num_states
    for rank, old in enumerate(order):
        new_id[old] = rank
    names = None
    if a.names is not None:
        names = tuple(a.names[old] for old in order)
    initial = {new_id[q] for q in a.initial}
    final = {new_id[q] for q in a.final}
    rules = {(new_id[s], l, new_id[d]) for s, l, d in a.rules}
    if isinstance(a, Sha):
        return Sha(a.alphabet, a.num_states, initial, final, rules, names,
                   {new_id[q] for q in a.tree_initial},
                   {(new_id[x], new_id[y], new_id[z]) for x, y, z in a.apply_rules})
    return Nfa(a.alphabet, a.num_states, initial, final, rules, names)


def subset_label(subset, names=None) -> str:
    spell = str if names is None else names.__getitem__
    return "{" + ",".join(spell(q) for q in subset) + "}"
