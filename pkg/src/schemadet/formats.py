"""Textual automaton files, nested-word syntax and DOT export.

Automaton file grammar (one directive per line, ``#`` starts a comment)::

    nfa | sha
    alphabet <symbol>...
    states <id>...            # exactly 0..n-1, any order
    initial <id>...
    final <id>...
    treeinit <id>...          # sha only, optional
    rule <src> <symbol> <dst>
    apply <q1> <q> <q2>       # sha only
    # name <id> <label>       # optional display name

Serialization is canonical: states ascending, rules sorted by
(source, letter index, target), apply rules sorted lexicographically.
"""
from __future__ import annotations

from .automata import Alphabet, AutomatonError, Nfa, Sha
from .hedges import Tree


class ParseError(AutomatonError):
    def __init__(self, message, line=None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line


_SECTIONS = ("alphabet", "states", "initial", "final", "treeinit")


def _int(token, lineno):
    if not token.isdigit():
        raise ParseError(f"expected a state id, got {token!r}", lineno)
    return int(token)


def parse_automaton(text: str):
    kind = None
    sections: dict = {}
    rules = []
    applies = []
    names: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split(None, 2)
            if len(parts) == 3 and parts[0] == "name":
                names[_int(parts[1], lineno)] = (parts[2], lineno)
            continue
        tokens = line.split()
        for k, token in enumerate(tokens):
            if token.startswith("#"):
                tokens = tokens[:k]
                break
        head, args = tokens[0], tokens[1:]
        if kind is None:
            if head not in ("nfa", "sha") or args:
                raise ParseError("file must start with 'nfa' or 'sha'", lineno)
            kind = head
            continue
        if head in _SECTIONS:
            if head in sections:
                raise ParseError(f"duplicate section {head!r}", lineno)
            if head == "treeinit" and kind != "sha":
                raise ParseError("'treeinit' is only allowed in sha files", lineno)
            sections[head] = (args, lineno)
        elif head == "rule":
            if len(args) != 3:
                raise ParseError("rule needs <src> <symbol> <dst>", lineno)
            rules.append((args, lineno))
        elif head == "apply":
            if kind != "sha":
                raise ParseError("'apply' is only allowed in sha files", lineno)
            if len(args) != 3:
                raise ParseError("apply needs <q1> <q> <q2>", lineno)
            applies.append((args, lineno))
        else:
            raise ParseError(f"unknown section {head!r}", lineno)
    if kind is None:
        raise ParseError("empty automaton file")
    for required in ("alphabet", "states", "initial", "final"):
        if required not in sections:
            raise ParseError(f"missing section {required!r}")

    sym_tokens, lineno = sections["alphabet"]
    for sym in sym_tokens:
        if sym in ("<", ">"):
            raise ParseError(f"reserved token {sym!r} used as a symbol", lineno)
    try:
        alphabet = Alphabet(sym_tokens)
    except AutomatonError as exc:
        raise ParseError(str(exc), lineno) from None

    state_tokens, lineno = sections["states"]
    states = [_int(t, lineno) for t in state_tokens]
    n = len(states)
    if sorted(states) != list(range(n)):
        raise ParseError("states must be exactly 0..n-1 without duplicates", lineno)

    def state(token, lineno):
        q = _int(token, lineno)
        if q >= n:
            raise ParseError(f"dangling state reference {q}", lineno)
        return q

    def state_set(section):
        if section not in sections:
            return set()
        tokens, lineno = sections[section]
        return {state(t, lineno) for t in tokens}

    rule_set = set()
    for (src, sym, dst), lineno in rules:
        if sym not in alphabet:
            raise ParseError(f"unknown symbol {sym!r}", lineno)
        rule = (state(src, lineno), alphabet.index(sym), state(dst, lineno))
        if rule in rule_set:
            raise ParseError("duplicate rule", lineno)
        rule_set.add(rule)
    apply_set = set()
    for triple, lineno in applies:
        rule = tuple(state(t, lineno) for t in triple)
        if rule in apply_set:
            raise ParseError("duplicate apply rule", lineno)
        apply_set.add(rule)

    name_tuple = None
    if names:
        for q, (_, lineno) in names.items():
            if q >= n:
                raise ParseError(f"dangling state reference {q}", lineno)
        name_tuple = tuple(names[q][0] if q in names else str(q) for q in range(n))

    initial, final = state_set("initial"), state_set("final")
    if kind == "sha":
        return Sha(alphabet, n, initial, final, rule_set, name_tuple, state_set("treeinit"), apply_set)
    return Nfa(alphabet, n, initial, final, rule_set, name_tuple)


def _ids(states):
    return "".join(f" {q}" for q in sorted(states))


def serialize_automaton(a: Nfa) -> str:
    is_sha = isinstance(a, Sha)
    for sym in a.alphabet:
        if sym.startswith("#"):
            raise AutomatonError(f"symbol {sym!r} cannot be written: '#' starts a comment")
    lines = ["sha" if is_sha else "nfa"]
    lines.append("alphabet" + "".join(f" {sym}" for sym in a.alphabet))
    lines.append("states" + _ids(range(a.num_states)))
    lines.append("initial" + _ids(a.initial))
    lines.append("final" + _ids(a.final))
    if is_sha:
        lines.append("treeinit" + _ids(a.tree_initial))
    symbols = a.alphabet.symbols
    for src, letter, dst in sorted(a.rules):
        lines.append(f"rule {src} {symbols[letter]} {dst}")
    if is_sha:
        for q1, q, q2 in sorted(a.apply_rules):
            lines.append(f"apply {q1} {q} {q2}")
    if a.names is not None:
        for q, name in enumerate(a.names):
            lines.append(f"# name {q} {name}")
    return "\n".join(lines) + "\n"


def parse_word(text: str) -> tuple:
    return tuple(text.split())


def format_word(w) -> str:
    return " ".join(w)


def parse_nested_word(text: str) -> tuple:
    """Parse whitespace-separated tokens; ``<`` opens a tree, ``>`` closes it."""
    stack = [[]]
    opened = []
    for pos, token in enumerate(text.split()):
        if token == "<":
            stack.append([])
            opened.append(pos)
        elif token == ">":
            if len(stack) == 1:
                raise ParseError(f"unbalanced '>' at token {pos}")
            children = stack.pop()
            opened.pop()
            stack[-1].append(Tree(tuple(children)))
        else:
            stack[-1].append(token)
    if opened:
        raise ParseError(f"unbalanced '<' at token {opened[-1]}")
    return tuple(stack[0])


def format_nested_word(h) -> str:
    out = []

    def walk(items):
        for item in items:
            if isinstance(item, Tree):
                out.append("<")
                walk(item.children)
                out.append(">")
            else:
                out.append(item)

    walk(h)
    return " ".join(out)


def _dot_quote(text) -> str:
    return '"' + str(text).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(a: Nfa, name: str = "automaton") -> str:
    """Graphviz rendering: letter edges in black, apply edges blue and dashed,
    labeled by the state of the consumed tree. Final states are double circles.
    """
    lines = [f"digraph {_dot_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    tree_initial = a.tree_initial if isinstance(a, Sha) else frozenset()
    for q in range(a.num_states):
        shape = "doublecircle" if q in a.final else "circle"
        lines.append(f"  q{q} [label={_dot_quote(a.state_name(q))}, shape={shape}];")
    for q in sorted(a.initial):
        lines.append(f"  init{q} [shape=point];")
        lines.append(f"  init{q} -> q{q};")
    for q in sorted(tree_initial):
        lines.append(f"  tinit{q} [shape=point];")
        lines.append(f'  tinit{q} -> q{q} [label="<>"];')
    symbols = a.alphabet.symbols
    for src, letter, dst in sorted(a.rules):
        lines.append(f"  q{src} -> q{dst} [label={_dot_quote(symbols[letter])}];")
    if isinstance(a, Sha):
        for q1, q, q2 in sorted(a.apply_rules):
            lines.append(f"  q{q1} -> q{q2} [label={_dot_quote(a.state_name(q))}, "
                         f"color=blue, style=dashed, class=apply];")
    lines.append("}")
    return "\n".join(lines) + "\n"
