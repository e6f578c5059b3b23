"""Randomized invariant suite shared by ``schemadet check`` and the tests.

Each ``check_*`` function takes one instance and returns ``None`` when the
property holds, or a short failure description. Constructions are looked up
through their modules at call time, so a test can monkeypatch a broken
construction in and watch the suite catch it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, List, Optional

from . import hedges, words
from .automata import Nfa, Sha, as_sha
from .formats import format_nested_word, format_word, serialize_automaton
from .generate import hedge_instances, word_instances
from .oracle import EnumerationBound, accessible_part, find_violation, iso_check, naive_determinize

NAIVE_LIMIT = 7


def _ops(a: Nfa):
    """Construction functions for the kind of ``a``."""
    if isinstance(a, Sha):
        return (hedges.determinize_sha, hedges.product_sha, hedges.schema_clean_sha,
                hedges.schema_determinize_sha)
    return words.determinize, words.product, words.schema_clean, words.schema_determinize


def _show(a: Nfa, h) -> str:
    if isinstance(a, Sha):
        return "<" + format_nested_word(h) + ">" if h else "<empty hedge>"
    return "<" + format_word(h) + ">" if h else "<empty word>"


def _violation(automata, predicate, bound, what) -> Optional[str]:
    witness = find_violation(automata, predicate, bound)
    if witness is None:
        return None
    return f"{what} on input {_show(automata[0], witness)}"


def check_det_soundness(a, s, bound) -> Optional[str]:
    det = _ops(a)[0](a).automaton
    return _violation([a, det], lambda x, y: x == y, bound, "det changes the language")


def check_det_accessible(a, s, bound) -> Optional[str]:
    det = _ops(a)[0](a).automaton
    kept = accessible_part(det)[1]
    if len(kept) != det.num_states:
        return f"det has {det.num_states - len(kept)} inaccessible states"
    return None


def check_det_naive(a, s, bound) -> Optional[str]:
    if a.num_states > NAIVE_LIMIT:
        return None
    det = _ops(a)[0](a).automaton
    naive = accessible_part(naive_determinize(a))[0]
    if iso_check(det, naive, max_states=1 << NAIVE_LIMIT) is None:
        return "det is not isomorphic to the accessible naive powerset automaton"
    return None


def check_agenda(a, s, bound) -> Optional[str]:
    det_op, prod_op, _, sdet_op = _ops(a)
    det = det_op(a)
    if det.stats.agenda_pushes != det.automaton.num_states:
        return f"det pushed {det.stats.agenda_pushes} times for {det.automaton.num_states} states"
    prod = prod_op(a, s)
    if prod.stats.agenda_pushes != prod.automaton.num_states:
        return f"product pushed {prod.stats.agenda_pushes} times for {prod.automaton.num_states} states"
    sdet = sdet_op(a, s)
    pairs = sdet.alignments.pairs
    if sdet.stats.agenda_pushes != len(pairs) or len(set(pairs)) != len(pairs):
        return f"sdet pushed {sdet.stats.agenda_pushes} times for {len(pairs)} alignments"
    if len({i for i, _ in pairs}) != sdet.automaton.num_states:
        return "sdet has states without an alignment"
    return None


def check_product_language(a, s, bound) -> Optional[str]:
    prod = _ops(a)[1](a, s).automaton
    return _violation([prod, a, s], lambda p, x, y: p == (x and y), bound,
                      "product is not the intersection")


def check_clean_containment(a, s, bound) -> Optional[str]:
    clean = _ops(a)[2](a, s)
    c, origin = clean.automaton, clean.origin
    up = origin.__getitem__
    if any(not 0 <= q < a.num_states for q in origin) or list(origin) != sorted(set(origin)):
        return "cleaning origin is not an ascending subset of the states"
    if not set(map(up, c.initial)) <= a.initial or not set(map(up, c.final)) <= a.final:
        return "cleaning invented initial or final states"
    if not {(up(x), l, up(y)) for x, l, y in c.rules} <= a.rules:
        return "cleaning invented rules"
    if isinstance(a, Sha):
        if not set(map(up, c.tree_initial)) <= a.tree_initial:
            return "cleaning invented tree-initial states"
        if not {tuple(map(up, r)) for r in c.apply_rules} <= a.apply_rules:
            return "cleaning invented apply rules"
    if c.size > a.size:
        return "cleaning enlarged the automaton"
    return None


def check_clean_preservation(a, s, bound) -> Optional[str]:
    c = _ops(a)[2](a, s).automaton
    return _violation([c, a, s], lambda x, y, z: not z or x == y, bound,
                      "cleaning changes the language inside the schema")


def check_clean_idempotent(a, s, bound) -> Optional[str]:
    clean = _ops(a)[2]
    once = clean(a, s).automaton
    twice = clean(once, s).automaton
    if serialize_automaton(once) != serialize_automaton(twice):
        return "cleaning twice differs from cleaning once"
    return None


def schema_det_pair(a, s):
    """Canonical serializations of det_S(a) and of scl_S(det(a))."""
    det_op, _, clean_op, sdet_op = _ops(a)
    sdet = sdet_op(a, s)
    direct = serialize_automaton(words.canonical(sdet.automaton, sdet.alignments.subsets))
    det = det_op(a)
    clean = clean_op(det.automaton, s)
    labels = [det.subsets[q] for q in clean.origin]
    composed = serialize_automaton(words.canonical(clean.automaton, labels))
    return direct, composed


def check_schema_det(a, s, bound) -> Optional[str]:
    direct, composed = schema_det_pair(a, s)
    if direct != composed:
        return "det_S(A) differs from scl_S(det(A))\n--- det_S\n" + direct + "--- scl_S(det)\n" + composed
    return None


def check_det_product_commute(a, s, bound) -> Optional[str]:
    det_op, prod_op, _, _ = _ops(a)
    prod = prod_op(a, s)
    left = det_op(prod.automaton)
    det = det_op(a)
    right = prod_op(det.automaton, s)
    mapping = iso_check(left.automaton, right.automaton, max_states=10 ** 6)
    if mapping is None:
        return "det(A x S) is not isomorphic to det(A) x S"
    det_id = {sub: i for i, sub in enumerate(det.subsets)}
    right_id = {pair: i for i, pair in enumerate(right.pairs)}
    for i, sub in enumerate(left.subsets):
        pairs = [prod.pairs[k] for k in sub]
        schema_states = {t for _, t in pairs}
        if len(schema_states) != 1:
            return "a subset of pairs mixes schema states"
        key = (det_id.get(tuple(sorted({q for q, _ in pairs}))), schema_states.pop())
        if right_id.get(key) != mapping[i]:
            return "the isomorphism is not the subset-pairing map"
    return None


def check_embedding(a, s, bound) -> Optional[str]:
    """Word constructions agree with the SHA ones on embedded NFAs."""
    if isinstance(a, Sha):
        return None
    ea, es = as_sha(a), as_sha(s)
    pairs = [
        (words.determinize(a).automaton, hedges.determinize_sha(ea).automaton, "det"),
        (words.product(a, s).automaton, hedges.product_sha(ea, es).automaton, "product"),
        (words.schema_clean(a, s).automaton, hedges.schema_clean_sha(ea, es).automaton, "clean"),
        (words.schema_determinize(a, s).automaton, hedges.schema_determinize_sha(ea, es).automaton,
         "sdet"),
    ]
    for word_result, sha_result, name in pairs:
        if serialize_automaton(as_sha(word_result)) != serialize_automaton(sha_result):
            return f"SHA {name} differs from the word {name} on an embedded NFA"
    return None


CHECKS: dict = {
    "det-soundness": check_det_soundness,
    "det-accessible": check_det_accessible,
    "det-vs-naive": check_det_naive,
    "agenda-discipline": check_agenda,
    "product-language": check_product_language,
    "clean-containment": check_clean_containment,
    "clean-preservation": check_clean_preservation,
    "clean-idempotence": check_clean_idempotent,
    "schema-det-equality": check_schema_det,
    "det-product-commute": check_det_product_commute,
    "sha-embedding": check_embedding,
}


@dataclass
class Failure:
    check: str
    domain: str
    instance: int
    detail: str
    automaton: str
    schema: str

    def format(self) -> str:
        return (f"FAIL {self.check} [{self.domain} #{self.instance}]: {self.detail}\n"
                f"--- automaton\n{self.automaton}--- schema\n{self.schema}")


@dataclass
class Report:
    seed: int
    count: int
    tallies: dict = field(default_factory=dict)
    failures: List[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def format(self) -> str:
        lines = [f"seed {self.seed}, {self.count} instances per domain"]
        for (domain, name), (passed, failed) in self.tallies.items():
            status = "ok" if not failed else "FAIL"
            lines.append(f"{domain:6} {name:20} {passed:5} passed {failed:3} failed  {status}")
        for failure in self.failures[:5]:
            lines.append(failure.format())
        if len(self.failures) > 5:
            lines.append(f"... {len(self.failures) - 5} more failures")
        lines.append("all checks passed" if self.ok else f"{len(self.failures)} failures")
        return "\n".join(lines)


def run_checks(seed: int = 0, count: int = 100, bound: EnumerationBound = EnumerationBound(),
               domains=("words", "hedges"), checks: Optional[dict] = None,
               max_states: Optional[int] = None,
               progress: Optional[Callable[[str], None]] = None) -> Report:
    """Run every check on ``count`` seeded random instances per domain."""
    checks = CHECKS if checks is None else checks
    report = Report(seed, count)
    sources = {
        "words": lambda: word_instances(seed, count, **({"max_states": max_states} if max_states else {})),
        "hedges": lambda: hedge_instances(seed, count, **({"max_states": max_states} if max_states else {})),
    }
    for domain in domains:
        for name in checks:
            report.tallies[(domain, name)] = [0, 0]
        for k, (a, s) in enumerate(sources[domain]()):
            for name, check in checks.items():
                detail = check(a, s, bound)
                tally = report.tallies[(domain, name)]
                if detail is None:
                    tally[0] += 1
                else:
                    tally[1] += 1
                    report.failures.append(Failure(name, domain, k, detail,
                                                   serialize_automaton(a), serialize_automaton(s)))
        if progress:
            progress(domain)
    return report
