"""Size benchmark: det(A), det(A x S) and det_S(A) on a synthetic query family.

The family ``descendant_query(n)`` is a nondeterministic SHA over
``{a, b, x, not-x}`` selecting the nodes marked ``x`` that have a descendant
``a`` which is the n-th item from the end of its sibling list. It is a
stand-in built for this benchmark, not a compiled XPath query. Like most
query automata it does not check that exactly one node is marked; that is
left to the schema ``S = one_x_sha({a, b})``.

Guessing "n-th from the end" costs 2^n subsets in det(A). The schema-based
construction skips the subsets that only arise in hedges with zero or several
marked nodes, so det_S(A) stays smaller on every row.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .automata import RunStats, Sha, Timeout, make_sha
from .hedges import determinize_sha, product_sha, schema_determinize_sha
from .queries import NOT_X, X, one_x_sha

SIGMA = ("a", "b")
COLUMNS = ("A", "det(A)", "det(AxS)", "det_S(A)")


def descendant_query(n: int, sigma=SIGMA) -> Sha:
    """The benchmark SHA for parameter ``n >= 1`` (2n + 10 states).

    State groups: ``g`` reads any tree; ``p, c1..cn, f`` search a subtree for
    the pattern; ``s0, sp, sc1..scn, sf`` do the same inside the node that
    starts with ``x``; ``u, U`` carry a match up through ancestors; ``r, R``
    run at the top level.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if sigma[0] != "a":
        raise ValueError("the first letter of sigma is the pattern letter 'a'")
    letters = list(sigma) + [X, NOT_X]
    names = (["g", "p"] + [f"c{k}" for k in range(1, n + 1)] + ["f", "s0", "sp"]
             + [f"sc{k}" for k in range(1, n + 1)] + ["sf", "u", "U", "r", "R"])
    rules = set()
    applies = set()

    def loop(q, over=letters):
        rules.update((q, sym, q) for sym in over)
        applies.add((q, "g", q))

    for q in ("g", "p", "f", "sf", "u", "U", "r", "R"):
        loop(q)
    loop("sp", list(sigma) + [NOT_X])
    rules.add(("s0", X, "sp"))
    for prefix, start in (("c", "p"), ("sc", "sp")):
        rules.add((start, "a", f"{prefix}1"))
        for k in range(1, n):
            rules.update((f"{prefix}{k}", sym, f"{prefix}{k + 1}") for sym in letters)
            applies.add((f"{prefix}{k}", "g", f"{prefix}{k + 1}"))
    applies |= {("p", f"c{n}", "f"), ("p", "f", "f"), ("sp", f"c{n}", "sf"), ("sp", "f", "sf")}
    for low, high in (("u", "U"), ("r", "R")):
        applies |= {(low, f"sc{n}", high), (low, "sf", high), (low, "U", high)}

    ix = {name: i for i, name in enumerate(names)}
    return make_sha(
        letters, len(names), [ix["r"]], [ix["R"]],
        [(ix[q1], sym, ix[q2]) for q1, sym, q2 in rules],
        [ix[q] for q in ("g", "p", "s0", "u")],
        [(ix[q1], ix[q], ix[q2]) for q1, q, q2 in applies],
        names=names,
    )


@dataclass(frozen=True)
class Cell:
    size: int
    states: int
    seconds: float
    stats: Optional[RunStats] = None

    def format(self) -> str:
        return f"{self.size}({self.states})"


@dataclass(frozen=True)
class BenchRow:
    n: int
    cells: tuple  # one Cell or None (timed out) per column

    def cell(self, column: str) -> Optional[Cell]:
        return self.cells[COLUMNS.index(column)]


def _timed(build, timeout):
    start = time.perf_counter()
    try:
        result = build(start + timeout)
    except Timeout:
        return None
    return result, time.perf_counter() - start


def bench_row(n: int, timeout: float = 100.0, backend: Optional[str] = None) -> BenchRow:
    a = descendant_query(n)
    schema = one_x_sha(SIGMA)
    cells = [Cell(a.size, a.num_states, 0.0)]

    def det(deadline):
        return determinize_sha(a, backend=backend, deadline=deadline)

    def det_product(deadline):
        prod = product_sha(a, schema, deadline=deadline)
        return determinize_sha(prod.automaton, backend=backend, deadline=deadline)

    def sdet(deadline):
        return schema_determinize_sha(a, schema, backend=backend, deadline=deadline)

    for build in (det, det_product, sdet):
        timed = _timed(build, timeout)
        if timed is None:
            cells.append(None)
            continue
        (result, seconds) = timed
        aut = result.automaton
        cells.append(Cell(aut.size, aut.num_states, seconds, result.stats))
    return BenchRow(n, tuple(cells))


def run_bench(ns=range(1, 7), timeout: float = 100.0, backend: Optional[str] = None) -> list:
    return [bench_row(n, timeout, backend) for n in ns]


def format_table(rows, stats: bool = False) -> str:
    """Fixed-width table; each construction cell reads ``size(#states)``, blank on timeout."""
    header = ["n", "A"]
    for col in COLUMNS[1:]:
        header += [col, "sec"]
        if stats:
            header += ["pushes"]
    body = []
    for row in rows:
        line = [str(row.n), row.cells[0].format()]
        for cell in row.cells[1:]:
            if cell is None:
                line += ["", ""] + ([""] if stats else [])
                continue
            line += [cell.format(), f"{cell.seconds:.3f}"]
            if stats:
                line.append(str(cell.stats.agenda_pushes))
        body.append(line)
    widths = [max(len(r[k]) for r in [header] + body) for k in range(len(header))]
    lines = ["  ".join(text.rjust(w) for text, w in zip(r, widths)).rstrip() for r in [header] + body]
    return "\n".join(lines) + "\n"


def ordering_holds(rows) -> bool:
    """det_S(A) has at most as many states as det(A) on every row where both finished."""
    for row in rows:
        det, sdet = row.cell("det(A)"), row.cell("det_S(A)")
        if det is not None and sdet is not None and sdet.states > det.states:
            return False
    return True


def best_ratio(rows) -> float:
    ratios = [row.cell("det(A)").states / row.cell("det_S(A)").states for row in rows
              if row.cell("det(A)") and row.cell("det_S(A)") and row.cell("det_S(A)").states]
    return max(ratios, default=0.0)
