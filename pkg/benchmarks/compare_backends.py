"""Time the compiled subset kernel against the pure-Python fallback.

    python benchmarks/compare_backends.py [--repeat 3] [--max-n 6]

Both backends run the same constructions on the benchmark query family and
must produce identical automata; the table reports the best wall time of
``--repeat`` runs per cell.
"""
import argparse
import time

from schemadet.bench import descendant_query
from schemadet.formats import serialize_automaton
from schemadet.hedges import determinize_sha, schema_determinize_sha
from schemadet.kernels import BACKENDS
from schemadet.queries import one_x_sha


def best_time(build, repeat):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = build()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--max-n", type=int, default=6)
    args = parser.parse_args()
    if "compiled" not in BACKENDS:
        print("compiled kernel not built; only the Python backend is available")
    schema = one_x_sha(("a", "b"))
    backends = sorted(BACKENDS)
    print(f"{'n':>2} {'construction':>12} " + " ".join(f"{b:>10}" for b in backends) + "   speedup")
    for n in range(1, args.max_n + 1):
        a = descendant_query(n)
        for label, op in (("det", lambda b: determinize_sha(a, backend=b)),
                          ("det_S", lambda b: schema_determinize_sha(a, schema, backend=b))):
            times, outputs = [], set()
            for backend in backends:
                seconds, result = best_time(lambda: op(backend), args.repeat)
                times.append(seconds)
                outputs.add(serialize_automaton(result.automaton))
            if len(outputs) != 1:
                raise SystemExit(f"backends disagree on {label} for n={n}")
            speedup = times[backends.index("python")] / times[0]
            cells = " ".join(f"{t:10.4f}" for t in times)
            print(f"{n:>2} {label:>12} {cells}   {speedup:6.2f}x")


if __name__ == "__main__":
    main()
