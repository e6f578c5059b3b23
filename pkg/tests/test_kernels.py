import random

import pytest

from schemadet import kernels
from schemadet.bench import descendant_query
from schemadet.formats import serialize_automaton
from schemadet.generate import hedge_instances, random_sha, word_instances
from schemadet.hedges import determinize_sha, schema_determinize_sha
from schemadet.queries import one_x_sha
from schemadet.words import determinize, schema_determinize

BACKENDS = sorted(kernels.BACKENDS)


def test_python_backend_always_available():
    assert "python" in kernels.BACKENDS
    assert kernels.get_kernel("python") is kernels.BACKENDS["python"]
    with pytest.raises(ValueError):
        kernels.get_kernel("fortran")


@pytest.mark.parametrize("backend", BACKENDS)
def test_kernel_primitives_match_reference(backend):
    rng = random.Random(41)
    ref_cls = kernels.BACKENDS["python"]
    cls = kernels.BACKENDS[backend]
    for _ in range(100):
        a = random_sha(rng, rng.randint(1, 6), 3, 0.5, 0.4)
        ref = ref_cls(a.num_states, len(a.alphabet), a.rules, a.apply_rules)
        ker = cls(a.num_states, len(a.alphabet), a.rules, a.apply_rules)
        subsets = {tuple(sorted(rng.sample(range(a.num_states), rng.randint(1, a.num_states))))
                   for _ in range(6)}
        for sub in sorted(subsets):
            assert ref.add(sub) == ker.add(sub)
            assert ker.subset(len(ker) - 1) == sub
        assert len(ker) == len(ref)
        for i in range(len(ref)):
            assert list(ker.letter_images(i)) == list(ref.letter_images(i))
            assert list(ker.apply_row(i, len(ref))) == list(ref.apply_row(i, len(ref)))
            for j in range(len(ref)):
                assert ker.apply_image(i, j) == ref.apply_image(i, j)


@pytest.mark.parametrize("backend", BACKENDS)
def test_constructions_identical_across_backends(backend):
    for a, s in word_instances(7, 150):
        for op in (lambda b: determinize(a, backend=b), lambda b: schema_determinize(a, s, backend=b)):
            mine, ref = op(backend), op("python")
            assert serialize_automaton(mine.automaton) == serialize_automaton(ref.automaton)
            assert mine.stats == ref.stats
    for a, s in hedge_instances(7, 150):
        for op in (lambda b: determinize_sha(a, backend=b),
                   lambda b: schema_determinize_sha(a, s, backend=b)):
            mine, ref = op(backend), op("python")
            assert serialize_automaton(mine.automaton) == serialize_automaton(ref.automaton)
            assert mine.stats == ref.stats


@pytest.mark.parametrize("backend", BACKENDS)
def test_benchmark_family_identical_across_backends(backend):
    a = descendant_query(3)
    s = one_x_sha(("a", "b"))
    assert (serialize_automaton(determinize_sha(a, backend=backend).automaton)
            == serialize_automaton(determinize_sha(a, backend="python").automaton))
    assert (serialize_automaton(schema_determinize_sha(a, s, backend=backend).automaton)
            == serialize_automaton(schema_determinize_sha(a, s, backend="python").automaton))


def test_kernel_handles_states_without_rules():
    for cls in kernels.BACKENDS.values():
        ker = cls(3, 2, [], [])
        i = ker.add((0, 2))
        assert list(ker.letter_images(i)) == []
        assert ker.apply_image(i, i) == ()
        assert list(ker.apply_row(i, 1)) == []


def test_environment_forces_python_fallback():
    import os
    import subprocess
    import sys

    env = dict(os.environ, SCHEMADET_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from schemadet import kernels; "
                          "print(kernels.DEFAULT_BACKEND, sorted(kernels.BACKENDS))"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split()[0] == "python"
