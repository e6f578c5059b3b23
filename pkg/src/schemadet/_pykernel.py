"""Pure-Python subset kernel.

Holds the subsets discovered by a determinization run and computes their
images under internal and apply rules. The compiled twin in ``_ckernel``
exposes the same class with the same results.
"""


class SubsetKernel:
    def __init__(self, num_states, num_letters, rules, apply_rules=()):
        self.num_states = num_states
        self.num_letters = num_letters
        by_state = [[] for _ in range(num_states)]
        for src, letter, dst in sorted(rules):
            by_state[src].append((letter, dst))
        self._by_state = by_state
        apply = {}
        for q1, q, q2 in sorted(apply_rules):
            apply.setdefault((q1, q), []).append(q2)
        self._apply = apply
        self._subsets = []

    def __len__(self):
        return len(self._subsets)

    def add(self, subset):
        self._subsets.append(tuple(subset))
        return len(self._subsets) - 1

    def subset(self, i):
        return self._subsets[i]

    def letter_images(self, i):
        """Non-empty images of subset ``i`` per letter, ascending by letter."""
        images = {}
        for q in self._subsets[i]:
            for letter, dst in self._by_state[q]:
                images.setdefault(letter, set()).add(dst)
        return [(letter, tuple(sorted(images[letter]))) for letter in sorted(images)]

    def _image(self, left, right):
        apply = self._apply
        out = set()
        for q1 in left:
            for q in right:
                targets = apply.get((q1, q))
                if targets:
                    out.update(targets)
        return tuple(sorted(out))

    def apply_image(self, i, j):
        """Image of subset ``i`` extended by a tree in subset ``j``."""
        if not self._apply:
            return ()
        return self._image(self._subsets[i], self._subsets[j])

    def apply_row(self, i, upto):
        """Both apply images of subset ``i`` against every subset ``j < upto``.

        Yields ``(j, image(i @ j), image(j @ i))`` for pairs with at least one
        non-empty image.
        """
        if not self._apply:
            return []
        row = []
        mine = self._subsets[i]
        for j in range(upto):
            other = self._subsets[j]
            fwd = self._image(mine, other)
            bwd = fwd if j == i else self._image(other, mine)
            if fwd or bwd:
                row.append((j, fwd, bwd))
        return row
