# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled subset kernel; same interface and results as ``_pykernel``."""

from libcpp.vector cimport vector
from libcpp.algorithm cimport sort


cdef class SubsetKernel:
    cdef public int num_states
    cdef public int num_letters
    # internal rules, CSR keyed by state * num_letters + letter
    cdef vector[int] rule_ptr
    cdef vector[int] rule_dst
    # apply rules, CSR keyed by q1 * num_states + q
    cdef vector[int] app_ptr
    cdef vector[int] app_dst
    cdef bint has_apply
    # stored subsets, flattened
    cdef vector[int] sub_ptr
    cdef vector[int] sub_data
    cdef vector[int] mark
    cdef int stamp
    cdef vector[int] buf

    def __init__(self, int num_states, int num_letters, rules, apply_rules=()):
        cdef int n = num_states, L = num_letters, k, src, letter, dst, q1, q, q2
        self.num_states = n
        self.num_letters = L
        self.rule_ptr.assign(n * L + 1, 0)
        ordered = sorted(rules)
        for src, letter, dst in ordered:
            self.rule_ptr[src * L + letter + 1] += 1
        for k in range(n * L):
            self.rule_ptr[k + 1] += self.rule_ptr[k]
        self.rule_dst.assign(len(ordered), 0)
        fill = [0] * (n * L)
        for src, letter, dst in ordered:
            k = src * L + letter
            self.rule_dst[self.rule_ptr[k] + fill[k]] = dst
            fill[k] += 1

        ordered = sorted(apply_rules)
        self.has_apply = len(ordered) > 0
        if self.has_apply:
            self.app_ptr.assign(n * n + 1, 0)
            for q1, q, q2 in ordered:
                self.app_ptr[q1 * n + q + 1] += 1
            for k in range(n * n):
                self.app_ptr[k + 1] += self.app_ptr[k]
            self.app_dst.assign(len(ordered), 0)
            fill = [0] * (n * n)
            for q1, q, q2 in ordered:
                k = q1 * n + q
                self.app_dst[self.app_ptr[k] + fill[k]] = q2
                fill[k] += 1

        self.sub_ptr.push_back(0)
        self.mark.assign(n if n > 0 else 1, 0)
        self.stamp = 0

    def __len__(self):
        return self.sub_ptr.size() - 1

    def add(self, subset):
        cdef int q
        for q in subset:
            self.sub_data.push_back(q)
        self.sub_ptr.push_back(self.sub_data.size())
        return self.sub_ptr.size() - 2

    def subset(self, int i):
        return tuple(self.sub_data[k] for k in range(self.sub_ptr[i], self.sub_ptr[i + 1]))

    cdef inline void _next_stamp(self):
        self.stamp += 1
        if self.stamp == 0x7fffffff:
            self.mark.assign(self.mark.size(), 0)
            self.stamp = 1

    cdef tuple _flush(self):
        sort(self.buf.begin(), self.buf.end())
        return tuple(self.buf)

    def letter_images(self, int i):
        cdef int L = self.num_letters, letter, k, q, r
        cdef int lo = self.sub_ptr[i], hi = self.sub_ptr[i + 1]
        result = []
        for letter in range(L):
            self._next_stamp()
            self.buf.clear()
            for k in range(lo, hi):
                q = self.sub_data[k]
                for r in range(self.rule_ptr[q * L + letter], self.rule_ptr[q * L + letter + 1]):
                    if self.mark[self.rule_dst[r]] != self.stamp:
                        self.mark[self.rule_dst[r]] = self.stamp
                        self.buf.push_back(self.rule_dst[r])
            if self.buf.size():
                result.append((letter, self._flush()))
        return result

    cdef void _image(self, int i, int j):
        cdef int n = self.num_states, a, b, q1, key, r, d
        self._next_stamp()
        self.buf.clear()
        for a in range(self.sub_ptr[i], self.sub_ptr[i + 1]):
            q1 = self.sub_data[a]
            for b in range(self.sub_ptr[j], self.sub_ptr[j + 1]):
                key = q1 * n + self.sub_data[b]
                for r in range(self.app_ptr[key], self.app_ptr[key + 1]):
                    d = self.app_dst[r]
                    if self.mark[d] != self.stamp:
                        self.mark[d] = self.stamp
                        self.buf.push_back(d)

    def apply_image(self, int i, int j):
        if not self.has_apply:
            return ()
        self._image(i, j)
        return self._flush()

    def apply_row(self, int i, int upto):
        cdef int j
        if not self.has_apply:
            return []
        row = []
        for j in range(upto):
            self._image(i, j)
            fwd = self._flush() if self.buf.size() else ()
            if j == i:
                bwd = fwd
            else:
                self._image(j, i)
                bwd = self._flush() if self.buf.size() else ()
            if fwd or bwd:
                row.append((j, fwd, bwd))
        return row

