# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for unitization and agreement counting."""

import numpy as np

from libc.stdint cimport int64_t


def contingency(const unsigned char[::1] a, const unsigned char[::1] b):
    """Return ``(n11, n10, n01, n00)`` for two 0/1 codings."""
    cdef Py_ssize_t i, n = a.shape[0]
    cdef long long n11 = 0, ta = 0, tb = 0
    cdef unsigned char x, y
    if b.shape[0] != n:
        raise ValueError(f"coding lengths differ: {n} vs {b.shape[0]}")
    with nogil:
        # branchless: count the margins and the joint cell, derive the rest
        for i in range(n):
            x = a[i] != 0
            y = b[i] != 0
            ta += x
            tb += y
            n11 += x & y
    return n11, ta - n11, tb - n11, n - ta - tb + n11


def paint(unsigned char[::1] out, const int64_t[::1] starts, const int64_t[::1] ends,
          Py_ssize_t offset=0):
    """Set ``out[offset+s : offset+e] = 1`` for every interval."""
    cdef Py_ssize_t k, i, hi, n = out.shape[0]
    if starts.shape[0] != ends.shape[0]:
        raise ValueError("starts and ends differ in length")
    for k in range(starts.shape[0]):
        hi = offset + ends[k]
        if starts[k] < 0 or hi > n or starts[k] > ends[k]:
            raise IndexError(f"interval [{starts[k]},{ends[k]}) outside buffer")
        for i in range(offset + starts[k], hi):
            out[i] = 1


def word_hits(const unsigned char[::1] coded, const int64_t[::1] starts,
              const int64_t[::1] ends):
    """1 for each ``[start, end)`` unit that contains a nonzero code."""
    cdef Py_ssize_t k, i, m = starts.shape[0], n = coded.shape[0]
    result = np.zeros(m, dtype=np.uint8)
    cdef unsigned char[::1] res = result
    for k in range(m):
        if starts[k] < 0 or ends[k] > n:
            raise IndexError(f"unit [{starts[k]},{ends[k]}) outside coding")
        for i in range(starts[k], ends[k]):
            if coded[i]:
                res[k] = 1
                break
    return result
