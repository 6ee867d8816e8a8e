"""Pure-Python versions of the compiled kernels (same signatures)."""

import numpy as np


def contingency(a, b):
    if len(a) != len(b):
        raise ValueError(f"coding lengths differ: {len(a)} vs {len(b)}")
    n11 = n10 = n01 = n00 = 0
    for x, y in zip(bytes(a), bytes(b)):
        if x:
            if y:
                n11 += 1
            else:
                n10 += 1
        elif y:
            n01 += 1
        else:
            n00 += 1
    return n11, n10, n01, n00


def paint(out, starts, ends, offset=0):
    if len(starts) != len(ends):
        raise ValueError("starts and ends differ in length")
    n = len(out)
    for s, e in zip(starts, ends):
        s, e = int(s), int(e)
        if s < 0 or offset + e > n or s > e:
            raise IndexError(f"interval [{s},{e}) outside buffer")
        for i in range(offset + s, offset + e):
            out[i] = 1


def word_hits(coded, starts, ends):
    result = np.zeros(len(starts), dtype=np.uint8)
    n = len(coded)
    raw = bytes(coded)
    for k, (s, e) in enumerate(zip(starts, ends)):
        s, e = int(s), int(e)
        if s < 0 or e > n:
            raise IndexError(f"unit [{s},{e}) outside coding")
        if any(raw[s:e]):
            result[k] = 1
    return result
