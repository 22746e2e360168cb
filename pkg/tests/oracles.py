"""Brute-force reference computations on raw truth vectors.

Nothing here touches a BDD: functions are numpy bit arrays of length 2**n
with the first variable as the most significant bit of the row index.
"""
import itertools
import math

import numpy as np


def random_bits(rng, n):
    return rng.integers(0, 2, size=1 << n).astype(np.uint8)


def bits_str(bits):
    return "".join(str(int(b)) for b in bits)


def row_weights(n, p1=None):
    """Probability of each row under independent inputs."""
    p1 = [0.5] * n if p1 is None else list(p1)
    w = np.ones(1 << n)
    rows = np.arange(1 << n)
    for pos in range(n):
        bit = (rows >> (n - 1 - pos)) & 1
        w *= np.where(bit == 1, p1[pos], 1.0 - p1[pos])
    return w


def h2(p):
    return sum(-q * math.log2(q) for q in (p, 1.0 - p) if q > 0)


def prob_on(bits, p1=None):
    n = int(bits.size).bit_length() - 1
    return float(np.dot(row_weights(n, p1), bits))


def cond_entropy_set(bits, positions, p1=None):
    """H(f | x_S) by grouping rows on the values of the conditioning variables."""
    n = int(bits.size).bit_length() - 1
    w = row_weights(n, p1)
    rows = np.arange(1 << n)
    total = 0.0
    for values in itertools.product((0, 1), repeat=len(positions)):
        mask = np.ones(1 << n, dtype=bool)
        for pos, v in zip(positions, values):
            mask &= ((rows >> (n - 1 - pos)) & 1) == v
        pa = w[mask].sum()
        if pa == 0:
            continue
        total += pa * h2(float(np.dot(w[mask], bits[mask]) / pa))
    return total


def count_ones(bits):
    return int(np.sum(bits))
