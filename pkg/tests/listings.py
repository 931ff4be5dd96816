"""Printed worked examples, transcribed as (modulus, exponent) pairs.

Positions known to be misprinted are listed in ``EXAMPLE1_MISPRINTS`` with
the value the construction formula actually gives.
"""

from fractions import Fraction

import numpy as np


def _w(q, e):
    return (q, e)


EXAMPLE1_SEED = (16, [0, 0, 0, 8])

EXAMPLE1_PRINTED = [
    [_w(2, 0), _w(2, 0), _w(2, 0), _w(2, 1)] * 4,
    [_w(16, e) for e in (0, 1, 2, 11, 4, 5, 6, 15, 8, 9, 10, 15, 12, 13, 14, 7)],
    [_w(8, 0), _w(8, 1), _w(8, 2), _w(16, 7), _w(8, 4), _w(8, 5), _w(8, 6), _w(8, 11),
     _w(8, 0), _w(8, 1), _w(8, 2), _w(8, 7), _w(8, 4), _w(8, 5), _w(8, 6), _w(8, 11)],
    [_w(16, e) for e in (0, 3, 6, 1, 12, 15, 2, 13, 8, 11, 14, 9, 4, 7, 10, 5)],
]

# (sequence, position) -> value from the construction formula
EXAMPLE1_MISPRINTS = {
    (1, 11): _w(16, 3),
    (2, 3): _w(8, 7),
}

# nonzero row of each printed 4x4 Zak matrix, with common factor 4
EXAMPLE1_ZAK_ROWS = {
    0: (0, [_w(1, 0), _w(1, 0), _w(1, 0), _w(2, 1)]),
    1: (3, [_w(1, 0), _w(16, 1), _w(16, 2), _w(16, 11)]),
    2: (2, [_w(1, 0), _w(8, 1), _w(8, 2), _w(8, 7)]),
    3: (1, [_w(1, 0), _w(16, 3), _w(16, 6), _w(16, 1)]),
}

EXAMPLE2_PRINTED = [
    [_w(8, e) for e in (0, 0, 0, 0, 1, 3, 5, 7, 2, 6, 2, 6, 3, 1, 7, 5,
                        4, 4, 4, 4, 5, 7, 1, 3, 6, 2, 6, 2, 7, 5, 3, 1)],
    [_w(4, e) for e in (0, 0, 0, 0, 2, 0, 3, 1, 0, 0, 2, 2, 2, 0, 1, 3,
                        0, 0, 0, 0, 2, 0, 3, 1, 0, 0, 2, 2, 2, 0, 1, 3)],
]

# printed U_a^T: column k holds a single 8 at row j
EXAMPLE2_ZAK_NONZERO = {
    0: [(7, 0), (5, 1), (3, 2), (1, 3)],
    1: [(4, 0), (0, 1), (2, 2), (6, 3)],
}


def as_fraction(pair):
    q, e = pair
    return Fraction(e % q, q)


def as_complex(pair):
    q, e = pair
    return np.exp(-2j * np.pi * e / q)
