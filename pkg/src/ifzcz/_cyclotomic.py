"""Exact zero / single-root tests for integer combinations of roots of unity.

An element ``sum_r c[r] * w_q**r`` of Z[w_q] is represented by its coefficient
vector ``c`` (length q).  Two vectors denote the same number iff their
remainders modulo the cyclotomic polynomial Phi_q agree, so reduction gives a
canonical form that can be compared with integer arithmetic only.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

# Above this modulus the q x phi(q) reduction table gets too large and the
# classification falls back to a numeric residual test.
BASIS_CAP = 512
NUMERIC_RTOL = 1e-12


def _divisors(q: int) -> list[int]:
    return [d for d in range(1, q + 1) if q % d == 0]


def _poly_divexact(num: list[int], den: tuple[int, ...]) -> list[int]:
    # den is monic; coefficients are low -> high
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for k, d in enumerate(den):
                num[i - dn + k] -= c * d
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(q: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_q, lowest degree first."""
    poly = [-1] + [0] * (q - 1) + [1]
    for d in _divisors(q)[:-1]:
        poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=64)
def reduction_basis(q: int) -> np.ndarray:
    """Row r holds the coefficients of ``x**r mod Phi_q`` (shape q x phi(q))."""
    phi = np.array(cyclotomic_polynomial(q), dtype=np.int64)
    deg = len(phi) - 1
    basis = np.zeros((q, deg), dtype=np.int64)
    row = np.zeros(deg, dtype=np.int64)
    row[0] = 1
    for r in range(q):
        basis[r] = row
        lead = row[-1]
        row = np.concatenate(([0], row[:-1])) - lead * phi[:-1]
    basis.setflags(write=False)
    return basis


def unit_roots(q: int) -> np.ndarray:
    from .seqcore import root_values

    return root_values(q, np.arange(q))


def classify(counts: np.ndarray, q: int):
    """Classify each row of an integer coefficient matrix.

    Returns ``(ok, scales, exponents, values)`` where ``values`` is the numeric
    evaluation, and for rows with ``ok`` true the row equals
    ``scales[i] * w_q**exponents[i]`` exactly (scale 0 meaning zero).
    """
    counts = np.asarray(counts)
    w = unit_roots(q)
    values = counts.astype(np.float64) @ w
    mags = np.abs(values)
    scales = np.rint(mags).astype(np.int64)
    exps = np.mod(np.rint(-np.angle(values) * q / (2 * np.pi)).astype(np.int64), q)
    exps[scales == 0] = 0
    if q <= BASIS_CAP:
        basis = reduction_basis(q)
        bound = int(np.abs(counts).sum(axis=1).max(initial=0)) * int(np.abs(basis).max(initial=1))
        if bound < 2**62:
            reduced = counts.astype(np.int64) @ basis
            expected = scales[:, None] * basis[exps]
        else:
            reduced = counts.astype(object) @ basis.astype(object)
            expected = scales.astype(object)[:, None] * basis[exps].astype(object)
        ok = np.all(reduced == expected, axis=1)
    else:
        norms = np.maximum(np.abs(counts).sum(axis=1), 1)
        ok = np.abs(values - scales * w[exps]) <= NUMERIC_RTOL * norms
    return ok, scales, exps, values


def accumulate(q: int, n_out: int, rows, exps, weights=None, denominator: int = 1):
    """Sum weighted roots ``weights[i] * w_q**exps[i]`` into output ``rows[i]``.

    The true sums are divided by ``denominator``.  Returns
    ``(modulus, exponents, scales)`` for an exact result or ``values`` (complex
    ndarray) when some sum is not a single scaled root.
    """
    rows = np.asarray(rows, dtype=np.int64).ravel()
    exps = np.mod(np.asarray(exps, dtype=np.int64).ravel(), q)
    flat = rows * q + exps
    if weights is None:
        counts = np.bincount(flat, minlength=n_out * q).astype(np.int64)
    else:
        weights = np.asarray(weights).ravel()
        if weights.dtype == object:
            counts = np.zeros(n_out * q, dtype=object)
            for i, wt in zip(flat, weights):
                counts[i] += int(wt)
        else:
            counts = np.bincount(flat, weights=weights.astype(np.float64), minlength=n_out * q)
            counts = np.rint(counts).astype(np.int64)
    counts = counts.reshape(n_out, q)
    ok, scales, out_exps, values = classify(counts, q)
    if ok.all():
        fr = tuple(Fraction(int(s), denominator) for s in scales)
        return q, out_exps, fr
    return values / denominator
