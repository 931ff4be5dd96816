"""Periodic correlation and zero-correlation-zone verdicts.

Everything here is brute-force O(N^2) summation on purpose: this module is the
reference the faster Zak-domain filter banks are checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .seqcore import (
    DEFAULT_TOLERANCE,
    ComplexSequence,
    SequenceSet,
    TolerancePolicy,
    common_modulus,
    energy,
    exact_sum,
)


@dataclass(frozen=True)
class CorrelationProfile:
    """``values[n] = theta_{a,b}(n)`` for ``n`` in ``0..N-1``."""

    values: ComplexSequence
    operands: tuple = ("a", "b")
    # sqrt(E_a * E_b); bounds every |theta(n)| and scales the zero test
    reference: float = 0.0

    @property
    def period(self) -> int:
        return self.values.period

    @property
    def is_exact(self) -> bool:
        return self.values.is_exact

    @property
    def array(self) -> np.ndarray:
        return self.values.array

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return self.period

    def zero_mask(self, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> np.ndarray:
        """Boolean mask of lags where the correlation vanishes."""
        if self.is_exact:
            return np.array([s == 0 for s in self.values.scales])
        return np.abs(self.array) <= tol.threshold(self.reference)


def _lag_index(N: int) -> np.ndarray:
    # idx[n, m] = (m - n) mod N
    n = np.arange(N)
    return np.mod(n[None, :] - n[:, None], N)


def cross_correlation(a: ComplexSequence, b: ComplexSequence, operands=("a", "b")) -> CorrelationProfile:
    """``theta(n) = sum_m a(m) * conj(b(m - n))`` with indices mod N."""
    if a.period != b.period:
        raise ValueError(f"period mismatch: {a.period} != {b.period}")
    N = a.period
    idx = _lag_index(N)
    reference = math.sqrt(float(energy(a)) * float(energy(b)))
    if a.is_exact and b.is_exact:
        q = common_modulus(a.modulus, b.modulus)
        ea = a.lift(q).exponents
        eb = b.lift(q).exponents
        rows = np.repeat(np.arange(N), N)
        exps = ea[None, :] - eb[idx]
        wa, da = a.integer_scales()
        wb, db = b.integer_scales()
        weights = None
        if da != 1 or db != 1 or a._scales is not None or b._scales is not None:
            weights = wa[None, :] * wb[idx]
        values = exact_sum(q, N, rows, exps, weights, da * db)
    else:
        values = ComplexSequence.from_values(np.conj(b.array)[idx] @ a.array)
    return CorrelationProfile(values, tuple(operands), reference)


def auto_correlation(a: ComplexSequence, operand="a") -> CorrelationProfile:
    return cross_correlation(a, a, (operand, operand))


def is_perfect(a: ComplexSequence, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    """True iff every out-of-phase autocorrelation value vanishes."""
    return bool(auto_correlation(a).zero_mask(tol)[1:].all())


def _cross_masks(seqs: SequenceSet, tol: TolerancePolicy) -> dict[tuple[int, int], np.ndarray]:
    masks = {}
    for a in range(seqs.size):
        for b in range(a, seqs.size):
            masks[a, b] = cross_correlation(seqs[a], seqs[b], (a, b)).zero_mask(tol)
    return masks


def _first_false(mask_iter) -> int | None:
    for i, ok in enumerate(mask_iter):
        if not ok:
            return i
    return None


def _zone_from_masks(N: int, K: int, masks) -> int:
    zone = N - 1
    for (a, b), mask in masks.items():
        if a == b:
            bad = _first_false(mask[1:])
            if bad is not None:
                zone = min(zone, bad)
        else:
            # theta_{a,b}(n) and theta_{b,a}(n) = conj(theta_{a,b}(-n)) for n >= 0
            sym = mask & np.roll(mask[::-1], 1)
            bad = _first_false(sym)
            if bad is not None:
                zone = min(zone, bad - 1)
    return zone


def zcz_length(seqs: SequenceSet, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> int:
    """Largest T such that all correlations vanish in the zone; -1 if none."""
    return _zone_from_masks(seqs.period, seqs.size, _cross_masks(seqs, tol))


def is_interference_free(seqs: SequenceSet, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    masks = _cross_masks(seqs, tol) if seqs.size > 1 else {}
    return all(m.all() for (a, b), m in masks.items() if a != b)


@dataclass(frozen=True)
class ZczReport:
    period: int
    size: int
    zcz_length: int
    interference_free: bool
    all_perfect_seeds: bool | None
    bound_lhs: int
    bound_rhs: int
    optimal: bool

    def as_dict(self) -> dict:
        return {
            "period": self.period,
            "size": self.size,
            "zcz_length": self.zcz_length,
            "interference_free": self.interference_free,
            "all_perfect_seeds": self.all_perfect_seeds,
            "bound_lhs": self.bound_lhs,
            "bound_rhs": self.bound_rhs,
            "optimal": self.optimal,
        }

    @property
    def signature(self) -> tuple:
        return (self.period, self.size, self.zcz_length, self.interference_free, self.optimal)


def check_bound(seqs: SequenceSet, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> ZczReport:
    """Measure the zone and compare ``K * (Z + 1)`` with ``N``."""
    masks = _cross_masks(seqs, tol)
    N, K = seqs.period, seqs.size
    zone = _zone_from_masks(N, K, masks)
    free = all(m.all() for (a, b), m in masks.items() if a != b)
    seeds = getattr(seqs.provenance, "seeds", None)
    perfect_seeds = None if seeds is None else all(is_perfect(h, tol) for h in seeds)
    lhs = K * (zone + 1)
    return ZczReport(
        period=N,
        size=K,
        zcz_length=zone,
        interference_free=free,
        all_perfect_seeds=perfect_seeds,
        bound_lhs=lhs,
        bound_rhs=N,
        optimal=zone >= 0 and lhs == N,
    )


def pair_residuals(seqs: SequenceSet, zone: int | None = None) -> list[dict]:
    """Worst |theta| per pair over the lags that should vanish.

    Cross pairs are checked at every lag; autocorrelations at ``1..zone``.
    """
    if zone is None:
        zone = zcz_length(seqs)
    out = []
    for a in range(seqs.size):
        for b in range(a, seqs.size):
            prof = np.abs(cross_correlation(seqs[a], seqs[b]).array)
            lags = prof if a != b else prof[1:max(zone, 0) + 1]
            out.append({"a": a, "b": b, "max_abs": float(lags.max(initial=0.0))})
    return out
