"""Equivalence transformations of sequence sets.

A :class:`TransformSpec` maps a set ``{u_b}`` to ``{v_a}`` with::

    v_a(n) = exp(-2j*pi*g(a)) * u_{perm(a)}(n + tau_a)

Index permutation, per-sequence cyclic shift and per-sequence constant phase
each preserve period, zone length, interference freedom and optimality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .constructions import GeneralParams, S1Params, build_general, build_s1
from .correlation import check_bound, is_perfect
from .seqcore import (
    DEFAULT_TOLERANCE,
    ComplexSequence,
    RootScalar,
    SequenceSet,
    TolerancePolicy,
    common_modulus,
    make_polyphase,
    pointwise_multiply,
)


class SearchBudgetExceeded(RuntimeError):
    """The equivalence search ran out of budget before finishing."""


class IncompatibleSetsError(ValueError):
    """Sets differ in size or period and cannot be equivalent."""


@dataclass(frozen=True)
class TransformSpec:
    perm: tuple[int, ...]
    shifts: tuple[int, ...]
    phases: tuple[Fraction, ...]
    period: int

    def __post_init__(self):
        K = len(self.perm)
        perm = tuple(int(x) for x in self.perm)
        if sorted(perm) != list(range(K)):
            raise ValueError(f"perm {perm} is not a permutation")
        if len(self.shifts) != K or len(self.phases) != K:
            raise ValueError("perm, shifts and phases must have equal length")
        if self.period < 1:
            raise ValueError("period must be positive")
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "shifts", tuple(int(s) % self.period for s in self.shifts))
        object.__setattr__(self, "phases", tuple(Fraction(g) % 1 for g in self.phases))

    @classmethod
    def identity(cls, K: int, N: int) -> "TransformSpec":
        return cls(tuple(range(K)), (0,) * K, (Fraction(0),) * K, N)

    @property
    def size(self) -> int:
        return len(self.perm)

    def phase_factor(self, a: int) -> RootScalar:
        g = self.phases[a]
        return RootScalar(g.denominator, g.numerator)

    def as_dict(self) -> dict:
        return {
            "perm": list(self.perm),
            "shifts": list(self.shifts),
            "phases": [str(g) for g in self.phases],
            "period": self.period,
        }


def apply_transform(seqs: SequenceSet, T: TransformSpec) -> SequenceSet:
    if seqs.size != T.size or seqs.period != T.period:
        raise ValueError(f"transform for (K={T.size}, N={T.period}) applied to "
                         f"(K={seqs.size}, N={seqs.period})")
    out = []
    for a in range(T.size):
        s = seqs[T.perm[a]].shift(T.shifts[a])
        if T.phases[a]:
            s = s.times(T.phase_factor(a)) if s.is_exact else s.times(complex(T.phase_factor(a)))
        out.append(s)
    return SequenceSet(tuple(out))


def compose(T1: TransformSpec, T2: TransformSpec) -> TransformSpec:
    """The transform equal to applying ``T2`` first, then ``T1``."""
    if (T1.size, T1.period) != (T2.size, T2.period):
        raise ValueError("transforms act on different shapes")
    K = T1.size
    perm = tuple(T2.perm[T1.perm[a]] for a in range(K))
    shifts = tuple(T1.shifts[a] + T2.shifts[T1.perm[a]] for a in range(K))
    phases = tuple(T1.phases[a] + T2.phases[T1.perm[a]] for a in range(K))
    return TransformSpec(perm, shifts, phases, T1.period)


def inverse(T: TransformSpec) -> TransformSpec:
    K = T.size
    inv = [0] * K
    for a, b in enumerate(T.perm):
        inv[b] = a
    return TransformSpec(tuple(inv), tuple(-T.shifts[inv[b]] for b in range(K)),
                         tuple(-T.phases[inv[b]] for b in range(K)), T.period)


@dataclass(frozen=True)
class ReductionWitness:
    """How a general-construction set is an S1 set with re-indexed, twisted seeds.

    Sequence ``a`` of the general set equals sequence ``perm[a]`` of the S1 set
    whose seed at index ``perm[a]`` is ``new_seeds[a](k) = h_a(k) * w_M**(twists[a]*k)``.
    """

    perm: tuple[int, ...]
    twists: tuple[int, ...]
    new_seeds: tuple[ComplexSequence, ...]

    def s1_params(self) -> S1Params:
        K = len(self.perm)
        seeds = [None] * K
        for a, b in enumerate(self.perm):
            seeds[b] = self.new_seeds[a]
        return S1Params(K, self.new_seeds[0].period, tuple(seeds))


def witness_general_to_s1(p: GeneralParams) -> ReductionWitness:
    """Split ``(e*a + t) mod N`` as ``K*t_a + pi(a)`` and twist the seeds."""
    if math.gcd(p.e, p.K) != 1:
        raise ValueError(f"gcd(e={p.e}, K={p.K}) must be 1")
    K, M, N = p.K, p.M, p.N
    perm, twists, seeds = [], [], []
    for a, h in enumerate(p.seeds):
        f = (p.e * a + p.t) % N
        pa = f % K
        ta = (f - pa) // K
        perm.append(pa)
        twists.append(ta)
        seeds.append(pointwise_multiply(h, make_polyphase(M, [ta * k for k in range(M)])))
    if sorted(perm) != list(range(K)):
        raise AssertionError("gcd(e, K) = 1 should make a -> (e*a + t) mod K a bijection")
    return ReductionWitness(tuple(perm), tuple(twists), tuple(seeds))


def verify_witness(p: GeneralParams, w: ReductionWitness,
                   tol: TolerancePolicy = DEFAULT_TOLERANCE) -> bool:
    """Entrywise check of the witness plus perfectness of every twisted seed."""
    if not all(is_perfect(h, tol) for h in w.new_seeds):
        return False
    general = build_general(p, validate=False)
    simple = build_s1(w.s1_params(), validate=False)
    for a in range(p.K):
        u, v = general[a], simple[w.perm[a]]
        same = u == v if (u.is_exact and v.is_exact) else u.allclose(v, 1e-9)
        if not same:
            return False
    return True


# -- equivalence search --------------------------------------------------------

def _match_exact(b_seq: ComplexSequence, a_seq: ComplexSequence, q: int):
    """Smallest tau with b(n) = phi * a(n + tau); returns (tau, g) or None."""
    N = b_seq.period
    eb = b_seq.lift(q).exponents
    ea = a_seq.lift(q).exponents
    idx = np.mod(np.arange(N)[None, :] + np.arange(N)[:, None], N)
    diff = np.mod(eb[None, :] - ea[idx], q)          # row tau
    const = np.all(diff == diff[:, :1], axis=1)
    hits = np.flatnonzero(const)
    if hits.size == 0:
        return None
    tau = int(hits[0])
    return tau, Fraction(int(diff[tau, 0]), q)


def _match_dense(b_seq: ComplexSequence, a_seq: ComplexSequence, atol: float):
    N = b_seq.period
    b, a = b_seq.array, a_seq.array
    for tau in range(N):
        ratio = b / np.roll(a, -tau)
        if np.all(np.abs(ratio - ratio[0]) <= atol) and abs(abs(ratio[0]) - 1) <= atol:
            g = Fraction(float(-np.angle(ratio[0]) / (2 * np.pi))).limit_denominator(10**9)
            return tau, g % 1
    return None


def are_equivalent(A: SequenceSet, B: SequenceSet, budget: int = 10**6,
                   atol: float = 1e-9) -> TransformSpec | None:
    """Find ``T`` with ``apply_transform(A, T) == B``.

    Returns ``None`` when the exhaustive search finds no witness and raises
    :class:`SearchBudgetExceeded` when it cannot finish within ``budget``
    elementary steps (one per candidate shift test and per search node).
    Permutations are explored in lexicographic order, so the result is
    deterministic.
    """
    if (A.size, A.period) != (B.size, B.period):
        raise IncompatibleSetsError(f"(K, N) = ({A.size}, {A.period}) vs ({B.size}, {B.period})")
    K, N = A.size, A.period
    exact = A.is_exact and B.is_exact
    for s in (*A, *B):
        if not s.unit_magnitude:
            raise ValueError("equivalence search needs unit-magnitude entries")
    spent = 0

    def charge(n):
        nonlocal spent
        spent += n
        if spent > budget:
            raise SearchBudgetExceeded(f"budget of {budget} steps exhausted")

    q = common_modulus(*(s.modulus for s in (*A, *B))) if exact else None
    match: list[list] = []
    for a in range(K):
        row = []
        for b in range(K):
            charge(N)
            row.append(_match_exact(B[a], A[b], q) if exact else _match_dense(B[a], A[b], atol))
        if all(m is None for m in row):
            return None
        match.append(row)

    used = [False] * K
    chosen: list[int] = []

    def search(a: int) -> bool:
        charge(1)
        if a == K:
            return True
        for b in range(K):
            if not used[b] and match[a][b] is not None:
                used[b] = True
                chosen.append(b)
                if search(a + 1):
                    return True
                chosen.pop()
                used[b] = False
        return False

    if not search(0):
        return None
    T = TransformSpec(tuple(chosen), tuple(match[a][chosen[a]][0] for a in range(K)),
                      tuple(match[a][chosen[a]][1] for a in range(K)), N)
    image = apply_transform(A, T)
    ok = image == B if exact else all(x.allclose(y, atol * 10) for x, y in zip(image, B))
    if not ok:
        raise AssertionError("equivalence witness failed self-validation")
    return T


@dataclass(frozen=True)
class PreservationReport:
    before: tuple
    after: tuple

    @property
    def preserved(self) -> bool:
        return self.before == self.after

    def as_dict(self) -> dict:
        keys = ("period", "size", "zcz_length", "interference_free", "optimal")
        return {"before": dict(zip(keys, self.before)), "after": dict(zip(keys, self.after)),
                "preserved": self.preserved}


def preservation_report(seqs: SequenceSet, T: TransformSpec,
                        tol: TolerancePolicy = DEFAULT_TOLERANCE) -> PreservationReport:
    before = check_bound(seqs, tol).signature
    after = check_bound(apply_transform(seqs, T), tol).signature
    return PreservationReport(before, after)


def random_transform(K: int, N: int, rng: np.random.Generator, max_den: int = 12) -> TransformSpec:
    perm = tuple(int(x) for x in rng.permutation(K))
    shifts = tuple(int(x) for x in rng.integers(0, N, K))
    phases = tuple(Fraction(int(rng.integers(0, d)), int(d))
                   for d in rng.integers(1, max_den + 1, K))
    return TransformSpec(perm, shifts, phases, N)


def permutation_transform(perm: Sequence[int], N: int) -> TransformSpec:
    K = len(perm)
    return TransformSpec(tuple(perm), (0,) * K, (Fraction(0),) * K, N)
