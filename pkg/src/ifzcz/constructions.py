"""Perfect seeds and optimal interference-free ZCZ set constructions.

Three families are built here, all with exact exponent bookkeeping:

* ``build_s1``: ``u_a(n) = h_a(n mod M) * w_N**(a*n)`` with ``N = K*M`` and
  perfect seeds ``h_a`` of length ``M``; an optimal ``(KM, K, M-1)`` set.
* ``build_general`` / ``build_pi_f``: the ``(e*a + t)`` frequency-offset
  family and its permutation/offset re-expression.
* ``build_s2``: ``u_a(r*M + k) = c_a(k) * w_{KM}**(r*(K*sigma_a(k) + a))`` of
  period ``K*M**2`` over an alphabet of only ``K*M`` roots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .correlation import is_perfect
from .seqcore import (
    ComplexSequence,
    RootScalar,
    SequenceSet,
    common_modulus,
    make_polyphase,
    periodic_extend,
    pointwise_multiply,
)
from .zak import ZakSpectrum


class NonPerfectSeedError(ValueError):
    """A seed sequence failed the perfectness check."""


def _check_perm(perm: Sequence[int], n: int, what: str) -> tuple[int, ...]:
    perm = tuple(int(x) for x in perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{what} must be a permutation of 0..{n - 1}, got {perm}")
    return perm


def _offsets(offsets, K: int) -> tuple[int, ...]:
    if offsets is None:
        return tuple(range(K))
    return _check_perm(offsets, K, "offsets")


def _check_seeds(seeds, K: int, M: int) -> tuple[ComplexSequence, ...]:
    seeds = tuple(seeds)
    if len(seeds) != K:
        raise ValueError(f"expected {K} seeds, got {len(seeds)}")
    for h in seeds:
        if h.period != M:
            raise ValueError(f"seed period {h.period} != M={M}")
    return seeds


@dataclass(frozen=True)
class S1Params:
    """Parameters of the simple construction.

    ``offsets[a]`` is the DFT row mixed into sequence ``a``; the default
    ``offsets[a] = a`` is the plain construction.
    """

    K: int
    M: int
    seeds: tuple[ComplexSequence, ...]
    offsets: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.K < 1 or self.M < 1:
            raise ValueError("K and M must be positive")
        object.__setattr__(self, "seeds", _check_seeds(self.seeds, self.K, self.M))
        object.__setattr__(self, "offsets", _offsets(self.offsets, self.K))

    @classmethod
    def uniform(cls, K: int, seed: ComplexSequence, offsets=None) -> "S1Params":
        return cls(K, seed.period, (seed,) * K, offsets)

    @property
    def N(self) -> int:
        return self.K * self.M


@dataclass(frozen=True)
class GeneralParams:
    K: int
    M: int
    e: int
    t: int
    seeds: tuple[ComplexSequence, ...]

    def __post_init__(self):
        if self.K < 1 or self.M < 1:
            raise ValueError("K and M must be positive")
        if math.gcd(self.e, self.K) != 1:
            raise ValueError(f"gcd(e={self.e}, K={self.K}) must be 1")
        object.__setattr__(self, "seeds", _check_seeds(self.seeds, self.K, self.M))

    @property
    def N(self) -> int:
        return self.K * self.M


@dataclass(frozen=True)
class PiFParams:
    """Permutation ``pi`` and offsets ``f`` with ``f(a) = pi(a) (mod K)``."""

    K: int
    M: int
    pi: tuple[int, ...]
    f: tuple[int, ...]
    seeds: tuple[ComplexSequence, ...]

    def __post_init__(self):
        if self.K < 1 or self.M < 1:
            raise ValueError("K and M must be positive")
        pi = _check_perm(self.pi, self.K, "pi")
        f = tuple(int(x) % (self.K * self.M) for x in self.f)
        if len(f) != self.K:
            raise ValueError("f needs one value per sequence")
        bad = [a for a in range(self.K) if (f[a] - pi[a]) % self.K]
        if bad:
            raise ValueError(f"f(a) != pi(a) mod K for a in {bad}")
        object.__setattr__(self, "pi", pi)
        object.__setattr__(self, "f", f)
        object.__setattr__(self, "seeds", _check_seeds(self.seeds, self.K, self.M))

    @property
    def N(self) -> int:
        return self.K * self.M


@dataclass(frozen=True)
class S2Params:
    """Parameters of the reduced-alphabet construction of period ``K*M**2``."""

    K: int
    M: int
    perms: tuple[tuple[int, ...], ...]
    modulations: tuple[ComplexSequence, ...] | None = None
    offsets: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.K < 1 or self.M < 1:
            raise ValueError("K and M must be positive")
        perms = tuple(self.perms)
        if len(perms) != self.K:
            raise ValueError(f"expected {self.K} permutations, got {len(perms)}")
        perms = tuple(_check_perm(p, self.M, f"sigma_{a}") for a, p in enumerate(perms))
        object.__setattr__(self, "perms", perms)
        object.__setattr__(self, "offsets", _offsets(self.offsets, self.K))
        if self.modulations is not None:
            mods = tuple(self.modulations)
            if len(mods) != self.K:
                raise ValueError("need one modulation per sequence")
            for c in mods:
                _check_modulation(c, self.M)
            object.__setattr__(self, "modulations", mods)

    @property
    def N(self) -> int:
        return self.K * self.M * self.M

    def modulation(self, a: int) -> ComplexSequence:
        if self.modulations is None:
            return make_polyphase(1, [0] * self.M)
        return self.modulations[a]


def _check_modulation(c: ComplexSequence, M: int):
    if c.period != M:
        raise ValueError(f"modulation period {c.period} != M={M}")
    if not c.unit_magnitude:
        raise ValueError("modulation entries must have unit magnitude")


def _validate(seeds, validate: bool):
    if not validate:
        return
    for a, h in enumerate(seeds):
        if not is_perfect(h):
            raise NonPerfectSeedError(f"seed {a} is not perfect")


def _dft_row(N: int, freq: int) -> ComplexSequence:
    return make_polyphase(N, np.arange(N) * freq)


def build_s1(p: S1Params, *, validate: bool = True) -> SequenceSet:
    """``u_a(n) = h_a(n mod M) * w_N**(offset_a * n)``."""
    _validate(p.seeds, validate)
    seqs = [pointwise_multiply(periodic_extend(h, p.K), _dft_row(p.N, o))
            for h, o in zip(p.seeds, p.offsets)]
    return SequenceSet(tuple(seqs), p)


def build_general(p: GeneralParams, *, validate: bool = True) -> SequenceSet:
    """``u_a(n) = h_a(n mod M) * w_N**((e*a + t) * n)``."""
    _validate(p.seeds, validate)
    seqs = [pointwise_multiply(periodic_extend(h, p.K), _dft_row(p.N, p.e * a + p.t))
            for a, h in enumerate(p.seeds)]
    return SequenceSet(tuple(seqs), p)


def build_pi_f(p: PiFParams, *, validate: bool = True) -> SequenceSet:
    """``u_a(r*M + k) = h_a(k) * w_N**(f(a)*k + r*M*pi(a))``."""
    _validate(p.seeds, validate)
    N, M = p.N, p.M
    n = np.arange(N)
    r, k = np.divmod(n, M)
    seqs = [pointwise_multiply(periodic_extend(h, p.K),
                               make_polyphase(N, p.f[a] * k + r * M * p.pi[a]))
            for a, h in enumerate(p.seeds)]
    return SequenceSet(tuple(seqs), p)


def build_s2(p: S2Params) -> SequenceSet:
    """``u_a(r*M + k) = c_a(k) * w_{KM}**(r*(K*sigma_a(k) + offset_a))``."""
    K, M = p.K, p.M
    L = K * M
    r, k = np.divmod(np.arange(p.N), M)
    seqs = []
    for a in range(K):
        sigma = np.array(p.perms[a])
        base = make_polyphase(L, r * (K * sigma[k] + p.offsets[a]))
        if p.modulations is not None:
            base = pointwise_multiply(base, periodic_extend(p.modulations[a], L))
        seqs.append(base)
    return SequenceSet(tuple(seqs), p)


def perfect_zadoff_chu(M: int, q: int = 1) -> ComplexSequence:
    """Zadoff-Chu sequence of length ``M`` with root ``q``.

    ``w_{2M}**(q*n*(n+1))`` for odd ``M`` and ``w_{2M}**(q*n*n)`` for even ``M``.
    """
    if M < 1:
        raise ValueError("M must be positive")
    if math.gcd(q, M) != 1:
        raise ValueError(f"gcd(q={q}, M={M}) must be 1")
    n = np.arange(M)
    exps = q * n * (n + 1) if M % 2 else q * n * n
    return make_polyphase(2 * M, exps).reduced()


def perfect_frank_modulatable(M: int, a: int = 0, c: ComplexSequence | None = None,
                              sigma: Sequence[int] | None = None, *,
                              twist_modulus: int | None = None,
                              validate: bool = True) -> ComplexSequence:
    """Modulated generalized Frank sequence of period ``M**2``.

    ``h(n) = c(n mod M) * w_T**(-a*(n mod M)) * w_M**(floor(n/M) * sigma(n mod M))``
    with ``T = twist_modulus`` (default ``M**2``).  Any unit-magnitude period-M
    modulation keeps the sequence perfect.
    """
    if M < 1:
        raise ValueError("M must be positive")
    sigma = tuple(range(M)) if sigma is None else _check_perm(sigma, M, "sigma")
    T = M * M if twist_modulus is None else int(twist_modulus)
    if T < 1:
        raise ValueError("twist modulus must be positive")
    r, k = np.divmod(np.arange(M * M), M)
    q = common_modulus(T, M)
    exps = -a * k * (q // T) + r * np.array(sigma)[k] * (q // M)
    h = make_polyphase(q, exps)
    if c is not None:
        _check_modulation(c, M)
        h = pointwise_multiply(h, periodic_extend(c, M))
    if h.is_exact:
        h = h.reduced()
    if validate and not is_perfect(h):
        raise NonPerfectSeedError("modulated Frank sequence is not perfect")
    return h


def s2_as_s1(p: S2Params) -> S1Params:
    """The S1 parameters whose output equals ``build_s2(p)`` entrywise.

    Each seed is a Frank sequence of period ``M**2`` with twist modulus
    ``N = K*M**2``, so the DFT mixing of S1 and the seed twist cancel.
    """
    seeds = tuple(
        perfect_frank_modulatable(p.M, p.offsets[a], p.modulations[a] if p.modulations else None,
                                  p.perms[a], twist_modulus=p.N, validate=False)
        for a in range(p.K)
    )
    return S1Params(p.K, p.M * p.M, seeds, p.offsets)


def _sparse_spectrum(rows: int, cols: int, entries: dict, exact: bool) -> ZakSpectrum:
    """Spectrum with ``entries[(j, k)]`` = RootScalar/complex, zeros elsewhere."""
    if exact:
        flat = [entries.get(divmod(i, cols), RootScalar(1, 0, 0)) for i in range(rows * cols)]
        return ZakSpectrum(rows, cols, ComplexSequence.from_scalars(flat))
    data = np.zeros(rows * cols, dtype=np.complex128)
    for (j, k), v in entries.items():
        data[j * cols + k] = complex(v)
    return ZakSpectrum(rows, cols, ComplexSequence.from_values(data))


def predict_zak_s1(p: S1Params) -> list[ZakSpectrum]:
    """K x M spectra: only row ``(K - offset_a) mod K`` is nonzero.

    That row holds ``K * h_a(k) * w_N**(offset_a * k)``.
    """
    out = []
    for h, o in zip(p.seeds, p.offsets):
        j = (p.K - o) % p.K
        entries = {}
        for k in range(p.M):
            tw = RootScalar(p.N, o * k, p.K)
            entries[j, k] = tw * h[k] if h.is_exact else complex(tw) * h[k]
        out.append(_sparse_spectrum(p.K, p.M, entries, h.is_exact))
    return out


def predict_zak_s2(p: S2Params) -> list[ZakSpectrum]:
    """KM x M spectra with one nonzero per column.

    Column ``k`` holds ``K*M * c_a(k)`` at row ``(K*M - K*sigma_a(k) - offset_a) mod K*M``.
    """
    L = p.K * p.M
    out = []
    for a in range(p.K):
        c = p.modulation(a)
        entries = {}
        for k in range(p.M):
            j = (L - p.K * p.perms[a][k] - p.offsets[a]) % L
            entries[j, k] = RootScalar(1, 0, L) * c[k] if c.is_exact else L * c[k]
        out.append(_sparse_spectrum(L, p.M, entries, c.is_exact))
    return out


def alphabet_size(seqs: SequenceSet) -> int:
    """Smallest q such that every entry is a q-th root of unity."""
    q = 1
    for s in seqs:
        if not s.is_exact or not s.unit_magnitude:
            raise ValueError("alphabet size needs exact unit-magnitude entries")
        q = math.lcm(q, s.reduced().modulus)
    return q
