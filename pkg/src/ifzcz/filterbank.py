"""Matched-filter banks and their operation counts.

Four implementations compute ``theta_{y,u_a}(n) = sum_m y(m) conj(u_a(m-n))``
for every reference ``u_a`` of a set:

* ``direct``  - N-point circular correlation per filter;
* ``zak``     - FZT of the input, Zak-domain correlation, inverse FZT;
* ``fast_s1`` - the Zak route touching only the single nonzero reference row
  of a simple-construction set;
* ``fast_s2`` - the Zak route for the reduced-alphabet construction, where the
  correlation step is a gather and the inverse runs on ``M`` rows only.

Complex multiplications and additions are counted as the arithmetic is
performed.  Precomputing reference spectra is excluded from the counts (done
once per set), and the ``1/L`` inverse scaling is folded into them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .constructions import S1Params, S2Params, build_s1, build_s2
from .correlation import CorrelationProfile
from .seqcore import ComplexSequence, SequenceSet, energy
from .zak import fzt, is_power_of_two, transform_columns


@dataclass
class OpCounter:
    mults: int = 0
    adds: int = 0

    @property
    def total(self) -> int:
        return self.mults + self.adds

    def __add__(self, other: "OpCounter") -> "OpCounter":
        return OpCounter(self.mults + other.mults, self.adds + other.adds)

    def as_dict(self) -> dict:
        return {"complex_mults": self.mults, "complex_adds": self.adds, "total": self.total}


@dataclass
class FilterBankResult:
    outputs: list[CorrelationProfile]
    counter: OpCounter
    implementation: str

    @property
    def matrix(self) -> np.ndarray:
        """Outputs stacked as a K x N array."""
        return np.stack([o.array for o in self.outputs])


def _profiles(y: ComplexSequence, seqs: Sequence[ComplexSequence], rows) -> list[CorrelationProfile]:
    ey = float(energy(y))
    return [CorrelationProfile(ComplexSequence.from_values(row), ("y", a),
                               math.sqrt(ey * float(energy(u))))
            for a, (u, row) in enumerate(zip(seqs, rows))]


def _check_period(y: ComplexSequence, N: int):
    if y.period != N:
        raise ValueError(f"input period {y.period} != reference period {N}")


def direct_filterbank(y: ComplexSequence, seqs: SequenceSet) -> FilterBankResult:
    """Per lag one length-N dot product: N mults and N-1 adds."""
    N = seqs.period
    _check_period(y, N)
    counter = OpCounter()
    yv = y.array
    rows = []
    for u in seqs:
        cu = np.conj(u.array)
        out = np.empty(N, dtype=np.complex128)
        for n in range(N):
            out[n] = np.dot(yv, np.roll(cu, n))
            counter.mults += N
            counter.adds += N - 1
        rows.append(out)
    return FilterBankResult(_profiles(y, seqs.sequences, rows), counter, "direct")


class ZakReferenceBank:
    """Reference spectra ``conj(U_a) / L`` computed once per set."""

    def __init__(self, seqs: SequenceSet, L: int):
        if L < 1 or seqs.period % L:
            raise ValueError(f"L={L} does not divide N={seqs.period}")
        self.seqs = seqs
        self.L = L
        self.M = seqs.period // L
        self.conj_spectra = [np.conj(fzt(u.to_dense(), L).matrix) / L for u in seqs]


def _forward(y: ComplexSequence, L: int, counter: OpCounter) -> np.ndarray:
    M = y.period // L
    return transform_columns(y.array.reshape(L, M), inverse=False, counter=counter)


def _inverse(theta: np.ndarray, counter: OpCounter) -> np.ndarray:
    return transform_columns(theta, inverse=True, counter=counter).ravel()


def _zak_correlate_rows(Y: np.ndarray, Vc: np.ndarray, rows, L: int, counter: OpCounter) -> np.ndarray:
    """Zak correlation restricted to ``rows``; ``Vc`` holds conj(V)/L."""
    M = Y.shape[1]
    theta = np.zeros((L, M), dtype=np.complex128)
    l = np.arange(M)
    for j in rows:
        tw = np.exp(2j * np.pi * j / L)
        for k in range(M):
            prod = Y[j] * Vc[j, np.mod(l - k, M)]
            head = prod[:k].sum()
            tail = prod[k:].sum()
            counter.mults += M
            counter.adds += M - 1
            if k:
                head = head * tw
                counter.mults += 1
            theta[j, k] = head + tail
    return theta


def zak_filterbank(y: ComplexSequence, seqs: SequenceSet, L: int,
                   bank: ZakReferenceBank | None = None) -> FilterBankResult:
    """Generic Zak-domain bank: full FZT, full correlation, full inverse."""
    N = seqs.period
    _check_period(y, N)
    if L < 1 or N % L:
        raise ValueError(f"L={L} does not divide N={N}")
    if bank is None or bank.L != L or bank.seqs is not seqs:
        bank = ZakReferenceBank(seqs, L)
    counter = OpCounter()
    Y = _forward(y, L, counter)
    rows = []
    for Vc in bank.conj_spectra:
        theta = _zak_correlate_rows(Y, Vc, range(L), L, counter)
        rows.append(_inverse(theta, counter))
    return FilterBankResult(_profiles(y, seqs.sequences, rows), counter, "zak")


def fast_filterbank_s1(y: ComplexSequence, p: S1Params, seqs: SequenceSet | None = None) -> FilterBankResult:
    """Zak bank for a simple-construction set (lattice K x M).

    Only reference row ``(K - offset_a) mod K`` is nonzero, so the correlation
    touches one row and the inverse of a single row is one twiddle per output.
    """
    built = build_s1(p, validate=False)
    if seqs is not None and seqs != built:
        raise ValueError("set does not match the S1 parameters")
    seqs = built
    K, M, N = p.K, p.M, p.N
    _check_period(y, N)
    counter = OpCounter()
    Y = _forward(y, K, counter)
    r = np.arange(K)
    rows = []
    for h, o in zip(p.seeds, p.offsets):
        j = (K - o) % K
        # conj of row j of U_a = K * h(k) * w_N^(o k), over L = K
        Vc = np.zeros((K, M), dtype=np.complex128)
        Vc[j] = np.conj(h.array * np.exp(-2j * np.pi * o * np.arange(M) / N))
        theta = _zak_correlate_rows(Y, Vc, [j], K, counter)
        out = np.exp(2j * np.pi * np.outer(r, [j]) / K) * theta[j][None, :]
        counter.mults += N
        rows.append(out.ravel())
    return FilterBankResult(_profiles(y, seqs.sequences, rows), counter, "fast_s1")


def fast_filterbank_s2(y: ComplexSequence, p: S2Params, seqs: SequenceSet | None = None) -> FilterBankResult:
    """Zak bank for the reduced-alphabet construction (lattice KM x M).

    Reference column ``k`` is ``KM * c_a(k)`` at a single row, so the
    correlation is a gather of ``Y`` entries (a twiddle on wrapped terms and a
    product with ``conj(c_a)`` when modulated).  Nonzero rows are
    ``j0 + K*s`` with ``j0 = -offset_a mod K``; the inverse is an M-point IDFT
    per column followed by one twiddle per output.
    """
    built = build_s2(p)
    if seqs is not None and seqs != built:
        raise ValueError("set does not match the S2 parameters")
    seqs = built
    K, M, N = p.K, p.M, p.N
    L = K * M
    _check_period(y, N)
    counter = OpCounter()
    Y = _forward(y, L, counter)
    rvec = np.arange(L)
    rows = []
    for a in range(K):
        sigma = p.perms[a]
        off = p.offsets[a]
        c = None if p.modulations is None else np.conj(p.modulations[a].array)
        row_of = [(L - K * sigma[m] - off) % L for m in range(M)]
        j0 = (-off) % K
        # theta[s, k] for row j0 + K*s
        sub = np.zeros((M, M), dtype=np.complex128)
        for m in range(M):
            j = row_of[m]
            s = (j - j0) // K
            tw = np.exp(2j * np.pi * j / L)
            for k in range(M):
                l = m + k
                val = Y[j, l % M]
                if c is not None:
                    val = val * c[m]
                    counter.mults += 1
                if l >= M:
                    val = val * tw
                    counter.mults += 1
                sub[s, k] = val
        g = transform_columns(sub, inverse=True, counter=counter)       # (r mod M, k)
        out = np.exp(2j * np.pi * rvec * j0 / L)[:, None] * g[rvec % M]
        counter.mults += N
        rows.append(out.ravel())
    return FilterBankResult(_profiles(y, seqs.sequences, rows), counter, "fast_s2")


def run_filterbank(y: ComplexSequence, seqs: SequenceSet, impl: str, L: int | None = None) -> FilterBankResult:
    """Dispatch by name; ``fast`` picks the S1 or S2 path from provenance."""
    if impl == "direct":
        return direct_filterbank(y, seqs)
    if impl == "zak":
        if L is None:
            L = _default_lattice(seqs)
        return zak_filterbank(y, seqs, L)
    prov = seqs.provenance
    if impl in ("fast", "fast_s1") and isinstance(prov, S1Params):
        return fast_filterbank_s1(y, prov, seqs)
    if impl in ("fast", "fast_s2") and isinstance(prov, S2Params):
        return fast_filterbank_s2(y, prov, seqs)
    if impl == "fast_s1" and isinstance(prov, S2Params):
        from .constructions import s2_as_s1

        return fast_filterbank_s1(y, s2_as_s1(prov), seqs)
    raise ValueError(f"implementation {impl!r} not available for this set")


def _default_lattice(seqs: SequenceSet) -> int:
    prov = seqs.provenance
    if isinstance(prov, S1Params):
        return prov.K
    if isinstance(prov, S2Params):
        return prov.K * prov.M
    return seqs.size if seqs.period % seqs.size == 0 else seqs.period


# -- analytic models -----------------------------------------------------------

class ComplexityModel(enum.Enum):
    O11 = "O11"   # Zak bank on the simple construction
    O12 = "O12"   # Zak bank on the reduced-alphabet construction
    O2 = "O2"     # direct time-domain bank

    def evaluate(self, N: int, K: int):
        if N < 1 or K < 1:
            raise ValueError("N and K must be positive")
        if self is ComplexityModel.O2:
            return K * N * (2 * N - 1)
        if self is ComplexityModel.O11:
            if N % K or not is_power_of_two(K):
                raise ValueError(f"O11 needs a power-of-two K dividing N, got N={N}, K={K}")
            val = Fraction(3, 2) * N * (K.bit_length() - 1) + Fraction(2 * N * N, K) - N
        else:
            if not is_power_of_two(N):
                raise ValueError(f"O12 needs a power-of-two N, got {N}")
            val = Fraction(3, 2) * N * (N.bit_length() - 1)
        return int(val) if val.denominator == 1 else float(val)


def complexity_model(kind, N: int, K: int):
    return ComplexityModel(kind.value if isinstance(kind, ComplexityModel) else kind).evaluate(N, K)


# values as published for N = 128
PUBLISHED_TABLE = {
    128: {
        "O11": {32: 926, 16: 2668, 8: 4544, 4: 8848},
        "O12": {32: 1344, 16: 1344, 8: 1344, 4: 1344},
        "O2": {32: 1044480, 16: 522240, 8: 261120, 4: 130560},
    }
}


@dataclass
class TableCell:
    K: int
    value: int | float | None
    published: int | None = None
    error: str | None = None

    @property
    def annotation(self) -> str | None:
        if self.published is not None and self.value is not None and self.published != self.value:
            return f"closed form gives {self.value}; published table prints {self.published}"
        return None

    def as_dict(self) -> dict:
        d = {"K": self.K, "value": self.value}
        if self.published is not None:
            d["published"] = self.published
        if self.annotation:
            d["annotation"] = self.annotation
        if self.error:
            d["error"] = self.error
        return d


@dataclass
class ComplexityTable:
    N: int
    Ks: list[int]
    rows: dict[str, list[TableCell]] = field(default_factory=dict)

    def value(self, kind: str, K: int):
        return next(c.value for c in self.rows[kind] if c.K == K)

    def as_dict(self) -> dict:
        return {"N": self.N, "Ks": list(self.Ks),
                "rows": {k: [c.as_dict() for c in cells] for k, cells in self.rows.items()}}

    def to_csv(self) -> str:
        lines = [",".join(["model"] + [f"K={K}" for K in self.Ks])]
        for kind, cells in self.rows.items():
            if not self.Ks:
                continue
            vals = []
            for c in cells:
                v = "" if c.value is None else str(c.value)
                if c.annotation:
                    v += f" (published {c.published})"
                vals.append(v)
            lines.append(kind + "," + ",".join(vals))
        return "\n".join(lines) + "\n"


def complexity_table(N: int, Ks: Sequence[int]) -> ComplexityTable:
    """Model values over ``Ks``, annotated where a published value differs.

    Cells whose model preconditions fail carry an ``error`` and no value.
    """
    table = ComplexityTable(N, list(Ks))
    published = PUBLISHED_TABLE.get(N, {})
    for kind in ComplexityModel:
        cells = []
        for K in Ks:
            pub = published.get(kind.value, {}).get(K)
            try:
                cells.append(TableCell(K, kind.evaluate(N, K), pub))
            except ValueError as exc:
                cells.append(TableCell(K, None, pub, str(exc)))
        table.rows[kind.value] = cells
    return table


# -- detection -------------------------------------------------------------------

@dataclass(frozen=True)
class Detection:
    index: int
    lag: int
    magnitude: float


def detect(y: ComplexSequence, seqs: SequenceSet, threshold: float,
           impl: str = "direct", L: int | None = None) -> list[Detection]:
    """Correlation peaks above ``threshold * energy(u_a)`` for every filter.

    Sorted by decreasing magnitude, then index, then lag.
    """
    if threshold <= 0:
        raise ValueError("threshold must be positive")
    result = run_filterbank(y, seqs, impl, L)
    hits = []
    for a, (prof, u) in enumerate(zip(result.outputs, seqs)):
        mags = np.abs(prof.array)
        limit = threshold * float(energy(u))
        for n in np.flatnonzero(mags > limit):
            hits.append(Detection(a, int(n), float(mags[n])))
    hits.sort(key=lambda d: (-round(d.magnitude, 6), d.index, d.lag))
    return hits


# -- measured vs model ---------------------------------------------------------

@dataclass
class ComplexityReport:
    N: int
    K: int
    measured: dict[str, OpCounter]
    models: dict[str, int | float | None]

    def ratios(self) -> dict[str, float]:
        pairs = {"direct": "O2", "fast_s1": "O11", "fast_s2": "O12"}
        out = {}
        for impl, model in pairs.items():
            m = self.models.get(model)
            if impl in self.measured and m:
                out[impl] = self.measured[impl].total / m
        return out

    def as_dict(self) -> dict:
        return {"N": self.N, "K": self.K,
                "measured": {k: v.as_dict() for k, v in self.measured.items()},
                "models": self.models, "measured_over_model": self.ratios()}


def measure_complexity(N: int, K: int, rng: np.random.Generator | None = None) -> ComplexityReport:
    """Instrumented counts on generated sets of period N and size K.

    The S1 set uses Zadoff-Chu seeds; the S2 set is included only when
    ``N = K*M**2`` for an integer ``M``.
    """
    from .constructions import perfect_zadoff_chu

    if N % K:
        raise ValueError("K must divide N")
    rng = np.random.default_rng(0) if rng is None else rng
    y = ComplexSequence.from_values(rng.normal(size=N) + 1j * rng.normal(size=N))
    M = N // K
    p1 = S1Params.uniform(K, perfect_zadoff_chu(M, 1))
    s1 = build_s1(p1, validate=False)
    measured = {
        "direct": direct_filterbank(y, s1).counter,
        "zak": zak_filterbank(y, s1, K).counter,
        "fast_s1": fast_filterbank_s1(y, p1, s1).counter,
    }
    m2 = math.isqrt(M)
    if m2 * m2 == M:
        p2 = S2Params(K, m2, [tuple(range(m2))] * K)
        measured["fast_s2"] = fast_filterbank_s2(y, p2).counter
    models = {}
    for kind in ComplexityModel:
        try:
            models[kind.value] = kind.evaluate(N, K)
        except ValueError:
            models[kind.value] = None
    return ComplexityReport(N, K, measured, models)
