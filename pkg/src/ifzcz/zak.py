"""Finite Zak transform (FZT) on an L x M lattice.

For a sequence ``u`` of period ``N = L*M`` and ``n = r*M + k``::

    U(j, k) = sum_r u(r*M + k) * w_L**(r*j)              (forward)
    u(r*M + k) = (1/L) * sum_j U(j, k) * w_L**(-r*j)     (inverse)

Columns extend quasi-periodically: ``U(j, k + M) = w_L**(-j) * U(j, k)``.
Exact input gives exact spectra whenever every entry is a scaled root of
unity; otherwise results are dense complex128.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .seqcore import (
    DEFAULT_TOLERANCE,
    ComplexSequence,
    RootScalar,
    TolerancePolicy,
    common_modulus,
    exact_sum,
)


@dataclass(frozen=True)
class ZakSpectrum:
    """An ``rows x cols`` Zak matrix stored row-major in a ComplexSequence."""

    rows: int
    cols: int
    data: ComplexSequence

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("Zak lattice dimensions must be positive")
        if self.data.period != self.rows * self.cols:
            raise ValueError("data length does not match rows*cols")

    @classmethod
    def from_matrix(cls, matrix) -> "ZakSpectrum":
        m = np.asarray(matrix, dtype=np.complex128)
        return cls(m.shape[0], m.shape[1], ComplexSequence.from_values(m.ravel()))

    @property
    def source_period(self) -> int:
        return self.rows * self.cols

    @property
    def is_exact(self) -> bool:
        return self.data.is_exact

    @property
    def matrix(self) -> np.ndarray:
        return self.data.array.reshape(self.rows, self.cols)

    def __getitem__(self, jk):
        j, k = jk
        if not (0 <= j < self.rows and 0 <= k < self.cols):
            raise IndexError("use zak_at for quasi-periodic access")
        return self.data[j * self.cols + k]

    def __eq__(self, other):
        if not isinstance(other, ZakSpectrum):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    __hash__ = None


@dataclass(frozen=True)
class FourierSpectrum:
    """N-point DFT bins with the ``w_N`` (negative exponent) convention."""

    bins: np.ndarray

    @property
    def period(self) -> int:
        return len(self.bins)


@dataclass(frozen=True)
class SparsityProfile:
    rows: int
    cols: int
    positions: tuple[tuple[int, int], ...]

    @property
    def row_counts(self) -> list[int]:
        counts = [0] * self.rows
        for j, _ in self.positions:
            counts[j] += 1
        return counts

    @property
    def col_counts(self) -> list[int]:
        counts = [0] * self.cols
        for _, k in self.positions:
            counts[k] += 1
        return counts

    @property
    def nonzero_rows(self) -> list[int]:
        return [j for j, c in enumerate(self.row_counts) if c]

    def __len__(self):
        return len(self.positions)


# -- counted dense DFT kernels ---------------------------------------------

def is_power_of_two(n: int) -> bool:
    return n >= 1 and n & (n - 1) == 0


def _bit_reversal(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev


def dft_columns(A: np.ndarray, inverse: bool = False, counter=None) -> np.ndarray:
    """Unscaled DFT of every column by direct summation.

    Counts ``L*L`` multiplications and ``L*(L-1)`` additions per column.
    """
    L, M = A.shape
    sign = 1 if inverse else -1
    r = np.arange(L)
    F = np.exp(sign * 2j * np.pi * np.outer(r, r) / L)
    if counter is not None:
        counter.mults += M * L * L
        counter.adds += M * L * (L - 1)
    return F @ A


def fft_radix2_columns(A: np.ndarray, inverse: bool = False, counter=None) -> np.ndarray:
    """Unscaled iterative radix-2 DIT transform along axis 0.

    One multiplication and two additions per butterfly, i.e.
    ``(L/2)*log2(L)`` multiplications and ``L*log2(L)`` additions per column.
    """
    L, M = A.shape
    if not is_power_of_two(L):
        raise ValueError(f"radix-2 transform needs a power-of-two length, got {L}")
    sign = 1 if inverse else -1
    X = np.asarray(A, dtype=np.complex128)[_bit_reversal(L)]
    size = 2
    while size <= L:
        half = size // 2
        tw = np.exp(sign * 2j * np.pi * np.arange(half) / size)
        X = X.reshape(L // size, size, M)
        top = X[:, :half, :]
        bot = X[:, half:, :] * tw[None, :, None]
        X = np.concatenate([top + bot, top - bot], axis=1).reshape(L, M)
        if counter is not None:
            counter.mults += (L // 2) * M
            counter.adds += L * M
        size *= 2
    return X


def transform_columns(A: np.ndarray, inverse: bool = False, counter=None, method: str = "auto"):
    if method == "auto":
        method = "radix2" if is_power_of_two(A.shape[0]) else "direct"
    if method == "radix2":
        return fft_radix2_columns(A, inverse, counter)
    if method == "direct":
        return dft_columns(A, inverse, counter)
    raise ValueError(f"unknown transform method {method!r}")


# -- transforms ---------------------------------------------------------------

def _check_divisor(N: int, L: int) -> int:
    if L < 1 or N % L:
        raise ValueError(f"L={L} does not divide N={N}")
    return N // L


def fzt(u: ComplexSequence, L: int, method: str = "direct") -> ZakSpectrum:
    """L x M finite Zak transform.

    ``method`` selects the dense kernel: ``"direct"`` summation (the
    definition) or ``"radix2"`` for power-of-two ``L``.  Exact input ignores it.
    """
    N = u.period
    M = _check_divisor(N, L)
    if u.is_exact:
        q = common_modulus(u.modulus, L)
        eu = u.lift(q).exponents.reshape(L, M)
        r = np.arange(L)
        j = np.arange(L)
        # term (j, r, k): u(rM+k) * w_L^(r j)
        exps = eu[None, :, :] + (np.outer(j, r) * (q // L))[:, :, None]
        rows = np.broadcast_to((j[:, None] * M)[:, :, None] + np.arange(M)[None, None, :], (L, L, M))
        weights = None
        w, den = u.integer_scales()
        if u._scales is not None:
            weights = np.broadcast_to(w.reshape(L, M)[None, :, :], (L, L, M))
        data = exact_sum(q, N, rows, exps, weights, den)
        return ZakSpectrum(L, M, data)
    A = u.array.reshape(L, M)
    if method == "direct":
        r = np.arange(L)
        U = np.zeros((L, M), dtype=np.complex128)
        for rr in r:
            U += np.outer(np.exp(-2j * np.pi * rr * r / L), A[rr])
    else:
        U = transform_columns(A, inverse=False, method=method)
    return ZakSpectrum(L, M, ComplexSequence.from_values(U.ravel()))


def ifzt(Z: ZakSpectrum, method: str = "direct") -> ComplexSequence:
    """Inverse FZT with the 1/L normalisation."""
    L, M = Z.rows, Z.cols
    if Z.is_exact:
        q = common_modulus(Z.data.modulus, L)
        ez = Z.data.lift(q).exponents.reshape(L, M)
        r = np.arange(L)
        j = np.arange(L)
        # term (r, j, k): U(j,k) * w_L^(-r j)
        exps = ez[None, :, :] - (np.outer(r, j) * (q // L))[:, :, None]
        rows = np.broadcast_to((r[:, None] * M)[:, :, None] + np.arange(M)[None, None, :], (L, L, M))
        w, den = Z.data.integer_scales()
        weights = np.broadcast_to(w.reshape(L, M)[None, :, :], (L, L, M))
        return exact_sum(q, L * M, rows, exps, weights, den * L)
    U = Z.matrix
    if method == "direct":
        j = np.arange(L)
        A = np.zeros((L, M), dtype=np.complex128)
        for jj in j:
            A += np.outer(np.exp(2j * np.pi * jj * j / L), U[jj])
    else:
        A = transform_columns(U, inverse=True, method=method)
    return ComplexSequence.from_values(A.ravel() / L)


def zak_at(Z: ZakSpectrum, j: int, k: int):
    """Quasi-periodically extended entry: ``U(j, k + p*M) = w_L**(-p*j) U(j, k)``."""
    L, M = Z.rows, Z.cols
    j %= L
    p, k0 = divmod(k, M)
    base = Z[j, k0]
    if p == 0:
        return base
    if isinstance(base, RootScalar):
        return base * RootScalar(L, -p * j)
    return base * complex(RootScalar(L, -p * j))


def zak_correlation(U: ZakSpectrum, V: ZakSpectrum) -> ZakSpectrum:
    """Zak-domain cross-correlation.

    ``Theta(j,k) = sum_l U(j,l) conj(V(j, l-k))`` with ``V`` extended
    quasi-periodically, i.e. a factor ``w_L**(-j)`` on the wrapped terms.
    Equals ``fzt(cross_correlation(u, v), L)``.
    """
    if (U.rows, U.cols) != (V.rows, V.cols):
        raise ValueError("Zak spectra must share their lattice shape")
    L, M = U.rows, U.cols
    j = np.arange(L)[:, None, None]
    k = np.arange(M)[None, :, None]
    l = np.arange(M)[None, None, :]
    vidx = np.mod(l - k, M)
    wrapped = l < k
    if U.is_exact and V.is_exact:
        q = common_modulus(U.data.modulus, V.data.modulus, L)
        eu = U.data.lift(q).exponents.reshape(L, M)
        ev = V.data.lift(q).exponents.reshape(L, M)
        jj = np.broadcast_to(j, (L, M, M))
        exps = eu[jj, np.broadcast_to(l, (L, M, M))] - ev[jj, np.broadcast_to(vidx, (L, M, M))]
        exps = exps - wrapped * j * (q // L)
        rows = np.broadcast_to(j * M + k, (L, M, M))
        wu, du = U.data.integer_scales()
        wv, dv = V.data.integer_scales()
        weights = (wu.reshape(L, M)[jj, np.broadcast_to(l, (L, M, M))]
                   * wv.reshape(L, M)[jj, np.broadcast_to(vidx, (L, M, M))])
        return ZakSpectrum(L, M, exact_sum(q, L * M, rows, exps, weights, du * dv))
    Um, Vm = U.matrix, V.matrix
    jj = np.arange(L)[:, None, None]
    terms = Um[jj, l] * np.conj(Vm[jj, vidx])
    twiddle = np.where(wrapped, np.exp(2j * np.pi * j / L), 1.0)
    theta = (terms * twiddle).sum(axis=2)
    return ZakSpectrum(L, M, ComplexSequence.from_values(theta.ravel()))


def zak_to_fourier(Z: ZakSpectrum) -> FourierSpectrum:
    """``u_hat(i*L + j) = sum_k U(j,k) w_N**(j*k) w_M**(i*k)``."""
    L, M = Z.rows, Z.cols
    N = L * M
    U = Z.matrix
    j = np.arange(L)
    k = np.arange(M)
    i = np.arange(M)
    tw_n = np.exp(-2j * np.pi * np.outer(j, k) / N)     # (j, k)
    tw_m = np.exp(-2j * np.pi * np.outer(k, i) / M)     # (k, i)
    grid = (U * tw_n) @ tw_m                              # (j, i)
    bins = np.empty(N, dtype=np.complex128)
    bins[(i[None, :] * L + j[:, None]).ravel()] = grid.ravel()
    return FourierSpectrum(bins)


def sparsity(Z: ZakSpectrum, tol: TolerancePolicy = DEFAULT_TOLERANCE) -> SparsityProfile:
    """Positions of the nonzero Zak coefficients.

    Dense spectra use ``tol`` with the largest coefficient magnitude as the
    reference.
    """
    if Z.is_exact:
        nz = [s != 0 for s in Z.data.scales]
    else:
        mags = np.abs(Z.data.array)
        nz = mags > tol.threshold(mags.max(initial=0.0))
    positions = tuple(divmod(i, Z.cols) for i, flag in enumerate(nz) if flag)
    return SparsityProfile(Z.rows, Z.cols, positions)
