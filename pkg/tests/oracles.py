"""Independent reference computations used by the tests.

Everything here works on plain numpy arrays and shares no code with the
package under test.
"""

import numpy as np


def correlate(a, b):
    """theta(n) = sum_m a(m) conj(b(m - n)), by brute force."""
    a, b = np.asarray(a, complex), np.asarray(b, complex)
    N = len(a)
    return np.array([sum(a[m] * np.conj(b[(m - n) % N]) for m in range(N)) for n in range(N)])


def dft(u):
    u = np.asarray(u, complex)
    N = len(u)
    n = np.arange(N)
    return np.exp(-2j * np.pi * np.outer(n, n) / N) @ u


def dft_matrix(L):
    j = np.arange(L)
    return np.exp(-2j * np.pi * np.outer(j, j) / L)


def zak(u, L):
    """F_L applied to the L x M row-major reshaping."""
    u = np.asarray(u, complex)
    return dft_matrix(L) @ u.reshape(L, -1)


def s1_values(K, M, seeds, offsets=None):
    N = K * M
    offsets = range(K) if offsets is None else offsets
    n = np.arange(N)
    return [np.asarray(h, complex)[n % M] * np.exp(-2j * np.pi * o * n / N)
            for h, o in zip(seeds, offsets)]


def zone_length(seqs, atol=1e-9):
    """Largest T with every cross profile zero on [0, T] and autos on (0, T]."""
    N = len(seqs[0])
    best = N - 1
    for a, u in enumerate(seqs):
        for b, v in enumerate(seqs):
            prof = np.abs(correlate(u, v))
            start = 1 if a == b else 0
            for n in range(start, N):
                if prof[n] > atol:
                    best = min(best, n - 1)
                    break
    return best


def correlate_fast(a, b):
    """Vectorised form of :func:`correlate` (same O(N^2) sum)."""
    a, b = np.asarray(a, complex), np.asarray(b, complex)
    N = len(a)
    idx = (np.arange(N)[None, :] - np.arange(N)[:, None]) % N   # [n, m] -> m - n
    return np.conj(b)[idx] @ a


def zone_and_if(seqs, atol=1e-9):
    """(zone length, interference free) by exhaustive profiles."""
    N = len(seqs[0])
    zone = N - 1
    free = True
    for a, u in enumerate(seqs):
        for b, v in enumerate(seqs):
            prof = np.abs(correlate_fast(u, v))
            bad = np.flatnonzero(prof[(1 if a == b else 0):] > atol)
            if bad.size:
                zone = min(zone, int(bad[0]) + (1 if a == b else 0) - 1)
                if a != b:
                    free = False
    return zone, free
