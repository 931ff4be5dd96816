"""Exact and floating representations of complex sequences.

Roots of unity follow the negative-exponent convention

    w_q = exp(-2j * pi / q)

so ``RootScalar(q, e)`` is ``exp(-2j*pi*e/q)``.  Note that this is the sign
used by the forward DFT in numpy, but the *opposite* of the "positive
frequency" convention found in many textbooks on polyphase sequences.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from . import _cyclotomic

MODULUS_CAP = 2**31


class ModulusOverflowError(ValueError):
    """Raised when a common modulus would exceed :data:`MODULUS_CAP`."""


def common_modulus(*moduli: int, cap: int = MODULUS_CAP) -> int:
    q = math.lcm(*moduli)
    if q > cap:
        raise ModulusOverflowError(f"lcm{tuple(moduli)} = {q} exceeds cap {cap}")
    return q


def root_values(modulus: int, exponents) -> np.ndarray:
    """Dense values of ``w_modulus ** exponents``."""
    e = np.mod(np.asarray(exponents, dtype=np.int64), modulus)
    shape = e.shape
    e = np.atleast_1d(e)
    out = np.exp(-2j * np.pi * e / modulus)
    # quarter turns are exact: no 1e-16 residue on +-1, +-i
    quarter = (4 * e) % modulus == 0
    if quarter.any():
        out[quarter] = np.array([1, -1j, -1, 1j])[(4 * e[quarter]) // modulus]
    return out.reshape(shape)


@dataclass(frozen=True, eq=False)
class RootScalar:
    """``scale * w_modulus**exponent``; a zero scale is the exact zero."""

    modulus: int
    exponent: int = 0
    scale: Fraction = Fraction(1)

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        scale = Fraction(self.scale)
        if scale < 0:
            raise ValueError("scale must be non-negative")
        object.__setattr__(self, "scale", scale)
        object.__setattr__(self, "exponent", 0 if scale == 0 else self.exponent % self.modulus)

    @property
    def zero_flag(self) -> bool:
        return self.scale == 0

    @classmethod
    def from_rational(cls, x) -> "RootScalar":
        x = Fraction(x)
        return cls(2, 1 if x < 0 else 0, abs(x))

    def lift(self, modulus: int) -> "RootScalar":
        if modulus % self.modulus:
            raise ValueError(f"{modulus} is not a multiple of {self.modulus}")
        return RootScalar(modulus, self.exponent * (modulus // self.modulus), self.scale)

    def reduced(self) -> "RootScalar":
        if self.zero_flag:
            return RootScalar(1, 0, 0)
        g = math.gcd(self.exponent, self.modulus)
        return RootScalar(self.modulus // g, self.exponent // g, self.scale)

    def _key(self):
        r = self.reduced()
        return r.modulus, r.exponent, r.scale

    def __eq__(self, other):
        if isinstance(other, (int, Rational)):
            other = RootScalar.from_rational(other)
        if isinstance(other, RootScalar):
            return self._key() == other._key()
        if isinstance(other, complex):
            return False
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __complex__(self):
        return complex(float(self.scale) * root_values(self.modulus, self.exponent))

    def __abs__(self):
        return self.scale

    def conjugate(self) -> "RootScalar":
        return RootScalar(self.modulus, -self.exponent, self.scale)

    def __neg__(self):
        return self * RootScalar(2, 1)

    def __mul__(self, other):
        if isinstance(other, (int, Rational)):
            other = RootScalar.from_rational(other)
        if isinstance(other, RootScalar):
            q = common_modulus(self.modulus, other.modulus)
            e = self.exponent * (q // self.modulus) + other.exponent * (q // other.modulus)
            return RootScalar(q, e, self.scale * other.scale)
        if isinstance(other, (complex, float)):
            return complex(self) * other
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if self.zero_flag:
                raise ZeroDivisionError("zero RootScalar has no inverse")
            return RootScalar(self.modulus, -self.exponent * -k, self.scale**k)
        return RootScalar(self.modulus, self.exponent * k, self.scale**k)

    def __truediv__(self, other):
        if isinstance(other, RootScalar):
            return self * other**-1
        if isinstance(other, (int, Rational)):
            return self * RootScalar.from_rational(Fraction(1) / Fraction(other))
        return complex(self) / other

    def __add__(self, other):
        """Exact when the sum is zero or a single scaled root, else complex."""
        if isinstance(other, (int, Rational)):
            other = RootScalar.from_rational(other)
        if not isinstance(other, RootScalar):
            return complex(self) + other
        if self.zero_flag:
            return other
        if other.zero_flag:
            return self
        q = common_modulus(self.modulus, other.modulus)
        a, b = self.lift(q), other.lift(q)
        if a.exponent == b.exponent:
            return RootScalar(q, a.exponent, a.scale + b.scale)
        if 2 * ((a.exponent - b.exponent) % q) == q:
            if a.scale >= b.scale:
                return RootScalar(q, a.exponent, a.scale - b.scale)
            return RootScalar(q, b.exponent, b.scale - a.scale)
        return complex(a) + complex(b)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __repr__(self):
        if self.zero_flag:
            return "RootScalar(0)"
        s = "" if self.scale == 1 else f"{self.scale}*"
        return f"RootScalar({s}w{self.modulus}^{self.exponent})"


class ComplexSequence:
    """A period-N complex sequence.

    Exact sequences store a common modulus ``q``, integer exponents and
    non-negative rational scales (entry ``n`` is ``scales[n] * w_q**exponents[n]``).
    Dense sequences store a complex128 array.  Indexing is cyclic.
    """

    __slots__ = ("_modulus", "_exponents", "_scales", "_dense")

    def __init__(self, *, modulus=None, exponents=None, scales=None, values=None):
        if values is not None:
            arr = np.array(values, dtype=np.complex128).ravel()
            if arr.size == 0:
                raise ValueError("empty sequence")
            if not np.all(np.isfinite(arr)):
                raise ValueError("dense entries must be finite")
            arr.setflags(write=False)
            self._modulus = None
            self._exponents = None
            self._scales = None
            self._dense = arr
            return
        if modulus is None or exponents is None:
            raise ValueError("need either values or modulus+exponents")
        if modulus < 1:
            raise ValueError("modulus must be positive")
        e = np.mod(np.array(exponents, dtype=np.int64).ravel(), modulus)
        if e.size == 0:
            raise ValueError("empty sequence")
        if scales is not None:
            scales = tuple(Fraction(s) for s in scales)
            if len(scales) != e.size:
                raise ValueError("scales and exponents differ in length")
            if any(s < 0 for s in scales):
                raise ValueError("scales must be non-negative")
            e[[s == 0 for s in scales]] = 0
            if all(s == 1 for s in scales):
                scales = None
        e.setflags(write=False)
        self._modulus = int(modulus)
        self._exponents = e
        self._scales = scales
        self._dense = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def polyphase(cls, modulus: int, exponents, scales=None) -> "ComplexSequence":
        return cls(modulus=modulus, exponents=exponents, scales=scales)

    @classmethod
    def from_values(cls, values) -> "ComplexSequence":
        return cls(values=values)

    @classmethod
    def from_scalars(cls, scalars: Sequence) -> "ComplexSequence":
        """Build from RootScalars (exact) or anything complex-convertible."""
        if scalars and all(isinstance(s, RootScalar) for s in scalars):
            q = common_modulus(*(s.modulus for s in scalars))
            lifted = [s.lift(q) for s in scalars]
            return cls(modulus=q, exponents=[s.exponent for s in lifted],
                       scales=[s.scale for s in lifted])
        return cls(values=[complex(s) for s in scalars])

    # -- basic properties ---------------------------------------------------
    @property
    def period(self) -> int:
        return len(self._exponents) if self._modulus is not None else len(self._dense)

    def __len__(self):
        return self.period

    @property
    def is_exact(self) -> bool:
        return self._modulus is not None

    @property
    def modulus(self) -> int | None:
        return self._modulus

    @property
    def exponents(self) -> np.ndarray:
        self._require_exact()
        return self._exponents

    @property
    def scales(self) -> tuple[Fraction, ...]:
        self._require_exact()
        if self._scales is None:
            return (Fraction(1),) * self.period
        return self._scales

    @property
    def unit_magnitude(self) -> bool:
        if self.is_exact:
            return self._scales is None
        return bool(np.allclose(np.abs(self._dense), 1.0, rtol=0, atol=1e-12))

    def _require_exact(self):
        if not self.is_exact:
            raise TypeError("operation needs an exact sequence")

    @property
    def array(self) -> np.ndarray:
        """Dense complex128 values (read-only)."""
        if self._dense is None:
            vals = root_values(self._modulus, self._exponents)
            if self._scales is not None:
                vals = vals * np.array([float(s) for s in self._scales])
            vals.setflags(write=False)
            self._dense = vals
        return self._dense

    def integer_scales(self) -> tuple[np.ndarray, int]:
        """Scales as integers over a common denominator."""
        self._require_exact()
        if self._scales is None:
            return np.ones(self.period, dtype=np.int64), 1
        den = math.lcm(*(s.denominator for s in self._scales))
        nums = [s.numerator * (den // s.denominator) for s in self._scales]
        dtype = np.int64 if max(nums) < 2**40 else object
        return np.array(nums, dtype=dtype), den

    # -- element access -----------------------------------------------------
    def __getitem__(self, n):
        if isinstance(n, slice):
            raise TypeError("slicing is not supported; use .array")
        n = int(n) % self.period
        if self.is_exact:
            return RootScalar(self._modulus, int(self._exponents[n]), self.scales[n])
        return complex(self._dense[n])

    def __iter__(self):
        for n in range(self.period):
            yield self[n]

    # -- transforms ---------------------------------------------------------
    def lift(self, modulus: int) -> "ComplexSequence":
        self._require_exact()
        if modulus % self._modulus:
            raise ValueError(f"{modulus} is not a multiple of {self._modulus}")
        f = modulus // self._modulus
        return ComplexSequence(modulus=modulus, exponents=self._exponents * f, scales=self._scales)

    def reduced(self) -> "ComplexSequence":
        """Same sequence over the smallest modulus that expresses it."""
        self._require_exact()
        g = math.gcd(self._modulus, *(int(x) for x in self._exponents))
        return ComplexSequence(modulus=self._modulus // g, exponents=self._exponents // g,
                               scales=self._scales)

    def to_dense(self) -> "ComplexSequence":
        if not self.is_exact:
            return self
        return ComplexSequence(values=self.array)

    def conj(self) -> "ComplexSequence":
        if self.is_exact:
            return ComplexSequence(modulus=self._modulus, exponents=-self._exponents, scales=self._scales)
        return ComplexSequence(values=np.conj(self._dense))

    def shift(self, tau: int) -> "ComplexSequence":
        """``out(n) = self(n + tau)``."""
        if self.is_exact:
            sc = None if self._scales is None else np.roll(np.array(self._scales, dtype=object), -tau)
            return ComplexSequence(modulus=self._modulus, exponents=np.roll(self._exponents, -tau),
                                   scales=sc)
        return ComplexSequence(values=np.roll(self._dense, -tau))

    def times(self, c) -> "ComplexSequence":
        """Multiply every entry by the scalar ``c``."""
        if isinstance(c, (int, Rational)):
            c = RootScalar.from_rational(c)
        if self.is_exact and isinstance(c, RootScalar):
            q = common_modulus(self._modulus, c.modulus)
            e = self._exponents * (q // self._modulus) + c.exponent * (q // c.modulus)
            return ComplexSequence(modulus=q, exponents=e, scales=[s * c.scale for s in self.scales])
        return ComplexSequence(values=self.array * complex(c))

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ComplexSequence):
            return NotImplemented
        if self.period != other.period:
            return False
        if self.is_exact and other.is_exact:
            if self.scales != other.scales:
                return False
            q = common_modulus(self._modulus, other._modulus)
            return bool(np.array_equal(self.lift(q)._exponents, other.lift(q)._exponents))
        if self.is_exact or other.is_exact:
            return False
        return bool(np.array_equal(self._dense, other._dense))

    def __hash__(self):
        if self.is_exact:
            r = self.reduced()
            return hash((r._modulus, r._exponents.tobytes(), r._scales))
        return hash(self._dense.tobytes())

    def allclose(self, other: "ComplexSequence", atol: float = 1e-12) -> bool:
        return self.period == other.period and bool(
            np.max(np.abs(self.array - other.array)) <= atol)

    def __repr__(self):
        if self.is_exact:
            if self._scales is None:
                return f"ComplexSequence(w{self._modulus}^{self._exponents.tolist()})"
            return (f"ComplexSequence(w{self._modulus}^{self._exponents.tolist()}, "
                    f"scales={[str(s) for s in self._scales]})")
        return f"ComplexSequence({np.array2string(self._dense, precision=4)})"


@dataclass(frozen=True)
class SequenceSet:
    """K sequences of a common period, plus an optional construction record."""

    sequences: tuple[ComplexSequence, ...]
    provenance: object = None

    def __post_init__(self):
        seqs = tuple(self.sequences)
        if not seqs:
            raise ValueError("a sequence set needs at least one sequence")
        if len({s.period for s in seqs}) != 1:
            raise ValueError("all sequences must share one period")
        object.__setattr__(self, "sequences", seqs)

    @property
    def size(self) -> int:
        return len(self.sequences)

    @property
    def period(self) -> int:
        return self.sequences[0].period

    @property
    def is_exact(self) -> bool:
        return all(s.is_exact for s in self.sequences)

    def __len__(self):
        return self.size

    def __getitem__(self, a: int) -> ComplexSequence:
        return self.sequences[a]

    def __iter__(self):
        return iter(self.sequences)

    def __eq__(self, other):
        if not isinstance(other, SequenceSet):
            return NotImplemented
        return self.sequences == other.sequences

    def __hash__(self):
        return hash(self.sequences)


@dataclass(frozen=True)
class TolerancePolicy:
    """``|z|`` counts as zero iff ``|z| <= abs_eps + rel_eps * reference``."""

    abs_eps: float = 1e-9
    rel_eps: float = 1e-12

    def __post_init__(self):
        if self.abs_eps < 0 or self.rel_eps < 0:
            raise ValueError("tolerances must be non-negative")

    def threshold(self, reference: float = 0.0) -> float:
        return self.abs_eps + self.rel_eps * float(reference)

    def is_zero(self, z, reference: float = 0.0) -> bool:
        if isinstance(z, RootScalar):
            return z.zero_flag
        return abs(z) <= self.threshold(reference)


DEFAULT_TOLERANCE = TolerancePolicy()


def make_polyphase(modulus: int, exponents: Iterable[int]) -> ComplexSequence:
    """Unit-magnitude sequence ``w_modulus ** exponents[n]``."""
    exponents = list(exponents)
    if not exponents:
        raise ValueError("exponent list is empty")
    if modulus < 1:
        raise ValueError("modulus must be positive")
    return ComplexSequence.polyphase(modulus, exponents)


def to_dense(seq: ComplexSequence) -> ComplexSequence:
    return seq.to_dense()


def pointwise_multiply(a: ComplexSequence, b: ComplexSequence) -> ComplexSequence:
    if a.period != b.period:
        raise ValueError(f"period mismatch: {a.period} != {b.period}")
    if a.is_exact and b.is_exact:
        q = common_modulus(a.modulus, b.modulus)
        e = a.lift(q).exponents + b.lift(q).exponents
        scales = None
        if a._scales is not None or b._scales is not None:
            scales = [x * y for x, y in zip(a.scales, b.scales)]
        return ComplexSequence.polyphase(q, e, scales)
    return ComplexSequence.from_values(a.array * b.array)


def periodic_extend(seq: ComplexSequence, times: int) -> ComplexSequence:
    if times < 1:
        raise ValueError("times must be a positive integer")
    if seq.is_exact:
        scales = None if seq._scales is None else seq._scales * times
        return ComplexSequence.polyphase(seq.modulus, np.tile(seq.exponents, times), scales)
    return ComplexSequence.from_values(np.tile(seq.array, times))


def energy(seq: ComplexSequence):
    """Sum of squared magnitudes: a Fraction for exact input, a float otherwise."""
    if seq.is_exact:
        return sum((s * s for s in seq.scales), Fraction(0))
    return float(np.sum(np.abs(seq.array) ** 2))


def exact_sum(modulus: int, n_out: int, rows, exps, weights=None, denominator: int = 1) -> ComplexSequence:
    """Evaluate ``n_out`` sums of weighted ``w_modulus`` powers.

    The result is exact when every sum is zero or a single scaled root of
    unity and dense otherwise.  Weights are integers; every sum is divided by
    ``denominator``.
    """
    res = _cyclotomic.accumulate(modulus, n_out, rows, exps, weights, denominator)
    if isinstance(res, tuple):
        q, e, sc = res
        return ComplexSequence.polyphase(q, e, sc)
    return ComplexSequence.from_values(res)
