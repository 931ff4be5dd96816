from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ifzcz.seqcore import (
    ComplexSequence,
    ModulusOverflowError,
    RootScalar,
    SequenceSet,
    TolerancePolicy,
    common_modulus,
    energy,
    make_polyphase,
    periodic_extend,
    pointwise_multiply,
    to_dense,
)

moduli = st.integers(1, 64)


class TestMakePolyphase:
    def test_example1_seed(self):
        h = make_polyphase(16, [0, 0, 0, 8])
        np.testing.assert_allclose(h.array, [1, 1, 1, -1], atol=1e-15)

    def test_modulus_one(self):
        assert make_polyphase(1, [0, 0]) == ComplexSequence.polyphase(1, [0, 0])
        np.testing.assert_array_equal(make_polyphase(1, [0, 0]).array, [1, 1])

    def test_quarter_root(self):
        s = make_polyphase(4, [0, 1])
        np.testing.assert_allclose(s.array, [1, -1j], atol=1e-15)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            make_polyphase(4, [])

    @given(moduli, st.lists(st.integers(-1000, 1000), min_size=1, max_size=20))
    def test_exponents_reduced(self, q, exps):
        s = make_polyphase(q, exps)
        assert s == make_polyphase(q, [e % q for e in exps])
        assert all(0 <= e < q for e in s.exponents)


class TestToDense:
    def test_signs(self):
        d = to_dense(make_polyphase(2, [0, 1]))
        assert not d.is_exact
        np.testing.assert_array_equal(d.array, [1.0, -1.0])

    def test_minus_i(self):
        d = to_dense(make_polyphase(4, [1]))
        assert abs(d.array[0] - (-1j)) <= 1e-15

    def test_all_sixteenth_roots(self):
        d = to_dense(make_polyphase(16, range(16)))
        ref = np.exp(-2j * np.pi * np.arange(16) / 16)
        assert np.max(np.abs(d.array - ref)) <= 1e-15


class TestPointwise:
    def test_identity_factor(self):
        ones = make_polyphase(1, [0] * 4)
        v = make_polyphase(4, [0, 3, 2, 1])   # (1, i, -1, -i)
        assert pointwise_multiply(ones, v) == v
        np.testing.assert_allclose(v.array, [1, 1j, -1, -1j], atol=1e-15)

    def test_i_squared(self):
        v = make_polyphase(4, [0, 3])
        out = pointwise_multiply(v, v)
        assert out == make_polyphase(2, [0, 1])

    def test_builds_example1_u1(self):
        h = periodic_extend(make_polyphase(2, [0, 0, 0, 1]), 4)
        col = make_polyphase(16, range(16))
        u1 = pointwise_multiply(h, col)
        assert list(u1.lift(16).exponents) == [0, 1, 2, 11, 4, 5, 6, 15, 8, 9, 10, 3, 12, 13, 14, 7]

    def test_period_mismatch(self):
        with pytest.raises(ValueError):
            pointwise_multiply(make_polyphase(2, [0, 1]), make_polyphase(2, [0]))

    @settings(max_examples=50)
    @given(moduli, moduli, st.data())
    def test_dense_homomorphism(self, q1, q2, data):
        n = data.draw(st.integers(1, 12))
        e1 = data.draw(st.lists(st.integers(0, 500), min_size=n, max_size=n))
        e2 = data.draw(st.lists(st.integers(0, 500), min_size=n, max_size=n))
        a, b = make_polyphase(q1, e1), make_polyphase(q2, e2)
        exact = pointwise_multiply(a, b)
        assert exact.is_exact and exact.modulus == np.lcm(q1, q2)
        dense = pointwise_multiply(to_dense(a), to_dense(b))
        assert np.max(np.abs(exact.array - dense.array)) <= 1e-12


class TestPeriodicExtend:
    def test_simple(self):
        s = periodic_extend(make_polyphase(2, [0, 1]), 2)
        assert s == make_polyphase(2, [0, 1, 0, 1])

    def test_example1_factor(self):
        s = periodic_extend(make_polyphase(2, [0, 0, 0, 1]), 4)
        assert s.period == 16
        np.testing.assert_array_equal(np.round(s.array.real), [1, 1, 1, -1] * 4)

    def test_zero_times(self):
        with pytest.raises(ValueError):
            periodic_extend(make_polyphase(2, [0, 1]), 0)

    @given(st.lists(st.integers(0, 7), min_size=1, max_size=9), st.integers(1, 5), st.integers(-100, 100))
    def test_sampling(self, exps, k, n):
        s = make_polyphase(8, exps)
        ext = periodic_extend(s, k)
        assert ext[n] == s[n % s.period]


class TestEnergy:
    def test_unit(self):
        assert energy(make_polyphase(2, [0, 0, 0, 1])) == 4

    def test_example1_u0(self, example1):
        assert energy(example1[0]) == 16

    def test_dense(self):
        assert energy(ComplexSequence.from_values([2, 0])) == pytest.approx(4.0)

    def test_exact_scaled(self):
        s = ComplexSequence.polyphase(4, [0, 1], [Fraction(1, 2), Fraction(3)])
        assert energy(s) == Fraction(1, 4) + 9


class TestRootScalar:
    @settings(max_examples=100)
    @given(moduli, st.integers(-200, 200), moduli, st.integers(-200, 200))
    def test_product_closure(self, q1, e1, q2, e2):
        a, b = RootScalar(q1, e1), RootScalar(q2, e2)
        p = a * b
        assert isinstance(p, RootScalar)
        assert p.modulus == np.lcm(q1, q2)
        assert abs(complex(p) - complex(a) * complex(b)) <= 1e-12

    @given(moduli, st.integers(-50, 50), st.integers(-6, 6))
    def test_power(self, q, e, k):
        r = RootScalar(q, e) ** k
        assert abs(complex(r) - complex(RootScalar(q, e)) ** k) <= 1e-12

    def test_exact_cancellation(self):
        s = RootScalar(4, 1) + RootScalar(4, 3)
        assert isinstance(s, RootScalar) and s.zero_flag

    def test_same_root_adds_scales(self):
        s = RootScalar(8, 3) + RootScalar(16, 6)
        assert s == RootScalar(8, 3, Fraction(2))

    def test_non_root_sum_goes_dense(self):
        s = RootScalar(1, 0) + RootScalar(4, 1)
        assert isinstance(s, complex)
        assert s == pytest.approx(1 - 1j)

    def test_equality_across_moduli(self):
        assert RootScalar(4, 1) == RootScalar(8, 2)
        assert hash(RootScalar(4, 1)) == hash(RootScalar(8, 2))
        assert RootScalar(4, 1) != RootScalar(4, 3)

    def test_overflow_cap(self):
        with pytest.raises(ModulusOverflowError):
            common_modulus(2**20 + 1, 2**20 + 3)


class TestComplexSequence:
    def test_cyclic_index(self):
        s = make_polyphase(4, [0, 1, 2])
        assert s[3] == s[0] and s[-1] == s[2]

    def test_shift(self):
        s = make_polyphase(8, [0, 1, 2, 3])
        assert s.shift(1) == make_polyphase(8, [1, 2, 3, 0])

    def test_kinds_not_equal(self):
        s = make_polyphase(2, [0, 1])
        assert s != to_dense(s)
        assert s.allclose(to_dense(s))

    def test_array_read_only(self):
        s = make_polyphase(2, [0, 1])
        with pytest.raises(ValueError):
            s.array[0] = 5

    def test_set_period_check(self):
        with pytest.raises(ValueError):
            SequenceSet((make_polyphase(2, [0, 1]), make_polyphase(2, [0])))


class TestTolerance:
    def test_threshold(self):
        t = TolerancePolicy(1e-9, 1e-12)
        assert t.is_zero(5e-10)
        assert not t.is_zero(2e-9)
        assert t.is_zero(5e-9, reference=1e4)

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            TolerancePolicy(-1.0, 0.0)
