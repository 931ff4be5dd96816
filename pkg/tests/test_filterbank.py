import numpy as np
import pytest

from ifzcz.constructions import S1Params, S2Params, build_s1, build_s2, perfect_zadoff_chu
from ifzcz.filterbank import (
    ComplexityModel,
    OpCounter,
    ZakReferenceBank,
    complexity_model,
    complexity_table,
    detect,
    direct_filterbank,
    fast_filterbank_s1,
    fast_filterbank_s2,
    measure_complexity,
    run_filterbank,
    zak_filterbank,
)
from ifzcz.seqcore import ComplexSequence, energy, make_polyphase

import oracles


def delayed(u, d):
    """y(n) = u(n - d)."""
    return u.shift(-d)


def random_input(rng, N):
    return ComplexSequence.from_values(rng.normal(size=N) + 1j * rng.normal(size=N))


def oracle_outputs(y, seqs):
    return np.stack([oracles.correlate(y.array, u.array) for u in seqs])


ZERO16 = ComplexSequence.from_values(np.zeros(16))


class TestDirect:
    def test_example1_self(self, example1):
        res = direct_filterbank(example1[0], example1)
        comb = np.zeros(16)
        comb[::4] = 16
        np.testing.assert_allclose(res.matrix[0], comb, atol=1e-12)
        np.testing.assert_allclose(res.matrix[1:], 0, atol=1e-12)

    def test_counts(self, example1):
        c = direct_filterbank(example1[0], example1).counter
        assert (c.mults, c.adds, c.total) == (1024, 960, 1984)
        assert c.total == complexity_model("O2", 16, 4)

    def test_zero_input(self, example1):
        res = direct_filterbank(ZERO16, example1)
        assert not res.matrix.any()
        assert res.counter.total == 1984

    def test_period_mismatch(self, example1, example2):
        with pytest.raises(ValueError):
            direct_filterbank(example2[0], example1)


class TestZak:
    def test_matches_direct(self, example1):
        a = zak_filterbank(example1[0], example1, 4).matrix
        b = direct_filterbank(example1[0], example1).matrix
        assert np.max(np.abs(a - b)) <= 1e-12

    def test_delayed(self, example1):
        res = zak_filterbank(delayed(example1[2], 5), example1, 4)
        expected = np.zeros(16)
        expected[1::4] = 16
        np.testing.assert_allclose(np.abs(res.matrix[2]), expected, atol=1e-12)
        for b in (0, 1, 3):
            np.testing.assert_allclose(res.matrix[b], 0, atol=1e-12)

    def test_zero(self, example1):
        assert np.abs(zak_filterbank(ZERO16, example1, 4).matrix).max() == 0

    def test_other_lattices(self, example1, rng):
        y = random_input(rng, 16)
        ref = oracle_outputs(y, example1)
        for L in (1, 2, 4, 8, 16):
            got = zak_filterbank(y, example1, L).matrix
            assert np.max(np.abs(got - ref)) <= 1e-9 * energy(y)

    def test_bad_lattice(self, example1):
        with pytest.raises(ValueError):
            ZakReferenceBank(example1, 3)

    def test_bank_reuse(self, example1, rng):
        bank = ZakReferenceBank(example1, 4)
        y = random_input(rng, 16)
        a = zak_filterbank(y, example1, 4, bank=bank)
        b = zak_filterbank(y, example1, 4)
        np.testing.assert_array_equal(a.matrix, b.matrix)
        assert a.counter == b.counter


class TestFastS1:
    def test_example1_u1(self, example1_params, example1):
        res = fast_filterbank_s1(example1[1], example1_params, example1)
        assert abs(res.matrix[1, 0] - 16) <= 1e-12

    def test_single_filter(self):
        h = perfect_zadoff_chu(7)
        p = S1Params.uniform(1, h)
        s = build_s1(p)
        res = fast_filterbank_s1(h, p, s)
        np.testing.assert_allclose(res.matrix[0], oracles.correlate(h.array, h.array), atol=1e-12)

    def test_random(self, example1_params, example1, rng):
        for _ in range(10):
            y = random_input(rng, 16)
            got = fast_filterbank_s1(y, example1_params, example1).matrix
            assert np.max(np.abs(got - oracle_outputs(y, example1))) <= 1e-9 * energy(y)

    def test_cheaper_than_zak(self, rng):
        for K in (2, 4, 8):
            p = S1Params.uniform(K, perfect_zadoff_chu(8))
            s = build_s1(p)
            y = random_input(rng, s.period)
            assert fast_filterbank_s1(y, p, s).counter.total < zak_filterbank(y, s, K).counter.total

    def test_mismatched_params(self, example1_params, example2):
        with pytest.raises(ValueError):
            fast_filterbank_s1(example2[0], example1_params, example2)


class TestFastS2:
    def test_example2_self(self, example2_params, example2):
        res = fast_filterbank_s2(example2[0], example2_params, example2)
        expected = np.zeros(32)
        expected[0], expected[16] = 32, -32
        np.testing.assert_allclose(res.matrix[0], expected, atol=1e-12)
        np.testing.assert_allclose(res.matrix[1], 0, atol=1e-12)

    def test_zero(self, example2_params, example2):
        y = ComplexSequence.from_values(np.zeros(32))
        assert np.abs(fast_filterbank_s2(y, example2_params, example2).matrix).max() == 0

    def test_random_small(self, rng):
        p = S2Params(2, 2, [(0, 1), (1, 0)])
        s = build_s2(p)
        for _ in range(10):
            y = random_input(rng, 8)
            got = fast_filterbank_s2(y, p, s).matrix
            assert np.max(np.abs(got - oracle_outputs(y, s))) <= 1e-9 * energy(y)

    def test_modulated(self, rng):
        mods = [make_polyphase(3, [0, 1, 2]), make_polyphase(5, [4, 0, 2])]
        p = S2Params(2, 3, [(2, 0, 1), (0, 1, 2)], mods)
        s = build_s2(p)
        y = random_input(rng, s.period)
        got = fast_filterbank_s2(y, p, s).matrix
        assert np.max(np.abs(got - oracle_outputs(y, s))) <= 1e-9 * energy(y)


class TestDispatch:
    def test_all_agree(self, example2, rng):
        y = random_input(rng, 32)
        outs = {impl: run_filterbank(y, example2, impl).matrix
                for impl in ("direct", "zak", "fast", "fast_s1", "fast_s2")}
        for impl, m in outs.items():
            assert np.max(np.abs(m - outs["direct"])) <= 1e-9 * energy(y), impl

    def test_unavailable(self, example1):
        with pytest.raises(ValueError):
            run_filterbank(example1[0], example1, "fast_s2")


class TestModels:
    def test_o2(self):
        assert complexity_model("O2", 128, 32) == 1044480
        assert complexity_model(ComplexityModel.O2, 16, 4) == 1984

    def test_o12(self):
        assert {complexity_model("O12", 128, K) for K in (4, 8, 16, 32)} == {1344}

    def test_o11(self):
        assert complexity_model("O11", 128, 8) == 4544
        assert complexity_model("O11", 128, 32) == 1856
        assert complexity_model("O11", 128, 4) == 8448

    def test_invalid_shape(self):
        with pytest.raises(ValueError):
            complexity_model("O11", 128, 3)
        with pytest.raises(ValueError):
            complexity_model("O12", 96, 4)

    def test_table(self):
        t = complexity_table(128, [32, 16, 8, 4])
        assert [c.value for c in t.rows["O2"]] == [1044480, 522240, 261120, 130560]
        o11 = {c.K: c for c in t.rows["O11"]}
        assert o11[8].annotation is None
        assert {K: o11[K].published for K in (32, 16, 4)} == {32: 926, 16: 2668, 4: 8848}
        assert "926" in o11[32].annotation

    def test_table_single(self):
        assert complexity_table(128, [8]).value("O11", 8) == 4544
        assert complexity_table(16, [4]).value("O2", 4) == 1984

    def test_table_empty(self):
        assert complexity_table(16, []).to_csv() == "model\n"

    def test_table_error_cell(self):
        cell = complexity_table(96, [3]).rows["O11"][0]
        assert cell.value is None and cell.error

    def test_measured_ordering(self):
        for K in (4, 8, 16, 32):
            r = measure_complexity(128, K)
            m = r.measured
            assert m["direct"].total == K * 128 * 255
            assert m["fast_s1"].total <= m["zak"].total <= m["direct"].total
            if "fast_s2" in m:
                assert m["fast_s2"].total <= m["fast_s1"].total
            assert set(r.ratios()) >= {"direct", "fast_s1"}

    def test_counter_add(self):
        assert OpCounter(1, 2) + OpCounter(3, 4) == OpCounter(4, 6)


class TestDetect:
    def test_delayed_top_hit(self, example1):
        hits = detect(delayed(example1[2], 2), example1, 0.9)
        assert (hits[0].index, hits[0].lag) == (2, 2)
        assert hits[0].magnitude == pytest.approx(16)

    def test_zero(self, example1):
        assert detect(ZERO16, example1, 0.5) == []

    def test_superposition(self, example1):
        y = ComplexSequence.from_values(example1[0].array + example1[1].array)
        hits = detect(y, example1, 0.5)
        assert {h.index for h in hits} == {0, 1}
        assert {(h.index, 0) for h in hits if h.lag == 0} == {(0, 0), (1, 0)}

    def test_threshold_positive(self, example1):
        with pytest.raises(ValueError):
            detect(example1[0], example1, 0)

    @pytest.mark.parametrize("which", ["example1", "example2"])
    def test_zone_property(self, which, request):
        seqs = request.getfixturevalue(which)
        Z = {"example1": 3, "example2": 15}[which]
        for a, u in enumerate(seqs):
            for d in range(Z + 1):
                out = direct_filterbank(delayed(u, d), seqs).matrix
                for b in range(seqs.size):
                    if b != a:
                        assert np.abs(out[b, : Z - d + 1]).max() <= 1e-9
