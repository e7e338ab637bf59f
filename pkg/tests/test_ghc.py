"""Geometric Huffman coding against its brute-force oracle."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dymatch import (Pmf, TargetWeights, brute_force_dyadic, ghc,
                     kl_divergence)

LOG2_3 = float(np.log2(3))


def dyadic_kl(d, weights) -> float:
    """kl(d || normalized weights) in bits."""
    xs = np.asarray(weights, dtype=float)
    return kl_divergence(Pmf(d.probs), Pmf(xs / xs.sum()))


class TestTargetWeights:
    def test_rejects_all_zero(self):
        with pytest.raises(ValueError):
            TargetWeights((0.0, 0.0))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            TargetWeights((0.5, -0.1))

    def test_subnormalized_ok(self):
        TargetWeights((0.1, 0.05))


class TestGhc:
    def test_dyadic_input_reproduced(self):
        d = ghc((0.5, 0.25, 0.25))
        assert d.lengths == (1, 2, 2)
        assert dyadic_kl(d, (0.5, 0.25, 0.25)) == 0.0

    def test_uniform_three(self):
        d = ghc(Pmf.uniform(3))
        assert sorted(d.lengths) == [1, 2, 2]
        assert dyadic_kl(d, (1, 1, 1)) == pytest.approx(LOG2_3 - 1.5,
                                                        abs=1e-12)
        assert dyadic_kl(d, (1, 1, 1)) == pytest.approx(0.084963, abs=1e-6)

    def test_tie_break_prefers_low_index_merge_first(self):
        # equal weights: 0 and 1 merge, so 2 keeps the short codeword
        assert ghc((1.0, 1.0, 1.0)).lengths == (2, 2, 1)

    def test_drop_rule(self):
        # 0.19 >= 4*0.01 drops symbol 2; 0.8 >= 4*0.19 then drops symbol 1
        d = ghc((0.8, 0.19, 0.01))
        assert d.lengths == (0, None, None)
        assert dyadic_kl(d, (0.8, 0.19, 0.01)) == pytest.approx(
            -np.log2(0.8), abs=1e-12)

    def test_zero_preservation(self):
        d = ghc((0.5, 0.0, 0.5))
        assert d.lengths[1] is None
        assert d.lengths == (1, None, 1)

    def test_scale_invariance(self):
        x = (0.37, 0.21, 0.42)
        scaled = tuple(17.3 * v for v in x)
        assert ghc(x).lengths == ghc(scaled).lengths

    def test_two_symbols(self):
        assert ghc((0.6, 0.4)).lengths == (1, 1)
        # heavy skew crosses the 4x drop threshold
        assert ghc((0.9, 0.1)).lengths == (0, None)

    def test_deterministic(self):
        x = (0.3, 0.3, 0.2, 0.2)
        assert ghc(x).lengths == ghc(x).lengths

    def test_rejects_all_zero(self):
        with pytest.raises(ValueError):
            ghc((0.0, 0.0))


class TestBruteForce:
    def test_two_equal(self):
        assert brute_force_dyadic((0.5, 0.5), 8).lengths == (1, 1)

    def test_uniform_three(self):
        d = brute_force_dyadic(Pmf.uniform(3), 8)
        assert dyadic_kl(d, (1, 1, 1)) == pytest.approx(0.084963, abs=1e-6)

    def test_skewed_matches_ghc(self):
        x = (0.9, 0.05, 0.05)
        assert dyadic_kl(ghc(x), x) == pytest.approx(
            dyadic_kl(brute_force_dyadic(x, 8), x), abs=1e-12)

    def test_instance_limits(self):
        with pytest.raises(ValueError):
            brute_force_dyadic(tuple([1.0] * 9), 8)
        with pytest.raises(ValueError):
            brute_force_dyadic((0.5, 0.5), 11)


class TestOptimalityOracle:
    """ghc must equal the enumerated optimum; the oracle defines truth."""

    def test_fixed_instances(self):
        cases = [
            (0.4, 0.3, 0.2, 0.1),
            (0.25, 0.25, 0.25, 0.25),
            (0.97, 0.01, 0.01, 0.01),
            (0.5, 0.2, 0.15, 0.1, 0.05),
            (1.0, 1.0, 1.0, 1.0, 1.0),
        ]
        for x in cases:
            got = dyadic_kl(ghc(x), x)
            want = dyadic_kl(brute_force_dyadic(x, 8), x)
            assert got == pytest.approx(want, abs=1e-12), x

    @settings(max_examples=150)
    @given(st.lists(st.floats(0.001, 1.0), min_size=2, max_size=5))
    def test_random_instances(self, xs):
        got = dyadic_kl(ghc(xs), xs)
        want = dyadic_kl(brute_force_dyadic(xs, 8), xs)
        assert got <= want + 1e-12

    @given(st.lists(st.integers(1, 6), min_size=2, max_size=5))
    def test_idempotent_on_dyadic(self, raw):
        # ghc of anything is dyadic; ghc of that must be a fixed point
        d = ghc(tuple(2.0 ** -l for l in raw))
        again = ghc(tuple(d.probs))
        assert again.lengths == d.lengths
        assert dyadic_kl(again, d.probs) == 0.0
