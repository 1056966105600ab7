from itertools import combinations
from math import comb, prod

import numpy as np
import pytest

from schoenberg.densela import centering_projector, differentiator, singular_values
from schoenberg.polyzero import ZeroConfig
from schoenberg.symfun import critical_esf_identity_error, esf, weak_log_majorization


def esf_bruteforce(values, k):
    """Oracle: direct sum over all k-subsets."""
    if k == 0:
        return 1.0
    return sum(prod(sub) for sub in combinations(values, k))


class TestEsf:
    def test_constant_vector(self):
        assert esf([1.0, 1.0, 1.0], 2) == pytest.approx(3.0)

    def test_arithmetic_vector(self):
        # 1*2 + 1*3 + 2*3
        assert esf([1.0, 2.0, 3.0], 2) == pytest.approx(11.0)

    def test_order_zero(self):
        assert esf([5.0, -2.0, 7.5], 0) == 1.0
        assert esf([], 0) == 1.0

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            esf([1.0, 2.0], 3)
        with pytest.raises(ValueError):
            esf([1.0, 2.0], -1)

    def test_binomial_on_ones(self):
        for n in range(1, 9):
            for k in range(n + 1):
                assert esf([1.0] * n, k) == pytest.approx(comb(n, k))

    def test_matches_bruteforce(self, rng):
        for _ in range(40):
            n = int(rng.integers(1, 9))
            values = rng.uniform(-2, 2, n)
            for k in range(n + 1):
                expected = esf_bruteforce(values.tolist(), k)
                assert esf(values, k) == pytest.approx(
                    expected, rel=1e-12, abs=1e-12
                )

    def test_matches_bruteforce_complex(self, rng):
        for _ in range(20):
            n = int(rng.integers(1, 8))
            values = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            for k in range(n + 1):
                expected = esf_bruteforce(values.tolist(), k)
                assert esf(values, k) == pytest.approx(expected, rel=1e-12, abs=1e-12)

    def test_monotone_in_each_entry(self, rng):
        # raising one entry of a nonnegative sequence cannot lower any e_k
        for _ in range(20):
            n = int(rng.integers(2, 8))
            values = rng.uniform(0, 3, n)
            bumped = values.copy()
            i = int(rng.integers(0, n))
            bumped[i] += rng.uniform(0, 2)
            for k in range(n + 1):
                assert esf(bumped, k) >= esf(values, k) - 1e-12


class TestWeakLogMajorization:
    def test_zero_prefix_accepts(self):
        assert weak_log_majorization([1.0, 0.0], [1.0, 1.0])

    def test_strict_violation(self):
        assert not weak_log_majorization([2.0, 1.0], [1.0, 1.0])

    def test_differentiator_instance(self, rng):
        # sigma(Q diag(z) Q) weakly log-majorized by sigma(Q diag(|z|) Q)
        for _ in range(25):
            n = int(rng.integers(2, 9))
            z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            a = singular_values(differentiator(ZeroConfig(tuple(z))))
            b = singular_values(differentiator(ZeroConfig(tuple(np.abs(z) + 0j))))
            assert weak_log_majorization(a, b)

    def test_reflexive(self, rng):
        for _ in range(10):
            seq = np.sort(rng.uniform(0, 2, 6))[::-1]
            assert weak_log_majorization(seq, seq)

    def test_transitive(self, rng):
        for _ in range(40):
            a = np.sort(rng.uniform(0, 2, 5))[::-1]
            b = np.sort(rng.uniform(0, 2, 5))[::-1]
            c = np.sort(rng.uniform(0, 2, 5))[::-1]
            if weak_log_majorization(a, b) and weak_log_majorization(b, c):
                assert weak_log_majorization(a, c)

    def test_zero_against_zero(self):
        assert weak_log_majorization([0.0, 0.0], [0.0, 0.0])

    def test_positive_against_zero_fails(self):
        assert not weak_log_majorization([1.0, 1.0], [0.0, 0.0])

    def test_rejects_increasing(self):
        with pytest.raises(ValueError):
            weak_log_majorization([1.0, 2.0], [2.0, 1.0])

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            weak_log_majorization([1.0, -0.5], [2.0, 1.0])

    def test_rejects_length_mismatch(self):
        with pytest.raises(ValueError):
            weak_log_majorization([1.0], [1.0, 0.5])


class TestCriticalEsfIdentity:
    def test_repeated_ones(self):
        # q = (z-1)^4 has critical points (1,1,1); the identity is exact but
        # the triple root comes back as an eps^(1/3)-sized cluster, so the
        # residual sits above the simple-root floor
        assert critical_esf_identity_error([1.0, 1.0, 1.0, 1.0]) <= 1e-8

    def test_all_zero(self):
        assert critical_esf_identity_error([0.0, 0.0, 0.0]) <= 1e-12

    def test_random_six_vectors(self, rng):
        for _ in range(50):
            moduli = rng.uniform(0, 2, 6)
            assert critical_esf_identity_error(moduli) <= 1e-9

    def test_random_sizes(self, rng):
        worst = 0.0
        for _ in range(60):
            n = int(rng.integers(2, 11))
            worst = max(worst, critical_esf_identity_error(rng.uniform(0, 2, n)))
        assert worst <= 1e-9

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            critical_esf_identity_error([1.0, -1.0])
