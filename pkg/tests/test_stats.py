import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kextract.errors import DecodeError, ParameterError, ResourceError
from kextract.stats import (
    Dist,
    dist_from_text,
    dist_to_text,
    epsilon_close_to_min_entropy,
    min_entropy,
    pushforward,
    statistical_distance,
)


def rational_dist(domain_bits, denominator=16):
    """Strategy: a random distribution with probabilities k/denominator."""
    size = 1 << domain_bits

    def build(cuts):
        weights = [0] * size
        for c in cuts:
            weights[c % size] += 1
        return Dist(
            domain_bits,
            {
                v: Fraction(w, denominator)
                for v, w in enumerate(weights)
                if w
            },
        )

    return st.lists(
        st.integers(0, size - 1), min_size=denominator, max_size=denominator
    ).map(build)


class TestDist:
    def test_sum_must_be_one(self):
        with pytest.raises(ParameterError):
            Dist(1, {0: Fraction(1, 2)})

    def test_outcome_range_checked(self):
        with pytest.raises(ParameterError):
            Dist(1, {2: Fraction(1)})

    def test_negative_probability_rejected(self):
        with pytest.raises(ParameterError):
            Dist(1, {0: Fraction(3, 2), 1: Fraction(-1, 2)})


class TestPushforward:
    def test_projection_is_uniform(self):
        d = pushforward(lambda x1, x2: x1, 3, 3)
        assert d == Dist.uniform(3)

    def test_constant_is_point_mass(self):
        d = pushforward(lambda x1, x2: 5, 3, 3)
        assert d == Dist.point_mass(3, 5)

    def test_budget_enforced(self):
        with pytest.raises(ResourceError):
            pushforward(lambda x1, x2: 0, 13, 1)


class TestMinEntropy:
    def test_uniform(self):
        assert min_entropy(Dist.uniform(4)) == 4.0

    def test_point_mass(self):
        assert min_entropy(Dist.point_mass(4, 11)) == 0.0

    def test_fractional_max(self):
        d = Dist(2, {0: Fraction(3, 8), 1: Fraction(3, 8), 2: Fraction(2, 8)})
        assert min_entropy(d) == pytest.approx(math.log2(8 / 3), abs=2**-40)


class TestStatisticalDistance:
    def test_identical(self):
        d = Dist.uniform(2)
        assert statistical_distance(d, d) == 0

    def test_disjoint_point_masses(self):
        assert statistical_distance(Dist.point_mass(1, 0), Dist.point_mass(1, 1)) == 1

    def test_domain_mismatch(self):
        with pytest.raises(ParameterError):
            statistical_distance(Dist.uniform(1), Dist.uniform(2))

    @pytest.mark.parametrize("bits", [1, 2, 3])
    def test_half_l1_equals_max_event_gap(self, bits):
        # brute force over all 2^(2^bits) events
        size = 1 << bits
        d1 = Dist.uniform(bits)
        weights = [3] + [1] * (size - 1)
        d2 = Dist(
            bits,
            {v: Fraction(w, sum(weights)) for v, w in enumerate(weights)},
        )
        zero = Fraction(0)
        for a, b in [(d1, d2), (d2, d1)]:
            sd = statistical_distance(a, b)
            best = max(
                abs(
                    sum((a.probs.get(v, zero) for v in event), zero)
                    - sum((b.probs.get(v, zero) for v in event), zero)
                )
                for r in range(size + 1)
                for event in itertools.combinations(range(size), r)
            )
            assert sd == best

    @given(d1=rational_dist(2), d2=rational_dist(2), d3=rational_dist(2))
    def test_metric(self, d1, d2, d3):
        assert statistical_distance(d1, d2) == statistical_distance(d2, d1)
        assert statistical_distance(d1, d3) <= (
            statistical_distance(d1, d2) + statistical_distance(d2, d3)
        )
        assert (statistical_distance(d1, d2) == 0) == (d1 == d2)


class TestEpsilonCloseToMinEntropy:
    def test_uniform_needs_nothing(self):
        assert epsilon_close_to_min_entropy(Dist.uniform(3), 3) == 0

    def test_point_mass_to_one_bit(self):
        assert epsilon_close_to_min_entropy(Dist.point_mass(2, 0), 1) == Fraction(1, 2)

    def test_no_constraint(self):
        d = Dist.point_mass(2, 3)
        assert epsilon_close_to_min_entropy(d, 0) == 0

    def test_range_checked(self):
        with pytest.raises(ParameterError):
            epsilon_close_to_min_entropy(Dist.uniform(2), 3)

    @given(d=rational_dist(2, denominator=8))
    def test_capping_is_optimal_on_grid(self, d):
        # compare against brute force over all denominator-16 distributions
        # with min-entropy >= 1 (cap 1/2)
        k = 1
        eps = epsilon_close_to_min_entropy(d, k)
        cap = Fraction(1, 2)
        # the capped witness distribution is feasible and attains eps
        excess = sum(p - cap for p in d.probs.values() if p > cap)
        assert excess == eps
        # no grid distribution beats it
        best = None
        zero = Fraction(0)
        for weights in itertools.product(range(9), repeat=4):
            if sum(weights) != 16:
                continue
            q = {v: Fraction(w, 16) for v, w in enumerate(weights) if w}
            sd = (
                sum(
                    abs(d.probs.get(v, zero) - q.get(v, zero))
                    for v in set(d.probs) | set(q)
                )
                / 2
            )
            best = sd if best is None else min(best, sd)
        assert best is not None
        assert eps <= best

    def test_monotone_in_k(self):
        # relaxing the min-entropy floor can only move the target closer
        d = Dist(2, {0: Fraction(5, 8), 1: Fraction(2, 8), 2: Fraction(1, 8)})
        values = [epsilon_close_to_min_entropy(d, k) for k in (2, 1.5, 1, 0.5, 0)]
        assert values == sorted(values, reverse=True)
        assert values[-1] == 0


class TestSerialization:
    def test_round_trip(self):
        d = Dist(5, {0: Fraction(1, 4), 17: Fraction(1, 4), 31: Fraction(1, 2)})
        assert dist_from_text(dist_to_text(d)) == d

    def test_missing_header(self):
        with pytest.raises(DecodeError):
            dist_from_text("00 1/1\n")

    def test_bad_line(self):
        with pytest.raises(DecodeError):
            dist_from_text("bits 2\nzz one\n")
