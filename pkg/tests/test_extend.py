import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from kextract.errors import ParameterError
from kextract.extend import ExtendRequest, extend, invert_pair, iter_extend
from kextract.gf2n import field_params

P3 = field_params(3)


class TestExtend:
    def test_first_output_is_xor(self):
        out = extend(ExtendRequest(0b101, 0b011, 1, P3))
        assert out.outputs == (0b110,)

    def test_hand_example_two_outputs(self):
        out = extend(ExtendRequest(0b101, 0b011, 2, P3))
        assert out.outputs == (0b110, 0b011)

    def test_zero_x2_repeats_x1(self):
        out = extend(ExtendRequest(0b101, 0, 7, P3))
        assert out.outputs == (0b101,) * 7

    def test_streaming_matches_materialized(self):
        req = ExtendRequest(0b100, 0b111, 7, P3)
        assert tuple(iter_extend(req)) == extend(req).outputs

    def test_count_must_leave_indices_distinct(self):
        with pytest.raises(ParameterError):
            ExtendRequest(0, 0, 8, P3)
        with pytest.raises(ParameterError):
            ExtendRequest(0, 0, 0, P3)

    def test_inputs_must_fit(self):
        with pytest.raises(ParameterError):
            ExtendRequest(8, 0, 1, P3)


class TestInvertPair:
    def test_hand_example(self):
        assert invert_pair(0b110, 0b011, 1, 2, P3) == (0b101, 0b011)

    def test_equal_outputs_force_zero_x2(self):
        for z in range(8):
            assert invert_pair(z, z, 1, 2, P3) == (z, 0)

    def test_round_trip_exhaustive(self):
        for x1, x2 in itertools.product(range(8), repeat=2):
            outs = extend(ExtendRequest(x1, x2, 3, P3)).outputs
            for i, j in itertools.permutations(range(1, 4), 2):
                got = invert_pair(outs[i - 1], outs[j - 1], i, j, P3)
                assert got == (x1, x2)

    def test_same_index_rejected(self):
        with pytest.raises(ParameterError):
            invert_pair(1, 2, 3, 3, P3)

    def test_index_range_checked(self):
        with pytest.raises(ParameterError):
            invert_pair(1, 2, 0, 1, P3)
        with pytest.raises(ParameterError):
            invert_pair(1, 2, 1, 8, P3)

    @given(
        x1=st.integers(0, 255),
        x2=st.integers(0, 255),
        i=st.integers(1, 255),
        j=st.integers(1, 255),
    )
    def test_round_trip_random_n8(self, x1, x2, i, j):
        if i == j:
            return
        params = field_params(8)
        hi = max(i, j)
        outs = extend(ExtendRequest(x1, x2, hi, params)).outputs
        assert invert_pair(outs[i - 1], outs[j - 1], i, j, params) == (x1, x2)


class TestPairwiseStructure:
    @pytest.mark.parametrize("n", [2, 3])
    def test_pair_maps_are_bijections(self, n):
        params = field_params(n)
        N = params.order
        indices = range(1, N)
        for i, j in itertools.permutations(indices, 2):
            seen = set()
            for x1, x2 in itertools.product(range(N), repeat=2):
                outs = extend(ExtendRequest(x1, x2, max(i, j), params)).outputs
                seen.add((outs[i - 1], outs[j - 1]))
            assert len(seen) == N * N

    def test_single_map_is_balanced(self):
        # each z_i value has exactly 2^n preimages, so z_i is uniform
        N = 8
        for i in range(1, N):
            hist = {}
            for x1, x2 in itertools.product(range(N), repeat=2):
                z = extend(ExtendRequest(x1, x2, i, P3)).outputs[i - 1]
                hist[z] = hist.get(z, 0) + 1
            assert all(count == N for count in hist.values())
            assert len(hist) == N
