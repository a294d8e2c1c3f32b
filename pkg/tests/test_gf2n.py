import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from kextract.errors import DomainError, ParameterError
from kextract.gf2n import (
    _LEAST_IRREDUCIBLE,
    FieldElement,
    FieldParams,
    add,
    field_params,
    inverse,
    inverse_bits,
    mul,
    mul_bits,
    nth_nonzero,
)

P3 = field_params(3)


def fe(bits, params=P3):
    return FieldElement(bits, params)


class TestAdd:
    def test_xor(self):
        assert add(fe(0b101), fe(0b011)).bits == 0b110

    def test_additive_identity(self):
        for v in range(8):
            assert add(fe(v), fe(0)).bits == v

    def test_characteristic_two(self):
        for v in range(8):
            assert add(fe(v), fe(v)).bits == 0

    def test_mismatched_params_rejected(self):
        with pytest.raises(ParameterError):
            add(fe(1), FieldElement(1, field_params(4)))


class TestMul:
    def test_hand_example(self):
        # x * (x + 1) = x^2 + x under x^3 + x + 1
        assert mul(fe(0b010), fe(0b011)).bits == 0b110

    def test_multiplicative_identity(self):
        for v in range(8):
            assert mul(fe(v), fe(1)).bits == v

    def test_absorbing_zero(self):
        for v in range(8):
            assert mul(fe(v), fe(0)).bits == 0

    def test_mismatched_params_rejected(self):
        with pytest.raises(ParameterError):
            mul(fe(1), FieldElement(1, field_params(4)))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_agrees_with_schoolbook_oracle_exhaustively(self, n):
        params = field_params(n)
        for a in range(params.order):
            for b in range(params.order):
                assert mul_bits(a, b, params) == oracles.gf_mul(a, b, params.modulus)

    @given(
        n=st.integers(5, 64),
        a=st.integers(0, 2**64 - 1),
        b=st.integers(0, 2**64 - 1),
    )
    def test_agrees_with_schoolbook_oracle_random(self, n, a, b):
        params = field_params(n)
        a &= params.order - 1
        b &= params.order - 1
        assert mul_bits(a, b, params) == oracles.gf_mul(a, b, params.modulus)


class TestInverse:
    def test_identity(self):
        assert inverse(fe(1)).bits == 1

    def test_hand_example(self):
        # x * (x^2 + 1) = x^3 + x = 1 under x^3 + x + 1
        assert inverse(fe(0b010)).bits == 0b101

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            inverse(fe(0))

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_defining_property_exhaustive(self, n):
        params = field_params(n)
        for a in range(1, params.order):
            assert mul_bits(a, inverse_bits(a, params), params) == 1

    @given(n=st.integers(5, 64), a=st.integers(1, 2**64 - 1))
    def test_defining_property_random(self, n, a):
        params = field_params(n)
        a &= params.order - 1
        a = a or 1
        assert mul_bits(a, inverse_bits(a, params), params) == 1


class TestFieldAxioms:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_exhaustive(self, n):
        params = field_params(n)
        order = params.order
        for a, b, c in itertools.product(range(order), repeat=3):
            ab = mul_bits(a, b, params)
            assert ab == mul_bits(b, a, params)
            assert mul_bits(ab, c, params) == mul_bits(a, mul_bits(b, c, params), params)
            assert (a ^ b) == (b ^ a)
            assert ((a ^ b) ^ c) == (a ^ (b ^ c))
            assert mul_bits(a, b ^ c, params) == (
                mul_bits(a, b, params) ^ mul_bits(a, c, params)
            )

    @given(
        n=st.sampled_from([8, 16, 32, 64]),
        a=st.integers(0, 2**64 - 1),
        b=st.integers(0, 2**64 - 1),
        c=st.integers(0, 2**64 - 1),
    )
    def test_random_triples(self, n, a, b, c):
        params = field_params(n)
        mask = params.order - 1
        a, b, c = a & mask, b & mask, c & mask
        ab = mul_bits(a, b, params)
        assert ab == mul_bits(b, a, params)
        assert mul_bits(ab, c, params) == mul_bits(a, mul_bits(b, c, params), params)
        assert mul_bits(a, b ^ c, params) == (
            mul_bits(a, b, params) ^ mul_bits(a, c, params)
        )


class TestNthNonzero:
    def test_first_is_identity(self):
        assert nth_nonzero(1, P3).bits == 1

    def test_second(self):
        assert nth_nonzero(2, P3).bits == 0b010

    def test_last(self):
        assert nth_nonzero(7, P3).bits == 0b111

    @pytest.mark.parametrize("i", [0, 8, -1])
    def test_out_of_range(self, i):
        with pytest.raises(ParameterError):
            nth_nonzero(i, P3)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_injective_and_nonzero(self, n):
        params = field_params(n)
        seen = {nth_nonzero(i, params).bits for i in range(1, params.order)}
        assert len(seen) == params.order - 1
        assert 0 not in seen


class TestParams:
    def test_element_out_of_range(self):
        with pytest.raises(ParameterError):
            FieldElement(8, P3)

    def test_reducible_modulus_rejected(self):
        with pytest.raises(ParameterError):
            FieldParams(3, 0b1111)  # x^3+x^2+x+1 = (x+1)(x^2+1)

    def test_wrong_degree_rejected(self):
        with pytest.raises(ParameterError):
            FieldParams(3, 0b10011)

    def test_unsupported_n_rejected(self):
        for n in (0, 65):
            with pytest.raises(ParameterError):
                field_params(n)

    def test_custom_irreducible_accepted_small_n(self):
        # x^3 + x^2 + 1, the other irreducible cubic
        params = FieldParams(3, 0b1101)
        for a in range(1, 8):
            assert mul_bits(a, inverse_bits(a, params), params) == 1

    def test_unvetted_modulus_rejected_large_n(self):
        # x^33 + x^10 + 1 may or may not be irreducible; it is not the
        # table entry, which is all that is accepted above n = 32
        with pytest.raises(ParameterError):
            FieldParams(33, (1 << 33) | (1 << 10) | 1)

    def test_vetted_table_is_irreducible(self):
        for n, modulus in _LEAST_IRREDUCIBLE.items():
            assert modulus.bit_length() == n + 1
            assert oracles.rabin_irreducible(modulus), n

    @pytest.mark.parametrize("n", [2, 3, 4, 8, 13])
    def test_vetted_table_is_least(self, n):
        modulus = _LEAST_IRREDUCIBLE[n]
        for candidate in range(1 << n, modulus):
            assert not oracles.rabin_irreducible(candidate)
