from math import comb

import pytest

from entspec.bipartition import (
    BipartitionMask,
    complement,
    enumerate_balanced,
    join_index,
    next_same_weight,
    split_index,
)
from entspec.errors import InvalidArgumentError


class TestEnumerateBalanced:
    def test_two_qubits(self):
        assert [b.mask for b in enumerate_balanced(2)] == [0b01, 0b10]

    def test_five_qubits(self):
        masks = enumerate_balanced(5)
        assert len(masks) == 10
        assert all(b.n_A == 2 and b.n_B == 3 for b in masks)

    def test_twelve_qubits(self):
        assert len(enumerate_balanced(12)) == 924

    @pytest.mark.parametrize("n", range(2, 15))
    def test_count_order_uniqueness(self, n):
        values = [b.mask for b in enumerate_balanced(n)]
        assert len(values) == comb(n, n // 2)
        assert values == sorted(set(values))
        assert all(v.bit_count() == n // 2 for v in values)

    def test_even_n_contains_complements(self):
        values = {b.mask for b in enumerate_balanced(6)}
        assert all(complement(BipartitionMask(6, v)).mask in values for v in values)

    def test_rejects_single_qubit(self):
        with pytest.raises(InvalidArgumentError):
            enumerate_balanced(1)

    def test_next_same_weight(self):
        assert next_same_weight(0b0011) == 0b0101
        assert next_same_weight(0b0110) == 0b1001


class TestSplitIndex:
    def test_hand_example(self):
        assert split_index(13, BipartitionMask(4, 0b0011)) == (1, 3)

    @pytest.mark.parametrize("mask", [0b01, 0b0101, 0b1010, 0b0110])
    def test_zero_maps_to_zero(self, mask):
        assert split_index(0, BipartitionMask(4, mask)) == (0, 0)

    def test_three_qubit_bijection(self):
        b = BipartitionMask(3, 0b010)
        pairs = [split_index(k, b) for k in range(8)]
        assert len(set(pairs)) == 8

    @pytest.mark.parametrize("n", [2, 3, 5, 8, 10])
    def test_bijective_and_invertible(self, n):
        for b in enumerate_balanced(n):
            pairs = [split_index(k, b) for k in range(1 << n)]
            assert set(pairs) == {(j, l) for j in range(b.N_A) for l in range(b.N_B)}
            assert all(join_index(j, l, b) == k for k, (j, l) in enumerate(pairs))

    def test_index_matrix_matches_split(self):
        b = BipartitionMask(5, 0b10010)
        matrix = b.index_matrix()
        assert matrix.shape == (b.N_A, b.N_B)
        for k in range(32):
            j, l = split_index(k, b)
            assert matrix[j, l] == k

    def test_out_of_range(self):
        with pytest.raises(InvalidArgumentError):
            split_index(16, BipartitionMask(4, 0b0011))


class TestMask:
    def test_complement(self):
        assert complement(BipartitionMask(4, 0b0011)).mask == 0b1100

    def test_complement_involution(self):
        for b in enumerate_balanced(7):
            assert complement(complement(b)) == b

    def test_complement_weight_odd_n(self):
        b = BipartitionMask(5, 0b00101)
        assert complement(b).n_A == 3

    def test_sizes(self):
        b = BipartitionMask(7, 0b0100101)
        assert (b.n_A, b.n_B, b.N_A, b.N_B) == (3, 4, 8, 16)
        assert b.N_A * b.N_B == 1 << 7
        assert b.is_balanced

    def test_hex_rendering(self):
        assert BipartitionMask(12, 0x0F3).hex() == "0x0F3"
        assert BipartitionMask(5, 0b00011).hex() == "0x03"

    @pytest.mark.parametrize("mask", [0, 0b1111])
    def test_rejects_trivial_masks(self, mask):
        with pytest.raises(InvalidArgumentError):
            BipartitionMask(4, mask)
