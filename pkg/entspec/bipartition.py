"""
Balanced bipartitions as bitmasks, and the basis-index bijection
k <-> (j_A, l_B) they induce.

Bit i of a mask is set when qubit i belongs to subsystem A. Both j_A and l_B
are the compressions of k's bits (least significant first) at the A and B
positions respectively.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import comb
from typing import Iterator

import numpy as np

from .errors import InvalidArgumentError
from .formatting import mask_hex


def iter_set_bits(value: int) -> Iterator[int]:
    """Positions of the set bits of `value`, ascending."""
    if value < 0:
        raise ValueError("Negative values are not supported")
    pos = 0
    while value:
        if value & 1:
            yield pos
        value >>= 1
        pos += 1


def next_same_weight(v: int) -> int:
    """Smallest integer greater than v with the same population count."""
    low = v & -v
    ripple = v + low
    return ripple | (((v ^ ripple) >> 2) // low)


@dataclass(frozen=True)
class BipartitionMask:
    n: int
    mask: int

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidArgumentError(f"a bipartition needs n >= 2 qubits, got n={self.n}")
        if not 0 < self.mask < (1 << self.n) - 1:
            raise InvalidArgumentError(f"mask {self.mask:#x} must select a proper non-empty subset of {self.n} qubits")

    @property
    def n_A(self) -> int:
        return self.mask.bit_count()

    @property
    def n_B(self) -> int:
        return self.n - self.n_A

    @property
    def N_A(self) -> int:
        return 1 << self.n_A

    @property
    def N_B(self) -> int:
        return 1 << self.n_B

    @property
    def is_balanced(self) -> bool:
        return self.n_A == self.n // 2

    @cached_property
    def positions_a(self) -> tuple[int, ...]:
        return tuple(iter_set_bits(self.mask))

    @cached_property
    def positions_b(self) -> tuple[int, ...]:
        return tuple(iter_set_bits(self.complement_bits))

    @property
    def complement_bits(self) -> int:
        return ((1 << self.n) - 1) ^ self.mask

    def hex(self) -> str:
        return mask_hex(self.mask, self.n)

    def index_matrix(self) -> np.ndarray:
        """N_A x N_B array whose (j_A, l_B) entry is the global index k."""
        rows = scatter_bits(np.arange(self.N_A, dtype=np.int64), self.positions_a)
        cols = scatter_bits(np.arange(self.N_B, dtype=np.int64), self.positions_b)
        return rows[:, None] | cols[None, :]


def scatter_bits(values: np.ndarray, positions: tuple[int, ...]) -> np.ndarray:
    """Deposit bit t of each value at bit positions[t]."""
    out = np.zeros_like(values)
    for t, p in enumerate(positions):
        out |= ((values >> t) & 1) << p
    return out


def gather_bits(value: int, positions: tuple[int, ...]) -> int:
    out = 0
    for t, p in enumerate(positions):
        out |= ((value >> p) & 1) << t
    return out


def enumerate_balanced(n: int) -> list[BipartitionMask]:
    """Every n-bit mask of weight floor(n/2), ascending."""
    if n < 2:
        raise InvalidArgumentError(f"enumerate_balanced requires n >= 2, got n={n}")
    return list(_balanced(n))


@lru_cache(maxsize=32)
def _balanced(n: int) -> tuple[BipartitionMask, ...]:
    n_a = n // 2
    limit = 1 << n
    out: list[BipartitionMask] = []
    v = (1 << n_a) - 1
    while v < limit:
        out.append(BipartitionMask(n, v))
        v = next_same_weight(v)
    assert len(out) == comb(n, n_a)
    return tuple(out)


def split_index(k: int, b: BipartitionMask) -> tuple[int, int]:
    if not 0 <= k < (1 << b.n):
        raise InvalidArgumentError(f"basis index {k} out of range for n={b.n}")
    return gather_bits(k, b.positions_a), gather_bits(k, b.positions_b)


def join_index(j_a: int, l_b: int, b: BipartitionMask) -> int:
    """Inverse of split_index."""
    if not (0 <= j_a < b.N_A and 0 <= l_b < b.N_B):
        raise InvalidArgumentError(f"(j_A, l_B) = ({j_a}, {l_b}) out of range for mask {b.hex()}")
    k = 0
    for t, p in enumerate(b.positions_a):
        k |= ((j_a >> t) & 1) << p
    for t, p in enumerate(b.positions_b):
        k |= ((l_b >> t) & 1) << p
    return k


def complement(b: BipartitionMask) -> BipartitionMask:
    return BipartitionMask(b.n, b.complement_bits)
