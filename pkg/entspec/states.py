"""
n-qubit pure states: constructors for the GHZ, W, cluster, Haar-random and
product families, plus single-qubit unitaries.

Qubit i lives in bit i of the basis index (bit 0 least significant).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import networkx as nx
import numpy as np

from .config import HARD_MAX_N, settings
from .errors import CapExceededError, InvalidArgumentError
from .models import Topology

logger = logging.getLogger(__name__)

NORM_TOL = 1e-12
UNITARY_TOL = 1e-12
MAX_SEED = 2**64


@dataclass(frozen=True)
class PureState:
    """
    Read-only amplitude vector of n qubits.

    The raw constructor checks the shape only; the constructors below build
    normalized vectors directly. External amplitudes go through
    `from_amplitudes`, which also checks finiteness and the norm.
    """

    n: int
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        if not 1 <= self.n <= HARD_MAX_N:
            raise InvalidArgumentError(f"qubit count must be in [1, {HARD_MAX_N}], got {self.n}")
        amps = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if amps.ndim != 1 or amps.shape[0] != (1 << self.n):
            raise InvalidArgumentError(f"expected {1 << self.n} amplitudes for n={self.n}, got shape {amps.shape}")
        if amps is self.amplitudes:
            amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes: np.ndarray, norm_tol: float = NORM_TOL) -> "PureState":
        amps = np.asarray(amplitudes, dtype=np.complex128).ravel()
        dim = amps.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise InvalidArgumentError(f"amplitude count must be a power of two >= 2, got {dim}")
        state = cls(n=dim.bit_length() - 1, amplitudes=amps)
        deviation = abs(state.norm() - 1.0)
        if not deviation <= norm_tol:
            raise InvalidArgumentError(f"state is not normalized: |norm - 1| = {deviation:.3e} > {norm_tol:g}")
        return state

    @property
    def dim(self) -> int:
        return 1 << self.n

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def norm(self) -> float:
        return float(np.sqrt(self.norm_squared()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PureState):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.amplitudes, other.amplitudes)

    __hash__ = None  # type: ignore[assignment]


def check_qubit_count(n: int, minimum: int = 1, cap: Optional[int] = None, what: str = "state") -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise InvalidArgumentError(f"{what}: qubit count must be an integer, got {n!r}")
    n = int(n)
    if n < minimum:
        raise InvalidArgumentError(f"{what}: requires n >= {minimum}, got n={n}")
    limit = settings.GEN_MAX_N if cap is None else cap
    if n > limit:
        raise CapExceededError(what, n, limit)
    return n


def check_seed(seed: int) -> int:
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)) or not 0 <= int(seed) < MAX_SEED:
        raise InvalidArgumentError(f"seed must be an unsigned 64-bit integer, got {seed!r}")
    return int(seed)


def make_ghz(n: int, cap: Optional[int] = None) -> PureState:
    n = check_qubit_count(n, cap=cap, what="ghz")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = amps[-1] = 1.0 / np.sqrt(2.0)
    return PureState(n, amps)


def make_w(n: int, cap: Optional[int] = None) -> PureState:
    n = check_qubit_count(n, cap=cap, what="w")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[1 << np.arange(n)] = 1.0 / np.sqrt(n)
    return PureState(n, amps)


def make_product(n: int, index: int = 0, cap: Optional[int] = None) -> PureState:
    """Computational basis state |index>."""
    n = check_qubit_count(n, cap=cap, what="product")
    if not 0 <= index < (1 << n):
        raise InvalidArgumentError(f"product: basis index {index} out of range for n={n}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[index] = 1.0
    return PureState(n, amps)


def cluster_graph(n: int, topology: Topology = "chain") -> nx.Graph:
    if topology == "chain":
        if n < 2:
            raise InvalidArgumentError(f"cluster chain requires n >= 2, got n={n}")
        return nx.path_graph(n)
    if topology == "ring":
        if n < 3:
            raise InvalidArgumentError(f"cluster ring requires n >= 3, got n={n}")
        return nx.cycle_graph(n)
    raise InvalidArgumentError(f"unknown cluster topology {topology!r} (expected 'chain' or 'ring')")


def make_cluster(n: int, topology: Topology = "chain", cap: Optional[int] = None) -> PureState:
    """Graph state: CZ on every edge of the topology applied to |+>^n."""
    n = check_qubit_count(n, minimum=2, cap=cap, what="cluster")
    graph = cluster_graph(n, topology)

    k = np.arange(1 << n, dtype=np.int64)
    parity = np.zeros(1 << n, dtype=np.int64)
    for i, j in graph.edges():
        parity ^= ((k >> i) & 1) & ((k >> j) & 1)

    signs = 1.0 - 2.0 * parity
    amps = (signs * 2.0 ** (-n / 2.0)).astype(np.complex128)
    logger.debug("[CLUSTER] n=%d topology=%s edges=%d", n, topology, graph.number_of_edges())
    return PureState(n, amps)


def make_random(n: int, seed: int, cap: Optional[int] = None) -> PureState:
    """Haar-random state: i.i.d. complex Gaussians, normalized."""
    n = check_qubit_count(n, cap=cap, what="random")
    seed = check_seed(seed)
    rng = np.random.default_rng(seed)
    parts = rng.standard_normal((2, 1 << n))
    amps = parts[0] + 1j * parts[1]
    amps /= np.linalg.norm(amps)
    return PureState(n, amps)


def derive_seeds(seed: int, count: int) -> list[int]:
    """Independent 64-bit seeds for `count` samples, reproducible from one seed."""
    seed = check_seed(seed)
    if count < 1:
        raise InvalidArgumentError(f"sample count must be >= 1, got {count}")
    words = np.random.SeedSequence(seed).generate_state(count, dtype=np.uint64)
    return [int(w) for w in words]


def is_unitary(u: np.ndarray, tol: float = UNITARY_TOL) -> bool:
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        return False
    return bool(np.allclose(u.conj().T @ u, np.eye(2), rtol=0.0, atol=tol))


def apply_single_qubit_unitary(state: PureState, qubit: int, u: np.ndarray) -> PureState:
    if not 0 <= qubit < state.n:
        raise InvalidArgumentError(f"qubit index {qubit} out of range for n={state.n}")
    u = np.asarray(u, dtype=np.complex128)
    if not is_unitary(u):
        raise InvalidArgumentError("u must be a 2x2 unitary (u^dagger u = I within 1e-12)")

    # axis 1 of (high, bit, low) is the target qubit
    tensor = state.amplitudes.reshape(state.dim >> (qubit + 1), 2, 1 << qubit)
    out = np.einsum("ab,hbl->hal", u, tensor).reshape(-1)
    return PureState(state.n, out)


def make_state(
    state_type: str,
    n: int,
    *,
    seed: int = 0,
    topology: Topology = "chain",
    index: int = 0,
    cap: Optional[int] = None,
) -> PureState:
    if state_type == "ghz":
        return make_ghz(n, cap=cap)
    if state_type == "w":
        return make_w(n, cap=cap)
    if state_type == "cluster":
        return make_cluster(n, topology, cap=cap)
    if state_type == "random":
        return make_random(n, seed, cap=cap)
    if state_type == "product":
        return make_product(n, index, cap=cap)
    raise InvalidArgumentError(f"unknown state type {state_type!r}")
