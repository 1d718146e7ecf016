from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bipartition import BipartitionMask, complement
from .config import settings
from .errors import CapExceededError, InvalidArgumentError
from .models import PurityRecord
from .states import PureState

logger = logging.getLogger(__name__)

EQUALITY_TOL = 1e-10
BOUND_TOL = 1e-9


@dataclass(frozen=True)
class GramMatrix:
    """Reduced density matrix rho_A = tr_B |psi><psi|, indexed by j_A."""

    n_A: int
    entries: np.ndarray

    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    def check(self, psd: bool = False, expected_trace: float = 1.0) -> None:
        rho = self.entries
        if not np.allclose(rho, rho.conj().T, rtol=0.0, atol=1e-12):
            raise InvalidArgumentError("reduced state is not Hermitian")
        if abs(self.trace() - expected_trace) > EQUALITY_TOL:
            raise InvalidArgumentError(f"reduced state trace {self.trace():.15g} != {expected_trace:.15g}")
        if psd:
            smallest = float(np.linalg.eigvalsh(rho).min())
            if smallest < -EQUALITY_TOL:
                raise InvalidArgumentError(f"reduced state has negative eigenvalue {smallest:.3e}")


def _check_dims(state: PureState, b: BipartitionMask) -> None:
    if state.n != b.n:
        raise InvalidArgumentError(f"state has n={state.n} qubits but mask {b.hex()} is for n={b.n}")


def coefficient_matrix(state: PureState, b: BipartitionMask) -> np.ndarray:
    """Amplitudes rearranged as the N_A x N_B matrix z[j_A, l_B]."""
    _check_dims(state, b)
    return state.amplitudes[b.index_matrix()]


def reduce(state: PureState, b: BipartitionMask) -> GramMatrix:
    m = coefficient_matrix(state, b)
    return GramMatrix(n_A=b.n_A, entries=m @ m.conj().T)


def gram_purity(gram: GramMatrix) -> float:
    """tr rho_A^2, i.e. the squared Frobenius norm of a Hermitian rho_A."""
    flat = gram.entries.ravel()
    return float(np.vdot(flat, flat).real)


def _record(value: float, b: BipartitionMask) -> PurityRecord:
    participation = 1.0 / value
    upper = min(b.N_A, b.N_B) + BOUND_TOL
    if not 1.0 - BOUND_TOL <= participation <= upper:
        raise InvalidArgumentError(
            f"participation {participation:.15g} for mask {b.hex()} violates 1 <= N_AB <= {upper - BOUND_TOL:g}"
        )
    return PurityRecord(purity=value, participation=participation, entangled_qubits=float(np.log2(participation)))


def purity(state: PureState, b: BipartitionMask) -> PurityRecord:
    _check_dims(state, b)
    # tr rho_A^2 == tr rho_B^2; contract on the smaller side
    side = b if b.n_A <= b.n_B else complement(b)
    gram = reduce(state, side)
    # loaded states may carry a norm off by up to 1e-9; purity is quartic in psi
    norm_sq = state.norm_squared()
    gram.check(expected_trace=norm_sq)
    return _record(gram_purity(gram) / (norm_sq * norm_sq), b)


def purity_quartic_oracle(state: PureState, b: BipartitionMask, cap: Optional[int] = None) -> float:
    """
    Direct quadruple sum

        sum_{j,j',l,l'} z[j,l] conj(z[j',l]) z[j',l'] conj(z[j,l'])

    with no intermediate Gram matrix. O(N_A^2 N_B^2); a test oracle only.
    """
    limit = settings.ORACLE_MAX_N if cap is None else cap
    if state.n > limit:
        raise CapExceededError("purity_quartic_oracle (quartic cost)", state.n, limit)
    z = coefficient_matrix(state, b)
    zc = z.conj()
    value = np.einsum("jl,kl,km,jm->", z, zc, z, zc, optimize=False)
    return float(value.real)


def w_purity_closed_form(n: int, n_a: int) -> float:
    """Participation number n^2 / (n_A^2 + n_B^2) of the W state for an (n_A, n_B) cut."""
    if not 1 <= n_a < n:
        raise InvalidArgumentError(f"need 1 <= n_A < n, got n={n}, n_A={n_a}")
    n_b = n - n_a
    return n * n / (n_a * n_a + n_b * n_b)
