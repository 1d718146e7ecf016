"""Known-vector tests for the state constructors."""
import numpy as np
import pytest

from entspec.errors import CapExceededError, InvalidArgumentError
from entspec.states import (
    PureState,
    apply_single_qubit_unitary,
    derive_seeds,
    make_cluster,
    make_ghz,
    make_product,
    make_random,
    make_state,
    make_w,
)

S2 = 1.0 / np.sqrt(2.0)


class TestConstructors:
    def test_ghz_single_qubit(self):
        state = make_ghz(1)
        np.testing.assert_allclose(state.amplitudes, [S2, S2], atol=1e-15)

    def test_ghz3(self):
        amps = make_ghz(3).amplitudes
        # (|000> + |111>)/sqrt2  ->  indices 0 and 7
        assert np.flatnonzero(amps).tolist() == [0, 7]
        assert abs(amps[0] - S2) < 1e-15 and abs(amps[7] - S2) < 1e-15

    def test_w3(self):
        amps = make_w(3).amplitudes
        assert np.flatnonzero(amps).tolist() == [1, 2, 4]
        np.testing.assert_allclose(amps[[1, 2, 4]], 1.0 / np.sqrt(3.0), atol=1e-15)

    def test_w2_is_bell_pair(self):
        np.testing.assert_allclose(make_w(2).amplitudes, [0, S2, S2, 0], atol=1e-15)

    def test_cluster_two_qubits(self):
        np.testing.assert_allclose(make_cluster(2).amplitudes, 0.5 * np.array([1, 1, 1, -1]), atol=1e-15)

    def test_cluster_three_qubit_chain_signs(self):
        expected = np.array([1, 1, 1, -1, 1, 1, -1, 1]) / np.sqrt(8.0)
        np.testing.assert_allclose(make_cluster(3, "chain").amplitudes, expected, atol=1e-15)

    @pytest.mark.parametrize("topology", ["chain", "ring"])
    @pytest.mark.parametrize("n", [3, 6, 9])
    def test_cluster_flat_modulus(self, n, topology):
        amps = make_cluster(n, topology).amplitudes
        np.testing.assert_allclose(np.abs(amps), 2.0 ** (-n / 2.0), atol=1e-15)

    def test_ring_adds_closing_edge(self):
        chain, ring = make_cluster(4, "chain").amplitudes, make_cluster(4, "ring").amplitudes
        # index 9 = bits 0 and 3 only: sign flips through the (3, 0) edge alone
        assert chain[9].real > 0 > ring[9].real

    def test_product(self):
        amps = make_product(4, 5).amplitudes
        assert np.flatnonzero(amps).tolist() == [5]

    @pytest.mark.parametrize(
        "factory",
        [make_ghz, make_w, lambda n: make_cluster(max(n, 2)), lambda n: make_random(n, 7), make_product],
    )
    @pytest.mark.parametrize("n", [1, 4, 10])
    def test_normalized_and_sized(self, factory, n):
        state = factory(n)
        assert state.amplitudes.shape == (1 << state.n,)
        assert abs(state.norm() - 1.0) < 1e-12

    def test_amplitudes_are_read_only(self):
        state = make_ghz(3)
        with pytest.raises(ValueError):
            state.amplitudes[0] = 0.0


class TestInvalidArguments:
    def test_zero_qubits(self):
        with pytest.raises(InvalidArgumentError):
            make_ghz(0)

    def test_above_cap(self):
        with pytest.raises(CapExceededError) as info:
            make_w(25)
        assert "24" in str(info.value)

    def test_explicit_cap(self):
        with pytest.raises(CapExceededError):
            make_ghz(6, cap=5)

    def test_cluster_chain_needs_two(self):
        with pytest.raises(InvalidArgumentError):
            make_cluster(1)

    def test_cluster_ring_needs_three(self):
        with pytest.raises(InvalidArgumentError):
            make_cluster(2, "ring")

    def test_unknown_topology(self):
        with pytest.raises(InvalidArgumentError):
            make_cluster(4, "grid")

    def test_unknown_type(self):
        with pytest.raises(InvalidArgumentError):
            make_state("dicke", 4)

    def test_bad_seed(self):
        with pytest.raises(InvalidArgumentError):
            make_random(4, -1)
        with pytest.raises(InvalidArgumentError):
            make_random(4, 2**64)

    def test_from_amplitudes_rejects_unnormalized(self):
        with pytest.raises(InvalidArgumentError):
            PureState.from_amplitudes(np.zeros(8))

    def test_from_amplitudes_rejects_non_power_of_two(self):
        with pytest.raises(InvalidArgumentError):
            PureState.from_amplitudes(np.ones(6) / np.sqrt(6))

    def test_from_amplitudes_rejects_nan(self):
        with pytest.raises(InvalidArgumentError):
            PureState.from_amplitudes(np.array([np.nan, 0, 0, 0]))


class TestRandom:
    def test_deterministic(self):
        a, b = make_random(6, 1234), make_random(6, 1234)
        assert np.array_equal(a.amplitudes, b.amplitudes)

    def test_seed_changes_state(self):
        assert not np.array_equal(make_random(6, 1).amplitudes, make_random(6, 2).amplitudes)

    def test_haar_uniform_weights(self):
        """Mean |z_k|^2 is 1/16 at n=4 within 5 standard errors."""
        samples = np.array([np.abs(make_random(4, s).amplitudes) ** 2 for s in range(1000)])
        mean = samples.mean(axis=0)
        stderr = samples.std(axis=0, ddof=1) / np.sqrt(samples.shape[0])
        assert np.all(np.abs(mean - 1.0 / 16.0) < 5.0 * stderr)

    def test_derive_seeds(self):
        seeds = derive_seeds(42, 20)
        assert seeds == derive_seeds(42, 20)
        assert len(set(seeds)) == 20
        assert all(0 <= s < 2**64 for s in seeds)


class TestSingleQubitUnitary:
    def test_identity(self):
        state = make_random(5, 3)
        out = apply_single_qubit_unitary(state, 2, np.eye(2))
        np.testing.assert_allclose(out.amplitudes, state.amplitudes, atol=1e-15)

    def test_phase_on_unoccupied_branch(self):
        state = make_product(4, 0)
        u = np.diag([1.0, np.exp(0.7j)])
        out = apply_single_qubit_unitary(state, 3, u)
        np.testing.assert_allclose(out.amplitudes, state.amplitudes, atol=1e-15)

    def test_x_flips_target_bit(self):
        x = np.array([[0, 1], [1, 0]])
        out = apply_single_qubit_unitary(make_product(4, 0), 2, x)
        assert np.flatnonzero(out.amplitudes).tolist() == [4]

    @pytest.mark.parametrize("qubit", [0, 3, 5])
    def test_norm_preserved(self, qubit, random_unitary):
        out = apply_single_qubit_unitary(make_random(6, 11), qubit, random_unitary())
        assert abs(out.norm() - 1.0) < 1e-12

    def test_rejects_non_unitary(self):
        with pytest.raises(InvalidArgumentError):
            apply_single_qubit_unitary(make_ghz(3), 0, np.array([[1, 0], [0, 2]]))

    def test_rejects_bad_qubit(self):
        with pytest.raises(InvalidArgumentError):
            apply_single_qubit_unitary(make_ghz(3), 3, np.eye(2))
