import numpy as np
import pytest

from qcsim.gates import embed_operator, gate_tensor_on, make_gate
from qcsim.noise import (
    NoiseChannel,
    NoiseSpec,
    amplitude_damping,
    apply_noisy_gate,
    dephasing,
    depolarizing,
)
from qcsim.state import DensityMatrix, PureState, pure_to_density

Z = np.diag([1.0, -1.0]).astype(complex)


def random_density(num_qubits, rng):
    d = 2**num_qubits
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    m = a @ a.conj().T
    return DensityMatrix(num_qubits, m / np.trace(m))


def all_channels(epsilon):
    return [dephasing(epsilon), depolarizing(epsilon), amplitude_damping(epsilon)]


class TestChannelConstruction:
    @pytest.mark.parametrize("eps", [0.0, 0.3, 1.0])
    def test_kraus_completeness(self, eps):
        for channel in all_channels(eps):
            total = sum(op.conj().T @ op for op in channel.kraus_ops)
            assert np.abs(total - np.eye(2)).max() < 1e-12

    @pytest.mark.parametrize("eps", [-0.1, 1.1])
    def test_epsilon_out_of_range(self, eps):
        for factory in (dephasing, depolarizing, amplitude_damping):
            with pytest.raises(ValueError):
                factory(eps)

    def test_incomplete_kraus_set_rejected(self):
        with pytest.raises(ValueError):
            NoiseChannel("custom", 0.5, (np.eye(2) * 0.5,))

    def test_bad_slot_rejected(self):
        with pytest.raises(ValueError):
            NoiseSpec({2: dephasing(0.1)})


class TestDephasing:
    def test_epsilon_zero_is_identity(self):
        rng = np.random.default_rng(0)
        rho = random_density(1, rng)
        out = apply_noisy_gate(rho, make_gate("I"), [0], NoiseSpec({0: dephasing(0.0)}))
        assert np.abs(out.matrix - rho.matrix).max() < 1e-12

    def test_half_dephasing_kills_coherence(self):
        plus = pure_to_density(PureState(1, np.array([1, 1]) / np.sqrt(2)))
        out = apply_noisy_gate(plus, make_gate("I"), [0], NoiseSpec({0: dephasing(0.5)}))
        assert np.abs(out.matrix - np.eye(2) / 2).max() < 1e-12

    def test_matches_direct_arithmetic_oracle(self):
        rng = np.random.default_rng(1)
        rho = random_density(1, rng)
        out = apply_noisy_gate(rho, make_gate("I"), [0], NoiseSpec({0: dephasing(0.3)}))
        expected = 0.7 * rho.matrix + 0.3 * Z @ rho.matrix @ Z.conj().T
        assert np.abs(out.matrix - expected).max() < 1e-12

    def test_z_invariant_state_before_x_gate(self):
        rho = DensityMatrix.zero(1)
        out = apply_noisy_gate(rho, make_gate("X"), [0], NoiseSpec({0: dephasing(0.4)}))
        assert np.abs(out.matrix - np.diag([0.0, 1.0])).max() < 1e-12


class TestDepolarizing:
    def test_full_depolarization_gives_maximally_mixed_marginal(self):
        rng = np.random.default_rng(2)
        rho = random_density(2, rng)
        out = apply_noisy_gate(
            rho, make_gate("H"), [1], NoiseSpec({0: depolarizing(1.0)})
        )
        from qcsim.state import partial_trace

        marginal = partial_trace(out, [1])
        assert np.abs(marginal.matrix - np.eye(2) / 2).max() < 1e-10

    def test_epsilon_zero_is_pure_unitary(self):
        rng = np.random.default_rng(3)
        rho = random_density(1, rng)
        h = make_gate("H")
        out = apply_noisy_gate(rho, h, [0], NoiseSpec({0: depolarizing(0.0)}))
        expected = h.matrix @ rho.matrix @ h.matrix.conj().T
        assert np.abs(out.matrix - expected).max() < 1e-12

    def test_matches_combined_form_oracle(self):
        # (1-eps) U rho U^+ + eps I/2 evaluated directly
        rho = DensityMatrix.zero(1)
        h = make_gate("H")
        out = apply_noisy_gate(rho, h, [0], NoiseSpec({0: depolarizing(0.4)}))
        expected = 0.6 * h.matrix @ rho.matrix @ h.matrix.conj().T + 0.4 * np.eye(2) / 2
        assert np.abs(out.matrix - expected).max() < 1e-12

    def test_multi_qubit_mixes_only_the_target_marginal(self):
        rng = np.random.default_rng(4)
        rho = random_density(2, rng)
        out = apply_noisy_gate(
            rho, make_gate("I"), [0], NoiseSpec({0: depolarizing(0.5)})
        )
        from qcsim.state import partial_trace

        # the untouched qubit's marginal is preserved
        kept = partial_trace(rho, [1])
        kept_after = partial_trace(out, [1])
        assert np.abs(kept.matrix - kept_after.matrix).max() < 1e-10


class TestAmplitudeDamping:
    def test_ground_state_fixed(self):
        rho = DensityMatrix.zero(1)
        out = apply_noisy_gate(
            rho, make_gate("I"), [0], NoiseSpec({0: amplitude_damping(0.8)})
        )
        assert np.abs(out.matrix - rho.matrix).max() < 1e-12

    def test_excited_state_decays(self):
        one = DensityMatrix(1, np.diag([0.0, 1.0]))
        out = apply_noisy_gate(
            one, make_gate("I"), [0], NoiseSpec({0: amplitude_damping(0.25)})
        )
        assert np.abs(out.matrix - np.diag([0.25, 0.75])).max() < 1e-12

    def test_matches_direct_kraus_oracle(self):
        rng = np.random.default_rng(5)
        rho = random_density(1, rng)
        eps = 0.6
        out = apply_noisy_gate(
            rho, make_gate("I"), [0], NoiseSpec({0: amplitude_damping(eps)})
        )
        a0 = np.array([[1, 0], [0, np.sqrt(1 - eps)]], dtype=complex)
        a1 = np.array([[0, np.sqrt(eps)], [0, 0]], dtype=complex)
        expected = a0 @ rho.matrix @ a0.conj().T + a1 @ rho.matrix @ a1.conj().T
        assert np.abs(out.matrix - expected).max() < 1e-12


class TestApplyNoisyGate:
    def test_zero_noise_two_qubit_equals_noiseless(self):
        rng = np.random.default_rng(6)
        rho = random_density(2, rng)
        cx = make_gate("CX")
        spec = NoiseSpec({0: dephasing(0.0), 1: dephasing(0.0)})
        out = apply_noisy_gate(rho, cx, [0, 1], spec)
        u = gate_tensor_on(cx, [0, 1], 2)
        expected = u @ rho.matrix @ u.conj().T
        assert np.abs(out.matrix - expected).max() < 1e-12

    def test_two_qubit_tensor_product_matches_kron_oracle(self):
        rng = np.random.default_rng(7)
        rho = random_density(2, rng)
        cx = make_gate("CX")
        spec = NoiseSpec({0: dephasing(0.2), 1: dephasing(0.3)})
        out = apply_noisy_gate(rho, cx, [0, 1], spec)
        u = gate_tensor_on(cx, [0, 1], 2)
        expected = np.zeros((4, 4), dtype=complex)
        for e0 in spec.per_qubit_channels[0].kraus_ops:
            for e1 in spec.per_qubit_channels[1].kraus_ops:
                k = u @ embed_operator(np.kron(e0, e1), [0, 1], 2)
                expected += k @ rho.matrix @ k.conj().T
        assert np.abs(out.matrix - expected).max() < 1e-11

    def test_slot_arity_mismatch_rejected(self):
        rho = DensityMatrix.zero(1)
        with pytest.raises(ValueError):
            apply_noisy_gate(
                rho, make_gate("X"), [0],
                NoiseSpec({0: dephasing(0.1), 1: dephasing(0.1)}),
            )

    def test_trace_preserved_and_psd(self):
        rng = np.random.default_rng(8)
        for eps in (0.1, 0.5, 0.9):
            for channel in all_channels(eps):
                rho = random_density(2, rng)
                out = apply_noisy_gate(
                    rho, make_gate("CX"), [1, 0], NoiseSpec({0: channel, 1: channel})
                )
                assert abs(np.trace(out.matrix) - 1.0) < 1e-10
                assert np.linalg.eigvalsh(out.matrix).min() > -1e-9

    def test_noiseless_reduction_over_random_gates(self):
        rng = np.random.default_rng(9)
        for name in ("H", "T", "RX"):
            params = [rng.uniform(0, 2 * np.pi)] if name == "RX" else []
            gate = make_gate(name, params)
            rho = random_density(2, rng)
            for channel in all_channels(0.0):
                out = apply_noisy_gate(rho, gate, [1], NoiseSpec({0: channel}))
                u = gate_tensor_on(gate, [1], 2)
                expected = u @ rho.matrix @ u.conj().T
                assert np.abs(out.matrix - expected).max() < 1e-12
