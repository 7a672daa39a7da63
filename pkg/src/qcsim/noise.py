"""Kraus noise channels and their application to gates on density matrices.

Three named channels are provided, each parametrized by a strength
``epsilon`` in [0, 1]:

* dephasing:          rho -> (1-eps) rho + eps Z rho Z
* depolarizing:       rho -> (1-eps) U rho U^+ + eps I/2   (gate folded in)
* amplitude damping:  rho -> A0 rho A0^+ + A1 rho A1^+

Dephasing and amplitude damping act on the target qubit before the gate;
depolarizing mixes toward the maximally mixed single-qubit marginal after
the gate. For two-qubit gates the per-slot channels combine as a tensor
product. Every channel carries an explicit Kraus decomposition satisfying
sum_k E_k^+ E_k = I.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gates import Gate, embed_operator, gate_tensor_on
from .state import DensityMatrix, partial_trace

COMPLETENESS_ATOL = 1e-12

DEPHASING = "dephasing"
DEPOLARIZING = "depolarizing"
AMPLITUDE_DAMPING = "amplitude_damping"
CUSTOM = "custom"

_PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
_PAULI_Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)


@dataclass(frozen=True)
class NoiseChannel:
    """Single-qubit channel given by 2x2 Kraus operators."""

    kind: str
    epsilon: float
    kraus_ops: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 1.0:
            raise ValueError(f"epsilon must lie in [0, 1], got {self.epsilon}")
        ops = tuple(np.asarray(op, dtype=np.complex128) for op in self.kraus_ops)
        if not ops:
            raise ValueError("channel needs at least one Kraus operator")
        total = sum(op.conj().T @ op for op in ops)
        if not np.allclose(total, np.eye(2), atol=COMPLETENESS_ATOL, rtol=0):
            raise ValueError("Kraus operators do not satisfy sum E_k^+ E_k = I")
        object.__setattr__(self, "kraus_ops", ops)


def _check_epsilon(epsilon: float) -> None:
    # Validate before taking square roots so out-of-range strengths raise
    # cleanly instead of emitting NaN warnings first.
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError(f"epsilon must lie in [0, 1], got {epsilon}")


def dephasing(epsilon: float) -> NoiseChannel:
    """Phase-flip channel: Kraus set {sqrt(1-eps) I, sqrt(eps) Z}."""
    _check_epsilon(epsilon)
    return NoiseChannel(
        DEPHASING,
        epsilon,
        (np.sqrt(1 - epsilon) * np.eye(2), np.sqrt(epsilon) * _PAULI_Z),
    )


def depolarizing(epsilon: float) -> NoiseChannel:
    """Mix toward I/2 with weight eps, applied after the gate.

    The affine form (1-eps) rho + eps I/2 equals the Pauli-twirl Kraus set
    stored here, so the completeness invariant is checkable like any other
    channel.
    """
    _check_epsilon(epsilon)
    return NoiseChannel(
        DEPOLARIZING,
        epsilon,
        (
            np.sqrt(1 - 3 * epsilon / 4) * np.eye(2),
            np.sqrt(epsilon / 4) * _PAULI_X,
            np.sqrt(epsilon / 4) * _PAULI_Y,
            np.sqrt(epsilon / 4) * _PAULI_Z,
        ),
    )


def amplitude_damping(epsilon: float) -> NoiseChannel:
    """Energy decay |1> -> |0> with strength eps."""
    _check_epsilon(epsilon)
    a0 = np.array([[1, 0], [0, np.sqrt(1 - epsilon)]], dtype=np.complex128)
    a1 = np.array([[0, np.sqrt(epsilon)], [0, 0]], dtype=np.complex128)
    return NoiseChannel(AMPLITUDE_DAMPING, epsilon, (a0, a1))


_FACTORIES = {
    DEPHASING: dephasing,
    DEPOLARIZING: depolarizing,
    AMPLITUDE_DAMPING: amplitude_damping,
}


def channel_from_kind(kind: str, epsilon: float) -> NoiseChannel:
    if kind not in _FACTORIES:
        raise ValueError(f"unknown noise kind {kind!r}")
    return _FACTORIES[kind](epsilon)


@dataclass(frozen=True)
class NoiseSpec:
    """Per-qubit-slot channels for one gate application.

    Slot 0 is the gate's first target, slot 1 the second. A missing slot
    means no noise on that qubit.
    """

    per_qubit_channels: dict

    def __post_init__(self):
        chans = dict(self.per_qubit_channels)
        if any(slot not in (0, 1) for slot in chans):
            raise ValueError("slots must be 0 or 1")
        object.__setattr__(self, "per_qubit_channels", chans)

    def to_dict(self) -> dict:
        return {
            str(slot): {"kind": ch.kind, "epsilon": ch.epsilon}
            for slot, ch in sorted(self.per_qubit_channels.items())
        }

    @staticmethod
    def from_dict(data: dict) -> "NoiseSpec":
        return NoiseSpec(
            {
                int(slot): channel_from_kind(entry["kind"], entry["epsilon"])
                for slot, entry in data.items()
            }
        )

    @staticmethod
    def uniform(kind: str, epsilon: float, arity: int) -> "NoiseSpec":
        """Same channel on every slot of a gate with the given arity."""
        return NoiseSpec(
            {slot: channel_from_kind(kind, epsilon) for slot in range(arity)}
        )


def _apply_kraus_full(rho: np.ndarray, ops) -> np.ndarray:
    out = np.zeros_like(rho)
    for op in ops:
        out += op @ rho @ op.conj().T
    return out


def _mix_with_maximally_mixed(rho: DensityMatrix, qubit: int, epsilon: float):
    """(1-eps) rho + eps * (I/2 on `qubit`) x (marginal of the rest)."""
    n = rho.num_qubits
    if n == 1:
        mixed = np.eye(2, dtype=np.complex128) / 2
    else:
        rest = partial_trace(rho, [q for q in range(n) if q != qubit]).matrix
        # rest carries qubits != qubit in ascending significance; kron puts
        # the target most significant and the rest descending, then the
        # axes are permuted back to global qubit order.
        cur = [qubit] + [q for q in reversed(range(n)) if q != qubit]
        perm = [cur.index(q) for q in reversed(range(n))]
        mixed = np.kron(np.eye(2) / 2, _reorder_descending(rest, n, qubit))
        t = mixed.reshape([2] * (2 * n))
        t = t.transpose(perm + [p + n for p in perm])
        mixed = t.reshape(2**n, 2**n)
    return (1 - epsilon) * rho.matrix + epsilon * mixed


def _reorder_descending(rest: np.ndarray, n: int, removed: int) -> np.ndarray:
    """Reverse the qubit order of a reduced matrix over n-1 qubits.

    partial_trace returns ascending significance; the kron composition in
    _mix_with_maximally_mixed wants descending.
    """
    m = n - 1
    t = rest.reshape([2] * (2 * m))
    perm = list(reversed(range(m)))
    t = t.transpose(perm + [p + m for p in perm])
    return t.reshape(2**m, 2**m)


def apply_noisy_gate(
    rho: DensityMatrix, gate: Gate, targets, spec: NoiseSpec | None
) -> DensityMatrix:
    """Apply `gate` on `targets` with per-slot noise channels.

    Kraus-style channels (dephasing, amplitude damping, custom) act on
    their qubit before the unitary; depolarizing slots mix toward I/2 on
    their qubit after it. spec=None means a noiseless gate.
    """
    targets = list(targets)
    n = rho.num_qubits
    if spec is not None:
        extra = [s for s in spec.per_qubit_channels if s >= gate.arity]
        if extra:
            raise ValueError(
                f"noise slots {extra} invalid for arity-{gate.arity} gate {gate.name}"
            )
    mat = rho.matrix
    if spec is not None:
        pre = {
            s: ch
            for s, ch in spec.per_qubit_channels.items()
            if ch.kind != DEPOLARIZING
        }
        if pre:
            # Tensor-product channel over the gate's target qubits: embed
            # every Kraus product, identity on slots without a channel.
            eye = (np.eye(2, dtype=np.complex128),)
            slot_ops = [
                pre[s].kraus_ops if s in pre else eye for s in range(gate.arity)
            ]
            full_ops = []
            if gate.arity == 1:
                full_ops = [
                    embed_operator(op, targets, n) for op in slot_ops[0]
                ]
            else:
                for op0 in slot_ops[0]:
                    for op1 in slot_ops[1]:
                        full_ops.append(
                            embed_operator(np.kron(op0, op1), targets, n)
                        )
            mat = _apply_kraus_full(mat, full_ops)
    u = gate_tensor_on(gate, targets, n)
    mat = u @ mat @ u.conj().T
    result = DensityMatrix(n, _hermitize(mat))
    if spec is not None:
        for slot, ch in sorted(spec.per_qubit_channels.items()):
            if ch.kind == DEPOLARIZING:
                mixed = _mix_with_maximally_mixed(result, targets[slot], ch.epsilon)
                result = DensityMatrix(n, _hermitize(mixed))
    return result


def _hermitize(mat: np.ndarray) -> np.ndarray:
    # Scrub roundoff so the DensityMatrix invariants see a clean matrix.
    return (mat + mat.conj().T) / 2
