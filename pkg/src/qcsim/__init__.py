"""qcsim: a tensor-based quantum circuit simulator.

Pure and mixed state representations, three execution engines (simple,
MPS, depth-controlled), configurable Kraus noise channels, mid-circuit
measurement with classical control, and an OpenQASM 2.0 front-end.
"""

from .circuit import (
    Circuit,
    Instruction,
    circuit_from_json,
    circuit_to_json,
    depth,
    gate_app,
    measure,
    random_circuit,
)
from .engines import RunConfig, RunResult, run, run_depth, run_mps, run_shots, run_simple
from .gates import Gate, gate_tensor_on, make_gate
from .noise import (
    NoiseChannel,
    NoiseSpec,
    amplitude_damping,
    apply_noisy_gate,
    dephasing,
    depolarizing,
)
from .qasm import ParseError, emit_qasm, parse_qasm
from .state import (
    DensityMatrix,
    MeasurementRecord,
    PureState,
    fidelity,
    measure_qubit,
    partial_trace,
    pure_to_density,
    tensor_product,
)

__all__ = [
    "Circuit",
    "DensityMatrix",
    "Gate",
    "Instruction",
    "MeasurementRecord",
    "NoiseChannel",
    "NoiseSpec",
    "ParseError",
    "PureState",
    "RunConfig",
    "RunResult",
    "amplitude_damping",
    "apply_noisy_gate",
    "circuit_from_json",
    "circuit_to_json",
    "dephasing",
    "depolarizing",
    "depth",
    "emit_qasm",
    "fidelity",
    "gate_app",
    "gate_tensor_on",
    "make_gate",
    "measure",
    "measure_qubit",
    "parse_qasm",
    "partial_trace",
    "pure_to_density",
    "random_circuit",
    "run",
    "run_depth",
    "run_mps",
    "run_shots",
    "run_simple",
    "tensor_product",
]

__version__ = "0.1.0"
