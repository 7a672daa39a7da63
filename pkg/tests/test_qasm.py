import math

import numpy as np
import pytest

from qcsim.circuit import Circuit, depth, gate_app, measure, random_circuit
from qcsim.gates import make_gate
from qcsim.qasm import ParseError, emit_qasm, parse_qasm

BELL = """OPENQASM 2.0;
include "qelib1.inc";
qreg q[2];
creg c[2];
h q[0];
cx q[0],q[1];
measure q -> c;
"""


class TestParse:
    def test_bell_program(self):
        c = parse_qasm(BELL)
        assert c.num_qubits == 2 and c.num_clbits == 2
        kinds = [ins.kind for ins in c.instructions]
        assert kinds == ["gate", "gate", "measure", "measure"]
        assert depth(c) == 3
        assert c.instructions[1].gate.name == "CX"
        assert c.instructions[1].targets == (0, 1)

    def test_parameter_expression(self):
        c = parse_qasm(
            'OPENQASM 2.0;\nqreg q[1];\nrz(pi/2) q[0];\nrx(-pi) q[0];\n'
            'ry(2*pi - pi/4) q[0];\n'
        )
        assert c.instructions[0].gate.params == (math.pi / 2,)
        assert c.instructions[1].gate.params == (-math.pi,)
        assert c.instructions[2].gate.params == (2 * math.pi - math.pi / 4,)

    def test_conditional_gate(self):
        source = (
            'OPENQASM 2.0;\nqreg q[3];\ncreg c[1];\n'
            'h q[0];\nmeasure q[0] -> c[0];\nif (c == 1) x q[2];\n'
        )
        c = parse_qasm(source)
        conditional = c.instructions[-1]
        assert conditional.gate.name == "X"
        assert conditional.targets == (2,)
        assert conditional.condition == (0, 1)

    def test_multiple_registers_flattened(self):
        source = (
            'OPENQASM 2.0;\nqreg a[2];\nqreg b[1];\ncreg m[1];\n'
            'x b[0];\nmeasure b[0] -> m[0];\n'
        )
        c = parse_qasm(source)
        assert c.num_qubits == 3
        assert c.instructions[0].targets == (2,)  # b[0] follows a[0..1]

    def test_whole_register_gate_broadcast(self):
        c = parse_qasm('OPENQASM 2.0;\nqreg q[3];\nh q;\n')
        assert [ins.targets for ins in c.instructions] == [(0,), (1,), (2,)]

    def test_u_gates_lowered(self):
        c = parse_qasm(
            'OPENQASM 2.0;\nqreg q[1];\nu1(pi/4) q[0];\nu2(0,pi) q[0];\n'
            'u3(pi/2,0,pi) q[0];\n'
        )
        assert all(ins.gate.name == "U3" for ins in c.instructions)
        # u1(t) acts as a phase gate up to global phase
        u1 = c.instructions[0].gate.matrix
        assert abs(u1[1, 1] / u1[0, 0] - np.exp(1j * np.pi / 4)) < 1e-12

    def test_barrier_ignored(self):
        c = parse_qasm('OPENQASM 2.0;\nqreg q[2];\nh q[0];\nbarrier q;\nh q[1];\n')
        assert len(c.instructions) == 2

    def test_comments_skipped(self):
        c = parse_qasm('OPENQASM 2.0; // header\nqreg q[1]; // one qubit\nx q[0];\n')
        assert len(c.instructions) == 1


class TestParseErrors:
    def check(self, source, kind=None):
        with pytest.raises(ParseError) as exc_info:
            parse_qasm(source)
        err = exc_info.value
        lines = source.split("\n")
        assert 1 <= err.line <= len(lines)
        assert err.column >= 1
        if kind is not None:
            assert err.kind == kind
        return err

    def test_wrong_version(self):
        self.check('OPENQASM 3.0;\nqreg q[1];\n', "Semantic")

    def test_missing_header(self):
        self.check('qreg q[1];\n', "Syntax")

    def test_unknown_gate(self):
        self.check('OPENQASM 2.0;\nqreg q[3];\nccx q[0],q[1],q[2];\n', "Semantic")

    def test_gate_definition_rejected(self):
        self.check('OPENQASM 2.0;\nqreg q[1];\ngate foo a { x a; }\n', "Semantic")

    def test_opaque_rejected(self):
        self.check('OPENQASM 2.0;\nqreg q[1];\nopaque foo a;\n', "Semantic")

    def test_multi_bit_if_rejected(self):
        self.check(
            'OPENQASM 2.0;\nqreg q[1];\ncreg c[2];\nif (c == 2) x q[0];\n',
            "Semantic",
        )

    def test_undeclared_register(self):
        self.check('OPENQASM 2.0;\nqreg q[1];\nx r[0];\n', "Semantic")

    def test_index_out_of_range(self):
        self.check('OPENQASM 2.0;\nqreg q[2];\nx q[2];\n', "Semantic")

    def test_lex_error_with_position(self):
        err = self.check('OPENQASM 2.0;\nqreg q[1];\nx q[0] $;\n', "Lex")
        assert err.line == 3

    def test_duplicate_register(self):
        self.check('OPENQASM 2.0;\nqreg q[1];\ncreg q[1];\n', "Semantic")

    @pytest.mark.parametrize(
        "garbage",
        ["", "OPENQASM", "OPENQASM 2.0;", "OPENQASM 2.0; qreg q[1]; x", "((((", "\x00"],
    )
    def test_total_on_malformed_input(self, garbage):
        with pytest.raises(ParseError):
            parse_qasm(garbage)


class TestEmit:
    def test_bell_text(self):
        c = Circuit(2, 0, [gate_app(make_gate("H"), (0,)),
                           gate_app(make_gate("CX"), (0, 1))])
        text = emit_qasm(c)
        assert "h q[0];" in text
        assert "cx q[0],q[1];" in text

    def test_empty_circuit(self):
        text = emit_qasm(Circuit(3))
        assert text == 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[3];\n'

    def test_conditions_and_measures_round_trip(self):
        c = Circuit(2, 2, [
            gate_app(make_gate("H"), (0,)),
            measure(0, 0),
            gate_app(make_gate("X"), (1,), condition=(0, 1)),
            measure(1, 1),
        ])
        restored = parse_qasm(emit_qasm(c))
        assert restored.num_clbits == 2
        assert restored.instructions[2].condition == (0, 1)
        assert restored.instructions[3].qubit == 1

    @pytest.mark.parametrize("seed", range(8))
    def test_generated_circuits_round_trip(self, seed):
        c = random_circuit(4, 6, seed)
        restored = parse_qasm(emit_qasm(c))
        assert restored.num_qubits == c.num_qubits
        assert len(restored.instructions) == len(c.instructions)
        for a, b in zip(c.instructions, restored.instructions):
            assert a.gate.name == b.gate.name
            assert a.gate.params == b.gate.params
            assert a.targets == b.targets
