"""Toffoli decomposition, resource estimation and mixed-radix simulation for
quantum arithmetic circuits with intermediate qutrits."""
from .arith import FixedPointFormat, OperandEncoding, build_adder, build_multiplier, prepare_operand
from .circuit import (
    Circuit,
    CircuitError,
    CountReport,
    Gate,
    GateKind,
    TernaryAction,
    WireSpec,
    depth,
    gate_counts,
    validate,
)
from .decompose import DecompositionVariant, decompose_toffoli, promoted_wires
from .estimator import OperationKind, ResourceEstimate, Route, SuccessReport, estimate, success_probability, sweep
from .qasm import ParseError, QasmParseError, emit_qasm, parse_qasm
from .sim import NoiseParams, run, run_density, unitary_of

__version__ = "0.1.0"
