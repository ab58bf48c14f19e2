"""Toffoli decomposition passes.

Three ancilla-free Clifford+T expansions, distinguished by their layered
depth, and the intermediate-qutrit expansion that borrows the |2> level of
the second control instead of an ancilla.

======== ===== ======= ====== =========
variant  depth T-count CNOTs  H-count
======== ===== ======= ====== =========
A        12    7       6      2
B        10    7       7      2
C        8     7       6      2
qutrit   3     0       0      0  (3 ternary CNOTs)
======== ===== ======= ====== =========
"""
from __future__ import annotations

from enum import Enum

from .circuit import (
    Circuit,
    CircuitError,
    Gate,
    GateKind,
    TernaryAction,
    check_circuit,
    tcx,
)


class DecompositionVariant(str, Enum):
    CLIFFORD_T_A = "clifford_t_A"
    CLIFFORD_T_B = "clifford_t_B"
    CLIFFORD_T_C = "clifford_t_C"
    QUTRIT = "qutrit"

    @classmethod
    def parse(cls, value: "str | DecompositionVariant") -> "DecompositionVariant":
        if isinstance(value, cls):
            return value
        aliases = {"A": cls.CLIFFORD_T_A, "B": cls.CLIFFORD_T_B, "C": cls.CLIFFORD_T_C}
        try:
            return aliases.get(value) or cls(value)
        except ValueError:
            raise ValueError(f"unknown decomposition variant {value!r}") from None


# Templates over local wires 0, 1 (controls) and 2 (target). Each is the
# CCZ phase polynomial (T on a, b, c, a^b^c; Tdg on the pairwise parities)
# conjugated by H on the target; they differ only in CNOT routing and where
# the phase gates sit, which is what sets the layered depth.
_TEMPLATES: dict[DecompositionVariant, tuple[tuple[str, tuple[int, ...]], ...]] = {
    DecompositionVariant.CLIFFORD_T_A: (
        ("H", (2,)), ("T", (0,)), ("T", (1,)), ("T", (2,)),
        ("CX", (0, 1)), ("Tdg", (1,)), ("CX", (0, 1)),
        ("CX", (0, 2)), ("Tdg", (2,)), ("CX", (1, 2)), ("T", (2,)),
        ("CX", (0, 2)), ("Tdg", (2,)), ("CX", (1, 2)), ("H", (2,)),
    ),
    DecompositionVariant.CLIFFORD_T_B: (
        ("H", (2,)), ("T", (2,)), ("CX", (0, 1)), ("T", (0,)), ("Tdg", (1,)),
        ("CX", (0, 1)), ("T", (1,)), ("CX", (0, 2)), ("CX", (2, 1)),
        ("Tdg", (2,)), ("T", (1,)), ("CX", (0, 1)), ("Tdg", (1,)),
        ("CX", (0, 2)), ("CX", (2, 1)), ("H", (2,)),
    ),
    DecompositionVariant.CLIFFORD_T_C: (
        ("H", (2,)), ("CX", (0, 1)), ("Tdg", (1,)), ("CX", (2, 0)),
        ("Tdg", (0,)), ("CX", (2, 1)), ("T", (1,)), ("CX", (2, 0)),
        ("T", (2,)), ("CX", (0, 1)), ("T", (0,)), ("Tdg", (1,)),
        ("CX", (2, 1)), ("T", (1,)), ("H", (2,)),
    ),
}


def toffoli_expansion(variant: DecompositionVariant | str, c0: int, c1: int, t: int) -> list[Gate]:
    """Gate sequence replacing ``CCX(c0, c1, t)``."""
    variant = DecompositionVariant.parse(variant)
    if variant is DecompositionVariant.QUTRIT:
        return [
            tcx(c0, c1, 1, TernaryAction.INCREMENT),
            tcx(c1, t, 2, TernaryAction.FLIP01),
            tcx(c0, c1, 1, TernaryAction.DECREMENT),
        ]
    local = (c0, c1, t)
    return [Gate(GateKind(kind), tuple(local[w] for w in wires)) for kind, wires in _TEMPLATES[variant]]


def decompose_toffoli(circuit: Circuit, variant: DecompositionVariant | str) -> Circuit:
    """Replace every CCX in ``circuit`` according to ``variant``.

    The qutrit pass marks each CCX's second control as radix 3 and leaves
    it marked, since the simulator must allocate the level used mid-circuit.
    """
    variant = DecompositionVariant.parse(variant)
    check_circuit(circuit)
    if variant is not DecompositionVariant.QUTRIT and any(r != 2 for r in circuit.dims):
        raise CircuitError("qutrit wires present: Clifford+T expansion needs an all-qubit circuit")
    gates: list[Gate] = []
    radices = list(circuit.dims)
    for g in circuit.gates:
        if g.kind is not GateKind.CCX:
            gates.append(g)
            continue
        gates.extend(toffoli_expansion(variant, *g.wires))
        if variant is DecompositionVariant.QUTRIT:
            radices[g.wires[1]] = 3
    out = circuit.with_radices(radices).with_gates(gates)
    return check_circuit(out)


def promoted_wires(before: Circuit, after: Circuit) -> set[int]:
    """Wire ids whose radix went from 2 to 3 between ``before`` and ``after``."""
    if before.num_wires != after.num_wires:
        raise CircuitError(f"mismatched circuits: {before.num_wires} vs {after.num_wires} wires")
    if any(g.kind is GateKind.CCX for g in after.gates):
        raise CircuitError("mismatched circuits: 'after' still contains CCX gates")
    out = set()
    for b, a in zip(before.wires, after.wires):
        if a.radix < b.radix:
            raise CircuitError(f"mismatched circuits: wire {a.id} was demoted")
        if (b.radix, a.radix) == (2, 3):
            out.add(a.id)
    return out
