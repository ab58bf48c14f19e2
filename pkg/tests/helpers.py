"""Shared test utilities: random valid circuits and an explicit CCX matrix."""
import random

import numpy as np

from qutrit_arith.circuit import Circuit, Gate, GateKind, TernaryAction, WireSpec

QUBIT_ONLY_1 = [GateKind.H, GateKind.T, GateKind.TDG, GateKind.S, GateKind.SDG]


def ccx_matrix() -> np.ndarray:
    """8x8 Toffoli as a permutation matrix, wire 0 most significant."""
    m = np.eye(8, dtype=complex)
    m[[6, 7]] = m[[7, 6]]
    return m


def random_gate(rng: random.Random, radices, barrier: bool = True) -> Gate:
    """One gate that is valid on wires with the given radices."""
    n = len(radices)
    qubits = [i for i, r in enumerate(radices) if r == 2]
    qutrits = [i for i, r in enumerate(radices) if r == 3]
    while True:
        choice = rng.choice(["x", "q1", "cx", "ccx", "tcx", "barrier" if barrier else "x"])
        if choice == "x":
            return Gate(GateKind.X, (rng.randrange(n),))
        if choice == "q1" and qubits:
            return Gate(rng.choice(QUBIT_ONLY_1), (rng.choice(qubits),))
        if choice == "cx" and n >= 2:
            return Gate(GateKind.CX, tuple(rng.sample(range(n), 2)))
        if choice == "ccx" and len(qubits) >= 3:
            return Gate(GateKind.CCX, tuple(rng.sample(qubits, 3)))
        if choice == "tcx" and n >= 2:
            action = rng.choice(list(TernaryAction))
            targets = list(range(n)) if action is TernaryAction.FLIP01 else qutrits
            if not targets:
                continue
            t = rng.choice(targets)
            c = rng.choice([w for w in range(n) if w != t])
            value = rng.choice((1, 2)) if radices[c] == 3 else 1
            return Gate(GateKind.TERNARY_CX, (c, t), value, action)
        if choice == "barrier":
            return Gate(GateKind.BARRIER, (rng.randrange(n),))


def random_circuit(rng: random.Random, max_wires: int = 6, max_gates: int = 30, measure: bool = True) -> Circuit:
    """A random mixed-radix circuit that passes ``validate`` by construction."""
    n = rng.randint(1, max_wires)
    radices = [rng.choice((2, 2, 3)) for _ in range(n)]
    gates = [random_gate(rng, radices) for _ in range(rng.randint(0, max_gates))]
    if measure and rng.random() < 0.3:
        for w in rng.sample(range(n), rng.randint(1, n)):
            gates.append(Gate(GateKind.MEASURE, (w,)))
    return Circuit(tuple(WireSpec(i, r) for i, r in enumerate(radices)), tuple(gates), "random")


def random_unitary_circuit(rng: random.Random, radices, n_gates: int) -> Circuit:
    gates = [random_gate(rng, radices, barrier=False) for _ in range(n_gates)]
    return Circuit(tuple(WireSpec(i, r) for i, r in enumerate(radices)), tuple(gates), "random")
