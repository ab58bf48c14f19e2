"""Mixed-radix circuit representation.

A :class:`Circuit` is an immutable, ordered list of :class:`Gate` objects over
wires whose radix is 2 (qubit) or 3 (qutrit). Wire ids are contiguous from 0.
Controls come first in ``Gate.wires`` and the target is last.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Sequence


class GateKind(str, Enum):
    X = "X"
    H = "H"
    T = "T"
    TDG = "Tdg"
    S = "S"
    SDG = "Sdg"
    CX = "CX"
    CCX = "CCX"
    TERNARY_CX = "TernaryCX"
    MEASURE = "Measure"
    BARRIER = "Barrier"

    @property
    def arity(self) -> int:
        if self in (GateKind.CX, GateKind.TERNARY_CX):
            return 2
        if self is GateKind.CCX:
            return 3
        return 1


class TernaryAction(str, Enum):
    INCREMENT = "increment"
    DECREMENT = "decrement"
    FLIP01 = "flip01"


# Gates whose matrices are only defined on qubits.
QUBIT_ONLY = frozenset(
    {GateKind.H, GateKind.T, GateKind.TDG, GateKind.S, GateKind.SDG, GateKind.CCX}
)


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class WireSpec:
    id: int
    radix: int = 2
    label: str | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    wires: tuple[int, ...]
    control_value: int | None = None
    action: TernaryAction | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        object.__setattr__(self, "wires", tuple(int(w) for w in self.wires))
        if self.kind is GateKind.TERNARY_CX:
            if self.control_value not in (1, 2):
                raise CircuitError(f"TernaryCX control value must be 1 or 2, got {self.control_value!r}")
            if self.action is None:
                raise CircuitError("TernaryCX requires an action")
            object.__setattr__(self, "action", TernaryAction(self.action))
        elif self.control_value is not None or self.action is not None:
            raise CircuitError(f"{self.kind.value} takes no parameters")

    @property
    def params(self) -> dict:
        if self.kind is GateKind.TERNARY_CX:
            return {"control_value": self.control_value, "action": self.action.value}
        return {}

    def __repr__(self) -> str:
        extra = f"({self.control_value},{self.action.value})" if self.kind is GateKind.TERNARY_CX else ""
        return f"{self.kind.value}{extra}{list(self.wires)}"


def x(w: int) -> Gate:
    return Gate(GateKind.X, (w,))


def cx(c: int, t: int) -> Gate:
    return Gate(GateKind.CX, (c, t))


def ccx(c0: int, c1: int, t: int) -> Gate:
    return Gate(GateKind.CCX, (c0, c1, t))


def tcx(control: int, target: int, control_value: int, action: TernaryAction | str) -> Gate:
    return Gate(GateKind.TERNARY_CX, (control, target), control_value, TernaryAction(action))


@dataclass(frozen=True)
class Circuit:
    """Immutable mixed-radix circuit.

    Equality is structural: wire radices and the gate sequence. The circuit
    name and wire labels are carried along but do not take part in ``==``.
    """

    wires: tuple[WireSpec, ...] = ()
    gates: tuple[Gate, ...] = ()
    name: str = field(default="circuit", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(self.wires))
        object.__setattr__(self, "gates", tuple(self.gates))

    @classmethod
    def on_qubits(cls, n: int, gates: Iterable[Gate] = (), name: str = "circuit") -> "Circuit":
        return cls(tuple(WireSpec(i, 2) for i in range(n)), tuple(gates), name)

    @property
    def num_wires(self) -> int:
        return len(self.wires)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(w.radix for w in self.wires)

    def radix(self, wire: int) -> int:
        return self.wires[wire].radix

    def with_gates(self, gates: Iterable[Gate]) -> "Circuit":
        return replace(self, gates=tuple(gates))

    def with_radices(self, radices: Sequence[int]) -> "Circuit":
        wires = tuple(replace(w, radix=r) for w, r in zip(self.wires, radices))
        return replace(self, wires=wires)

    def append(self, *gates: Gate) -> "Circuit":
        return replace(self, gates=self.gates + gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        return concat(self, other)

    def __len__(self) -> int:
        return len(self.gates)


@dataclass(frozen=True)
class Violation:
    gate_index: int | None
    rule: str

    def __str__(self) -> str:
        where = "circuit" if self.gate_index is None else f"gate {self.gate_index}"
        return f"{where}: {self.rule}"


@dataclass(frozen=True)
class CountReport:
    toffoli_count: int = 0
    t_count: int = 0
    cnot_count: int = 0
    h_count: int = 0
    ternary_cnot_count: int = 0
    one_wire_gate_count: int = 0
    two_wire_gate_count: int = 0
    depth: int = 0

    def as_dict(self) -> dict:
        return {
            "toffoli_count": self.toffoli_count,
            "t_count": self.t_count,
            "cnot_count": self.cnot_count,
            "h_count": self.h_count,
            "ternary_cnot_count": self.ternary_cnot_count,
            "one_wire_gate_count": self.one_wire_gate_count,
            "two_wire_gate_count": self.two_wire_gate_count,
            "depth": self.depth,
        }


def validate(circuit: Circuit) -> list[Violation]:
    """Check every structural invariant; return the violations (empty when ok).

    Rules beyond arity and wire existence:

    * H, T, Tdg, S, Sdg and CCX act on radix-2 wires only.
    * TernaryCX increment/decrement need a radix-3 target; flip01 may target
      either radix. A control value of 2 needs a radix-3 control.
    * Once a wire is measured, only further measurements may touch it.
    """
    out: list[Violation] = []
    for i, w in enumerate(circuit.wires):
        if w.id != i:
            out.append(Violation(None, f"wire ids not contiguous: position {i} has id {w.id}"))
        if w.radix not in (2, 3):
            out.append(Violation(None, f"wire {w.id} has radix {w.radix}, expected 2 or 3"))
    n = len(circuit.wires)
    measured: set[int] = set()
    for gi, g in enumerate(circuit.gates):
        if len(g.wires) != g.kind.arity:
            out.append(Violation(gi, f"arity mismatch: {g.kind.value} takes {g.kind.arity} wires, got {len(g.wires)}"))
        if len(set(g.wires)) != len(g.wires):
            out.append(Violation(gi, "non-distinct wires"))
        bad = [w for w in g.wires if not 0 <= w < n]
        if bad:
            out.append(Violation(gi, f"unknown wire(s) {bad}"))
            continue
        radices = [circuit.wires[w].radix for w in g.wires]
        if g.kind in QUBIT_ONLY and any(r != 2 for r in radices):
            out.append(Violation(gi, "qubit-only gate on ternary wire"))
        if g.kind is GateKind.TERNARY_CX and len(radices) == 2:
            if g.action is not TernaryAction.FLIP01 and radices[1] != 3:
                out.append(Violation(gi, f"ternary {g.action.value} needs a radix-3 target"))
            if g.control_value == 2 and radices[0] != 3:
                out.append(Violation(gi, "control value 2 on a radix-2 control"))
        if g.kind is GateKind.MEASURE:
            measured.update(g.wires)
        elif measured.intersection(g.wires):
            out.append(Violation(gi, "gate after measurement on the same wire"))
    return out


def check_circuit(circuit: Circuit) -> Circuit:
    """Raise :class:`CircuitError` unless ``circuit`` validates."""
    problems = validate(circuit)
    if problems:
        raise CircuitError("validation failed: " + "; ".join(map(str, problems)))
    return circuit


def _layers(circuit: Circuit) -> list[int]:
    # ASAP layering: each gate sits one layer above the latest gate on its wires.
    last = [0] * circuit.num_wires
    layers = []
    for g in circuit.gates:
        layer = 1 + max(last[w] for w in g.wires)
        for w in g.wires:
            last[w] = layer
        layers.append(layer)
    return layers


def gate_layers(circuit: Circuit) -> list[int]:
    """Layer index (1-based) of every gate under ASAP scheduling."""
    check_circuit(circuit)
    return _layers(circuit)


def depth(circuit: Circuit) -> int:
    """Longest wire-dependency path, in gate layers.

    Barrier and Measure each occupy a layer on their wire.
    """
    check_circuit(circuit)
    return max(_layers(circuit), default=0)


def gate_counts(circuit: Circuit) -> CountReport:
    check_circuit(circuit)
    tally = {k: 0 for k in GateKind}
    for g in circuit.gates:
        tally[g.kind] += 1
    one_wire = sum(tally[k] for k in (GateKind.X, GateKind.H, GateKind.T, GateKind.TDG, GateKind.S, GateKind.SDG))
    return CountReport(
        toffoli_count=tally[GateKind.CCX],
        t_count=tally[GateKind.T] + tally[GateKind.TDG],
        cnot_count=tally[GateKind.CX],
        h_count=tally[GateKind.H],
        ternary_cnot_count=tally[GateKind.TERNARY_CX],
        one_wire_gate_count=one_wire,
        two_wire_gate_count=tally[GateKind.CX] + tally[GateKind.TERNARY_CX],
        depth=max(_layers(circuit), default=0),
    )


def concat(a: Circuit, b: Circuit) -> Circuit:
    """Run ``a`` then ``b`` on a shared wire set; radices are merged by max."""
    n = max(a.num_wires, b.num_wires)
    wires = []
    for i in range(n):
        ra = a.wires[i].radix if i < a.num_wires else 2
        rb = b.wires[i].radix if i < b.num_wires else 2
        label = a.wires[i].label if i < a.num_wires else b.wires[i].label
        wires.append(WireSpec(i, max(ra, rb), label))
    return Circuit(tuple(wires), a.gates + b.gates, a.name)


# --- canonical JSON -------------------------------------------------------

def to_dict(circuit: Circuit) -> dict:
    return {
        "name": circuit.name,
        "wires": [{"id": w.id, "radix": w.radix, "label": w.label} for w in circuit.wires],
        "gates": [{"kind": g.kind.value, "params": g.params, "wires": list(g.wires)} for g in circuit.gates],
    }


def from_dict(data: dict) -> Circuit:
    wires = tuple(WireSpec(int(w["id"]), int(w["radix"]), w.get("label")) for w in data["wires"])
    gates = []
    for g in data["gates"]:
        params = g.get("params") or {}
        gates.append(Gate(GateKind(g["kind"]), tuple(g["wires"]), params.get("control_value"), params.get("action")))
    return Circuit(wires, tuple(gates), data.get("name", "circuit"))


def to_json(circuit: Circuit, indent: int | None = 2) -> str:
    return json.dumps(to_dict(circuit), indent=indent)


def from_json(text: str) -> Circuit:
    return from_dict(json.loads(text))
