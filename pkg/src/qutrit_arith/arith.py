"""Small, exhaustively checkable arithmetic circuits.

The adder is an ancilla-free ripple-carry construction over ``2n + 1``
wires; it is *not* the logarithmic-depth adder whose closed-form counts live
in :mod:`qutrit_arith.estimator`. The generated circuits exist so that the
decomposition passes and the simulator have real workloads to agree on.

Wire layout
-----------
Adder ``build_adder(n)``::

    a[i] -> wire i            (0 <= i < n, unchanged)
    b[i] -> wire n + i        (overwritten with (a + b) mod 2**n)
    carry -> wire 2n          (starts at 0, ends holding the carry-out)

Multiplier ``build_multiplier(na, nb)``::

    a[i] -> wire i                      (0 <= i < na)
    b[j] -> wire na + j                 (0 <= j < nb)
    p[k] -> wire na + nb + k            (0 <= k < na + nb, product)
    w[i] -> wire 2(na + nb) + i         (na work wires, only when nb > 1)

Bit 0 is always the least significant bit of a register.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .circuit import Circuit, CircuitError, Gate, GateKind, WireSpec, ccx, cx, x

MAX_ADDER_BITS = 8
MAX_MULTIPLIER_BITS = 4


@dataclass(frozen=True)
class FixedPointFormat:
    """``n`` bits, ``p`` of them left of the binary point."""

    n: int
    p: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0 <= self.p <= self.n:
            raise ValueError(f"p must lie in [0, {self.n}], got {self.p}")

    @property
    def frac_bits(self) -> int:
        return self.n - self.p

    def to_real(self, value: int) -> float:
        return value / 2 ** self.frac_bits

    def from_real(self, x: float) -> int:
        value = round(x * 2 ** self.frac_bits)
        if not 0 <= value < 2 ** self.n:
            raise ValueError(f"{x} is not representable with n={self.n}, p={self.p}")
        return value

    def bits(self, value: int) -> list[int]:
        """Little-endian bits x_0 .. x_{n-1}."""
        return [(value >> i) & 1 for i in range(self.n)]


@dataclass(frozen=True)
class OperandEncoding:
    value: int
    format: FixedPointFormat
    wire_offset: int = 0

    def __post_init__(self):
        if not 0 <= self.value < 2 ** self.format.n:
            raise ValueError(f"value {self.value} does not fit in {self.format.n} bits")
        if self.wire_offset < 0:
            raise ValueError("wire_offset must be non-negative")


def _adder_gates(a: Sequence[int], b: Sequence[int], z: int) -> list[Gate]:
    """In-place ``b <- a + b``, carry XORed into ``z``; ``a`` is restored.

    Ripple-carry without ancilla (Takahashi-Tani-Kunihiro style). Toffolis
    are written with the ``a`` wire as the middle control, so a qutrit pass
    only ever promotes wires of the addend register.
    """
    n = len(a)
    g: list[Gate] = []
    for i in range(1, n):
        g.append(cx(a[i], b[i]))
    if n > 1:
        g.append(cx(a[n - 1], z))
    for i in range(n - 2, 0, -1):
        g.append(cx(a[i], a[i + 1]))
    for i in range(n - 1):
        g.append(ccx(b[i], a[i], a[i + 1]))
    g.append(ccx(b[n - 1], a[n - 1], z))
    for i in range(n - 1, 0, -1):
        g.append(cx(a[i], b[i]))
        g.append(ccx(b[i - 1], a[i - 1], a[i]))
    for i in range(1, n - 1):
        g.append(cx(a[i], a[i + 1]))
    for i in range(n):
        g.append(cx(a[i], b[i]))
    return g


def build_adder(n: int) -> Circuit:
    if not 1 <= n <= MAX_ADDER_BITS:
        raise CircuitError(f"adder size n must lie in [1, {MAX_ADDER_BITS}], got {n}")
    a = list(range(n))
    b = list(range(n, 2 * n))
    wires = [WireSpec(i, 2, f"a[{i}]") for i in a]
    wires += [WireSpec(n + i, 2, f"b[{i}]") for i in range(n)]
    wires.append(WireSpec(2 * n, 2, "carry"))
    return Circuit(tuple(wires), tuple(_adder_gates(a, b, 2 * n)), f"adder_{n}")


def build_multiplier(n_a: int, n_b: int) -> Circuit:
    """Shift-and-add multiplier: ``p <- a * b``.

    Row 0 is written straight into the product with Toffolis. Each later row
    ``j`` forms the partial product ``a * b[j]`` in the work register, adds it
    into ``p[j : j + n_a]`` with the carry landing on ``p[j + n_a]`` (still 0
    at that point), then uncomputes the work register.
    """
    for name, v in (("n_a", n_a), ("n_b", n_b)):
        if not 1 <= v <= MAX_MULTIPLIER_BITS:
            raise CircuitError(f"multiplier size {name} must lie in [1, {MAX_MULTIPLIER_BITS}], got {v}")
    a = list(range(n_a))
    b = list(range(n_a, n_a + n_b))
    p0 = n_a + n_b
    p = list(range(p0, p0 + n_a + n_b))
    w0 = p0 + n_a + n_b
    work = list(range(w0, w0 + n_a)) if n_b > 1 else []

    wires = [WireSpec(i, 2, f"a[{i}]") for i in range(n_a)]
    wires += [WireSpec(b[j], 2, f"b[{j}]") for j in range(n_b)]
    wires += [WireSpec(p[k], 2, f"p[{k}]") for k in range(n_a + n_b)]
    wires += [WireSpec(work[i], 2, f"w[{i}]") for i in range(len(work))]

    gates: list[Gate] = [ccx(a[i], b[0], p[i]) for i in range(n_a)]
    for j in range(1, n_b):
        partial = [ccx(a[i], b[j], work[i]) for i in range(n_a)]
        gates += partial
        gates += _adder_gates(work, p[j:j + n_a], p[j + n_a])
        gates += partial
    return Circuit(tuple(wires), tuple(gates), f"multiplier_{n_a}x{n_b}")


def adder_registers(n: int) -> dict[str, list[int]]:
    return {"a": list(range(n)), "b": list(range(n, 2 * n)), "carry": [2 * n]}


def multiplier_registers(n_a: int, n_b: int) -> dict[str, list[int]]:
    p0 = n_a + n_b
    w0 = p0 + n_a + n_b
    return {
        "a": list(range(n_a)),
        "b": list(range(n_a, p0)),
        "product": list(range(p0, w0)),
        "work": list(range(w0, w0 + n_a)) if n_b > 1 else [],
    }


def prepare_operand(circuit: Circuit, enc: OperandEncoding) -> Circuit:
    """Prepend one X per set bit of ``enc.value``, bit i on wire offset + i.

    A wire whose first gate is already an X counts as prepared; touching it
    again raises.
    """
    bits = enc.format.bits(enc.value)
    targets = [enc.wire_offset + i for i, bit in enumerate(bits) if bit]
    if enc.wire_offset + enc.format.n > circuit.num_wires:
        raise CircuitError(
            f"operand needs wires {enc.wire_offset}..{enc.wire_offset + enc.format.n - 1}, "
            f"circuit has {circuit.num_wires}"
        )
    first: dict[int, Gate] = {}
    for g in circuit.gates:
        for w in g.wires:
            first.setdefault(w, g)
    for w in range(enc.wire_offset, enc.wire_offset + enc.format.n):
        if circuit.radix(w) != 2:
            raise CircuitError(f"wire {w} is not a qubit")
    for w in targets:
        if w in first and first[w].kind is GateKind.X:
            raise CircuitError(f"wire {w} is already prepared")
    return circuit.with_gates([x(w) for w in targets] + list(circuit.gates))


def read_register(digits: Sequence[int], wires: Sequence[int]) -> int:
    """Integer held little-endian on ``wires``."""
    return sum(int(digits[w]) << i for i, w in enumerate(wires))


def basis_input(num_wires: int, **registers: tuple[Sequence[int], int]) -> list[int]:
    """Digits for a basis state with each register ``(wires, value)`` loaded."""
    digits = [0] * num_wires
    for wires, value in registers.values():
        for i, w in enumerate(wires):
            digits[w] = (value >> i) & 1
    return digits
