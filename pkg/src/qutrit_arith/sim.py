"""Exact mixed-radix simulation: statevectors, density matrices, Kraus noise.

Basis ordering is big-endian over wires: wire 0 is the most significant
digit of the flattened index, matching ``numpy.reshape`` of a tensor with
shape ``circuit.dims``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .circuit import Circuit, Gate, GateKind, TernaryAction, check_circuit, gate_layers

UNITARY_DIM_CAP = 256
DENSITY_DIM_CAP = 81


class SimulationError(ValueError):
    pass


# --- gate matrices ----------------------------------------------------------

_SQ = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2),
    GateKind.T: np.diag([1, np.exp(1j * math.pi / 4)]),
    GateKind.TDG: np.diag([1, np.exp(-1j * math.pi / 4)]),
    GateKind.S: np.diag([1, 1j]),
    GateKind.SDG: np.diag([1, -1j]),
}


def _flip01(d: int) -> np.ndarray:
    # X on the {|0>,|1>} subspace; |2> is left alone on a qutrit.
    m = np.eye(d, dtype=complex)
    m[[0, 1]] = m[[1, 0]]
    return m


def _shift(d: int, step: int) -> np.ndarray:
    return np.roll(np.eye(d, dtype=complex), step, axis=0)


def _controlled(dc: int, value: int, target_op: np.ndarray) -> np.ndarray:
    if value >= dc:
        raise SimulationError(f"control value {value} on radix-{dc} wire")
    dt = target_op.shape[0]
    m = np.eye(dc * dt, dtype=complex)
    m[value * dt:(value + 1) * dt, value * dt:(value + 1) * dt] = target_op
    return m


def gate_matrix(gate: Gate, dims: Sequence[int]) -> np.ndarray:
    """Unitary of ``gate`` on its own wires, with per-wire radices ``dims``.

    X and CX act on the qubit subspace of a radix-3 wire and fix |2>.
    """
    k = gate.kind
    if k in (GateKind.MEASURE, GateKind.BARRIER):
        return np.eye(dims[0], dtype=complex)
    if k in _SQ:
        return _SQ[k]
    if k is GateKind.X:
        return _flip01(dims[0])
    if k is GateKind.CX:
        return _controlled(dims[0], 1, _flip01(dims[1]))
    if k is GateKind.CCX:
        inner = _controlled(2, 1, _flip01(2))
        return _controlled(2, 1, inner)
    if k is GateKind.TERNARY_CX:
        if gate.action is TernaryAction.INCREMENT:
            op = _shift(dims[1], 1)
        elif gate.action is TernaryAction.DECREMENT:
            op = _shift(dims[1], -1)
        else:
            op = _flip01(dims[1])
        return _controlled(dims[0], gate.control_value, op)
    raise SimulationError(f"no matrix for {k}")


def _apply_local(tensor: np.ndarray, op: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    """Contract ``op`` (reshaped per ``axes``) into ``tensor`` along ``axes``."""
    shape = [tensor.shape[a] for a in axes]
    k = len(axes)
    op_t = op.reshape(shape + shape)
    out = np.tensordot(op_t, tensor, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(out, list(range(k)), list(axes))


# --- states -------------------------------------------------------------------

@dataclass(frozen=True)
class StateVector:
    dims: tuple[int, ...]
    amplitudes: np.ndarray

    @classmethod
    def basis(cls, dims: Sequence[int], digits: Sequence[int]) -> "StateVector":
        dims = tuple(dims)
        _check_digits(dims, digits)
        amps = np.zeros(int(np.prod(dims, dtype=int)), dtype=complex)
        amps[_index(dims, digits)] = 1.0
        return cls(dims, amps)

    @property
    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_density(self) -> "DensityMatrix":
        return DensityMatrix(self.dims, np.outer(self.amplitudes, self.amplitudes.conj()))

    def basis_label(self, index: int) -> str:
        return "".join(str(d) for d in np.unravel_index(index, self.dims)) if self.dims else ""

    def dominant_digits(self) -> tuple[int, ...]:
        """Digits of the most probable basis state."""
        idx = int(np.argmax(self.probabilities()))
        return tuple(int(d) for d in np.unravel_index(idx, self.dims))


@dataclass(frozen=True)
class DensityMatrix:
    dims: tuple[int, ...]
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def populations(self) -> np.ndarray:
        return np.real(np.diag(self.matrix)).copy()

    def is_valid(self, tol: float = 1e-12, psd_tol: float = 1e-10) -> bool:
        m = self.matrix
        if np.max(np.abs(m - m.conj().T), initial=0.0) > tol:
            return False
        if abs(self.trace() - 1) > tol:
            return False
        return bool(np.min(np.linalg.eigvalsh(m), initial=0.0) >= -psd_tol)

    def fidelity_with_pure(self, psi: StateVector) -> float:
        v = psi.amplitudes
        return float(np.real(v.conj() @ self.matrix @ v))


def _index(dims: Sequence[int], digits: Sequence[int]) -> int:
    return int(np.ravel_multi_index(tuple(digits), tuple(dims))) if dims else 0


def _check_digits(dims: Sequence[int], digits: Sequence[int]) -> None:
    if len(digits) != len(dims):
        raise SimulationError(f"expected {len(dims)} basis digits, got {len(digits)}")
    for i, (d, r) in enumerate(zip(digits, dims)):
        if not 0 <= d < r:
            raise SimulationError(f"basis digit {d} out of range for wire {i} (radix {r})")


def parse_digits(text: str) -> list[int]:
    """``"0102"`` or ``"0,1,0,2"`` -> ``[0, 1, 0, 2]``."""
    text = text.strip()
    parts = text.split(",") if "," in text else list(text)
    return [int(p) for p in parts if p.strip()]


# --- unitary simulation -------------------------------------------------------

def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    if any(not 0 <= w < len(state.dims) for w in gate.wires):
        raise SimulationError(f"gate {gate!r} addresses wires outside a {len(state.dims)}-wire state")
    if gate.kind in (GateKind.MEASURE, GateKind.BARRIER):
        return state
    local = [state.dims[w] for w in gate.wires]
    op = gate_matrix(gate, local)
    if op.shape[0] != int(np.prod(local)):
        raise SimulationError(f"dimension mismatch for {gate!r} on radices {local}")
    out = _apply_local(state.tensor, op, gate.wires)
    return StateVector(state.dims, out.reshape(-1))


def run(circuit: Circuit, input_basis: Sequence[int]) -> StateVector:
    """Evolve a basis state through ``circuit``; measurements are ignored."""
    check_circuit(circuit)
    state = StateVector.basis(circuit.dims, input_basis)
    for g in circuit.gates:
        state = apply_gate(state, g)
    return state


def run_basis(circuit: Circuit, input_basis: Sequence[int]) -> tuple[int, ...]:
    """Classical digit-level evaluation for permutation-only circuits.

    Only X, CX, CCX, TernaryCX, Measure and Barrier are accepted; they all map
    basis states to basis states, so no amplitudes are needed.
    """
    check_circuit(circuit)
    dims = circuit.dims
    _check_digits(dims, input_basis)
    s = list(input_basis)
    for g in circuit.gates:
        k, w = g.kind, g.wires
        if k is GateKind.X:
            if s[w[0]] < 2:
                s[w[0]] ^= 1
        elif k is GateKind.CX:
            if s[w[0]] == 1 and s[w[1]] < 2:
                s[w[1]] ^= 1
        elif k is GateKind.CCX:
            if s[w[0]] == 1 and s[w[1]] == 1:
                s[w[2]] ^= 1
        elif k is GateKind.TERNARY_CX:
            if s[w[0]] == g.control_value:
                d = dims[w[1]]
                if g.action is TernaryAction.INCREMENT:
                    s[w[1]] = (s[w[1]] + 1) % d
                elif g.action is TernaryAction.DECREMENT:
                    s[w[1]] = (s[w[1]] - 1) % d
                elif s[w[1]] < 2:
                    s[w[1]] ^= 1
        elif k not in (GateKind.MEASURE, GateKind.BARRIER):
            raise SimulationError(f"{k.value} is not a basis permutation")
    return tuple(s)


def unitary_of(circuit: Circuit) -> np.ndarray:
    check_circuit(circuit)
    dims = circuit.dims
    total = int(np.prod(dims, dtype=int))
    if total > UNITARY_DIM_CAP:
        raise SimulationError(f"unitary dimension {total} exceeds cap {UNITARY_DIM_CAP}")
    # Evolve all basis columns at once: the trailing axis indexes the input.
    tensor = np.eye(total, dtype=complex).reshape(tuple(dims) + (total,))
    for g in circuit.gates:
        if g.kind in (GateKind.MEASURE, GateKind.BARRIER):
            continue
        op = gate_matrix(g, [dims[w] for w in g.wires])
        tensor = _apply_local(tensor, op, g.wires)
    return tensor.reshape(total, total)


def equivalent_up_to_global_phase(u: np.ndarray, v: np.ndarray, tol: float = 1e-10) -> bool:
    u = np.asarray(u)
    v = np.asarray(v)
    if u.shape != v.shape:
        raise SimulationError(f"shape mismatch {u.shape} vs {v.shape}")
    nz = np.flatnonzero(np.abs(v) > tol)
    if nz.size == 0:
        return bool(np.max(np.abs(u), initial=0.0) <= tol)
    i = nz[0]
    ratio = u.flat[i] / v.flat[i]
    if abs(abs(ratio) - 1) > tol:
        return False
    phase = ratio / abs(ratio)
    return bool(np.max(np.abs(u - phase * v)) <= tol)


# --- channels -----------------------------------------------------------------

@dataclass(frozen=True)
class KrausChannel:
    operators: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def completeness_error(self) -> float:
        acc = sum(k.conj().T @ k for k in self.operators)
        return float(np.max(np.abs(acc - np.eye(self.dim))))

    def apply(self, rho: np.ndarray) -> np.ndarray:
        return sum(k @ rho @ k.conj().T for k in self.operators)


@lru_cache(maxsize=None)
def _weyl_basis(dims: tuple[int, ...]) -> tuple[np.ndarray, ...]:
    """All products of per-wire X^j Z^k, identity first."""
    per_wire = []
    for d in dims:
        omega = np.exp(2j * math.pi / d)
        shift = _shift(d, 1)
        clock = np.diag(omega ** np.arange(d))
        per_wire.append(
            [np.linalg.matrix_power(shift, j) @ np.linalg.matrix_power(clock, k) for j in range(d) for k in range(d)]
        )
    ops = []
    for combo in itertools.product(*per_wire):
        m = np.eye(1, dtype=complex)
        for factor in combo:
            m = np.kron(m, factor)
        ops.append(m)
    return tuple(ops)


def depolarizing_channel(arity_dims: Sequence[int], eps_total: float) -> KrausChannel:
    """Uniform generalised-Pauli channel with total error probability ``eps_total``.

    The identity keeps weight ``1 - eps_total``; each of the ``prod(d^2) - 1``
    non-identity Weyl products gets an equal share of ``eps_total``.
    """
    dims = tuple(int(d) for d in arity_dims)
    if not dims or any(d not in (2, 3) for d in dims):
        raise SimulationError(f"radices must be 2 or 3, got {dims}")
    if not 0 <= eps_total <= 1:
        raise SimulationError(f"eps_total must lie in [0, 1], got {eps_total}")
    basis = _weyl_basis(dims)
    if eps_total == 0:
        return KrausChannel((basis[0],))
    w = math.sqrt(eps_total / (len(basis) - 1))
    errors = tuple(w * b for b in basis[1:])
    # eps_total = 1 leaves no identity term.
    if eps_total == 1:
        return KrausChannel(errors)
    return KrausChannel((math.sqrt(1 - eps_total) * basis[0],) + errors)


def amplitude_damping_channel(radix: int, lambda1: float, lambda2: float = 0.0) -> KrausChannel:
    """Relaxation |1> -> |0> (and |2> -> |0> for qutrits); zero operators dropped."""
    if radix not in (2, 3):
        raise SimulationError(f"radix must be 2 or 3, got {radix}")
    for name, lam in (("lambda1", lambda1), ("lambda2", lambda2)):
        if not 0 <= lam <= 1:
            raise SimulationError(f"{name} must lie in [0, 1], got {lam}")
    if radix == 2:
        k0 = np.diag([1.0, math.sqrt(1 - lambda1)]).astype(complex)
        k1 = np.zeros((2, 2), dtype=complex)
        k1[0, 1] = math.sqrt(lambda1)
        ops = [k0, k1]
    else:
        k0 = np.diag([1.0, math.sqrt(1 - lambda1), math.sqrt(1 - lambda2)]).astype(complex)
        k1 = np.zeros((3, 3), dtype=complex)
        k1[0, 1] = math.sqrt(lambda1)
        k2 = np.zeros((3, 3), dtype=complex)
        k2[0, 2] = math.sqrt(lambda2)
        ops = [k0, k1, k2]
    return KrausChannel(tuple(k for k in ops if np.any(k)))


@dataclass(frozen=True)
class NoiseParams:
    """Gate-error and relaxation parameters.

    ``eps1``/``eps2`` are total error probabilities for one-wire and
    multi-wire gates. Times are in microseconds. When ``lambda1``/``lambda2``
    are left as None, per-layer damping is derived as
    ``1 - exp(-gate_time / t1)``, with ``t1_qubit`` for radix-2 wires and
    ``t1_qutrit`` for radix-3 wires.
    """

    eps1: float = 1e-4
    eps2: float = 1e-2
    t1_qubit: float = 100.0
    t1_qutrit: float = 30.0
    gate_time: float = 1.0
    lambda1: float | None = None
    lambda2: float | None = None

    def __post_init__(self):
        for name in ("eps1", "eps2", "lambda1", "lambda2"):
            v = getattr(self, name)
            if v is not None and not 0 <= v <= 1:
                raise ValueError(f"{name} must lie in [0, 1], got {v}")
        if self.t1_qubit <= 0 or self.t1_qutrit <= 0:
            raise ValueError("relaxation times must be positive")
        if self.gate_time < 0:
            raise ValueError("gate_time must be non-negative")

    @classmethod
    def noiseless(cls) -> "NoiseParams":
        return cls(eps1=0.0, eps2=0.0, gate_time=0.0)

    def damping(self, radix: int) -> tuple[float, float]:
        t1 = self.t1_qubit if radix == 2 else self.t1_qutrit
        derived = 1.0 - math.exp(-self.gate_time / t1)
        lam1 = derived if self.lambda1 is None else self.lambda1
        lam2 = derived if self.lambda2 is None else self.lambda2
        return lam1, (lam2 if radix == 3 else 0.0)


def _apply_channel(rho: np.ndarray, dims: tuple[int, ...], channel: KrausChannel, wires: Sequence[int]) -> np.ndarray:
    n = len(dims)
    col_axes = [w + n for w in wires]
    out = np.zeros_like(rho)
    for k in channel.operators:
        term = _apply_local(rho, k, wires)
        out += _apply_local(term, k.conj(), col_axes)
    return out


def _apply_unitary(rho: np.ndarray, dims: tuple[int, ...], op: np.ndarray, wires: Sequence[int]) -> np.ndarray:
    n = len(dims)
    rho = _apply_local(rho, op, wires)
    return _apply_local(rho, op.conj(), [w + n for w in wires])


def run_density(circuit: Circuit, input_basis: Sequence[int], noise: NoiseParams | None = None) -> DensityMatrix:
    """Noisy density-matrix evolution.

    Every gate is applied ideally and then followed by a depolarizing channel
    on its wires (``eps1`` for one-wire gates, ``eps2`` otherwise). After each
    ASAP layer, amplitude damping hits every wire. Barrier and Measure are
    noiseless no-ops.
    """
    noise = noise or NoiseParams()
    layers = gate_layers(circuit)
    dims = circuit.dims
    total = int(np.prod(dims, dtype=int))
    if total > DENSITY_DIM_CAP:
        raise SimulationError(f"density dimension {total} exceeds cap {DENSITY_DIM_CAP}")
    psi = StateVector.basis(dims, input_basis)
    rho = np.outer(psi.amplitudes, psi.amplitudes.conj()).reshape(dims + dims)

    damping = [amplitude_damping_channel(r, *noise.damping(r)) for r in dims]
    by_layer: dict[int, list[Gate]] = {}
    for g, layer in zip(circuit.gates, layers):
        by_layer.setdefault(layer, []).append(g)
    for layer in range(1, max(layers, default=0) + 1):
        for g in by_layer.get(layer, []):
            if g.kind in (GateKind.MEASURE, GateKind.BARRIER):
                continue
            local = [dims[w] for w in g.wires]
            rho = _apply_unitary(rho, dims, gate_matrix(g, local), g.wires)
            eps = noise.eps1 if len(g.wires) == 1 else noise.eps2
            if eps > 0:
                rho = _apply_channel(rho, dims, depolarizing_channel(local, eps), g.wires)
        for w, ch in enumerate(damping):
            if len(ch.operators) > 1:
                rho = _apply_channel(rho, dims, ch, [w])
    return DensityMatrix(dims, rho.reshape(total, total))


def fidelity_to_ideal(circuit: Circuit, input_basis: Sequence[int], noise: NoiseParams | None = None) -> float:
    """<psi|rho|psi> between the noisy and the noiseless output."""
    ideal = run(circuit, input_basis)
    return run_density(circuit, input_basis, noise).fidelity_with_pure(ideal)
