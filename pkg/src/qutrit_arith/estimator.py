"""Closed-form resource counts and the success-probability model.

Two routes are modelled for each arithmetic operation:

``clifford_t``
    every Toffoli expanded into the depth-8, 7-T, 6-CNOT, 2-H network.
``qutrit``
    every Toffoli replaced by three ternary CNOTs of depth three.

Counts are worst-case (all ones in the binary expansion of ``n``). Logs are
real-valued by default; ``floor_log=True`` floors them for integral counts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, asdict
from enum import Enum
from typing import Callable

from .sim import NoiseParams


class OperationKind(str, Enum):
    ADD_SUB = "add_sub"
    MUL_DIV = "mul_div"
    SQRT = "sqrt"

    @classmethod
    def parse(cls, value: "str | OperationKind") -> "OperationKind":
        if isinstance(value, cls):
            return value
        aliases = {"add": cls.ADD_SUB, "sub": cls.ADD_SUB, "mul": cls.MUL_DIV, "div": cls.MUL_DIV}
        try:
            return aliases.get(value) or cls(value)
        except ValueError:
            raise ValueError(f"unknown operation {value!r}") from None


class Route(str, Enum):
    CLIFFORD_T = "clifford_t"
    QUTRIT = "qutrit"

    @classmethod
    def parse(cls, value: "str | Route") -> "Route":
        if isinstance(value, cls):
            return value
        return {"ct": cls.CLIFFORD_T}.get(value) or cls(value)


# Smallest supported register size per operation.
MIN_N = {OperationKind.ADD_SUB: 8, OperationKind.MUL_DIV: 1, OperationKind.SQRT: 2}

_DOMAIN_REASON = {
    OperationKind.ADD_SUB: "the addition count formula is negative for small n",
    OperationKind.MUL_DIV: "register size must be positive",
    OperationKind.SQRT: "the square-root count formula is negative at n=1",
}


@dataclass(frozen=True)
class ResourceEstimate:
    toffoli: float
    total_depth: float
    cnot: float
    t: float
    h: float
    ternary_cnot: float
    route: Route

    def as_dict(self) -> dict:
        d = asdict(self)
        d["route"] = self.route.value
        return d


@dataclass(frozen=True)
class SuccessReport:
    p_success: float
    p_error: float
    one_wire_factor: float
    two_wire_factor: float
    relaxation_factor: float

    def as_dict(self) -> dict:
        return asdict(self)


def _logs(n: int, floor_log: bool) -> tuple[float, float]:
    if floor_log:
        return float(math.floor(math.log2(n))), float(math.floor(math.log2(n - 1)))
    return math.log2(n), math.log2(n - 1)


def _add_formulas(n: int, floor_log: bool) -> dict[str, float]:
    ln, ln1 = _logs(n, floor_log)
    return {
        "toffoli": 4 * n - 3 * ln - 3 * ln1 - 10,
        "total_depth": 32 * n - 24 * ln - 24 * ln1 - 80,
        "cnot": 24 * n - 18 * ln - 18 * ln1 - 60,
        "t": 28 * n - 21 * ln - 21 * ln1 - 70,
        "h": 8 * n - 6 * ln - 6 * ln1 - 20,
        "ternary_cnot": 12 * n - 9 * ln - 9 * ln1 - 30,
    }


def _mul_formulas(n: int, floor_log: bool) -> dict[str, float]:
    return {
        "toffoli": 1.5 * n**2 + 4.5 * n,
        "total_depth": 12 * n**2 + 36 * n,
        "cnot": 9 * n**2 + 27 * n,
        "t": 10.5 * n**2 + 31.5 * n,
        "h": 3 * n**2 + 9 * n,
        "ternary_cnot": 4.5 * n**2 + 13.5 * n,
    }


def _sqrt_formulas(n: int, floor_log: bool) -> dict[str, float]:
    return {
        "toffoli": n**2 / 2 + 3 * n - 4,
        "total_depth": 4 * n**2 + 24 * n - 32,
        "cnot": 3 * n**2 + 18 * n - 24,
        "t": 3.5 * n**2 + 21 * n - 28,
        "h": n**2 + 6 * n - 8,
        "ternary_cnot": 1.5 * n**2 + 9 * n - 12,
    }


_FORMULAS: dict[OperationKind, Callable[[int, bool], dict[str, float]]] = {
    OperationKind.ADD_SUB: _add_formulas,
    OperationKind.MUL_DIV: _mul_formulas,
    OperationKind.SQRT: _sqrt_formulas,
}


def check_domain(kind: OperationKind | str, n: int) -> OperationKind:
    kind = OperationKind.parse(kind)
    if int(n) != n or n < MIN_N[kind]:
        raise ValueError(f"{kind.value} needs integer n >= {MIN_N[kind]} ({_DOMAIN_REASON[kind]}), got {n}")
    return kind


def estimate(kind: OperationKind | str, n: int, route: Route | str, floor_log: bool = False) -> ResourceEstimate:
    kind = check_domain(kind, n)
    route = Route.parse(route)
    f = {k: float(v) for k, v in _FORMULAS[kind](int(n), floor_log).items()}
    if route is Route.CLIFFORD_T:
        return ResourceEstimate(f["toffoli"], f["total_depth"], f["cnot"], f["t"], f["h"], 0.0, route)
    # Three ternary CNOTs per Toffoli, one per layer: depth equals the count.
    tern = f["ternary_cnot"]
    return ResourceEstimate(f["toffoli"], tern, 0.0, 0.0, 0.0, tern, route)


def success_probability(est: ResourceEstimate, noise: NoiseParams | None = None) -> SuccessReport:
    """Probability that no gate fails and no relaxation event occurs."""
    noise = noise or NoiseParams()
    one = (1 - noise.eps1) ** (est.t + est.h)
    two = (1 - noise.eps2) ** (est.cnot + est.ternary_cnot)
    t1 = noise.t1_qubit if est.route is Route.CLIFFORD_T else noise.t1_qutrit
    relax = math.exp(-(est.total_depth * noise.gate_time) / t1)
    p = one * two * relax
    return SuccessReport(p, 1 - p, one, two, relax)


@dataclass(frozen=True)
class SweepRow:
    n: int
    p_success_conventional: float
    p_success_qutrit: float
    error_decrease_percent: float


SWEEP_HEADER = ("n", "p_success_conventional", "p_success_qutrit", "error_decrease_percent")


def sweep(
    kind: OperationKind | str,
    n_from: int,
    n_to: int,
    noise: NoiseParams | None = None,
    floor_log: bool = False,
) -> list[SweepRow]:
    if n_from > n_to:
        raise ValueError(f"empty sweep range {n_from}..{n_to}")
    noise = noise or NoiseParams()
    rows = []
    for n in range(n_from, n_to + 1):
        conv = success_probability(estimate(kind, n, Route.CLIFFORD_T, floor_log), noise).p_success
        tern = success_probability(estimate(kind, n, Route.QUTRIT, floor_log), noise).p_success
        err_conv = 1 - conv
        decrease = 100 * (err_conv - (1 - tern)) / err_conv if err_conv > 0 else 0.0
        rows.append(SweepRow(n, conv, tern, decrease))
    return rows
