"""Command-line entry point.

Exit codes: 0 success, 1 domain error (bad sizes, invalid circuit, parse
errors), 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

import numpy as np

from . import arith, circuit as ir, estimator, qasm, sim
from .decompose import decompose_toffoli

VARIANT_CHOICES = ["A", "B", "C", "qutrit", "clifford_t_A", "clifford_t_B", "clifford_t_C"]


def _read_circuit(path: str) -> tuple[ir.Circuit, str]:
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    if text.lstrip().startswith("{"):
        return ir.from_json(text), "json"
    return qasm.parse_qasm(text), "qasm"


def _circuit_text(c: ir.Circuit, fmt: str) -> str:
    return qasm.emit_qasm(c) if fmt == "qasm" else ir.to_json(c) + "\n"


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([v if isinstance(v, (int, np.integer)) else f"{v:.6g}" for v in row])
    return buf.getvalue()


def _noise(args) -> sim.NoiseParams:
    return sim.NoiseParams(args.eps1, args.eps2, args.t1q, args.t1t, args.gate_time)


def _require_format(parser, args, allowed: Sequence[str], default: str) -> str:
    fmt = args.format or default
    if fmt not in allowed:
        parser.error(f"--format {fmt} is not valid for '{args.command}' (choose from {', '.join(allowed)})")
    return fmt


# --- commands ---------------------------------------------------------------

def cmd_generate(parser, args) -> str:
    fmt = _require_format(parser, args, ("json", "qasm"), "json")
    if args.op == "adder":
        if args.n is None:
            parser.error("generate adder needs --n")
        c = arith.build_adder(args.n)
    else:
        if args.na is None or args.nb is None:
            parser.error("generate multiplier needs --na and --nb")
        c = arith.build_multiplier(args.na, args.nb)
    return _circuit_text(c, fmt)


def cmd_decompose(parser, args) -> str:
    c, src_fmt = _read_circuit(args.input)
    fmt = _require_format(parser, args, ("json", "qasm"), src_fmt)
    return _circuit_text(decompose_toffoli(c, args.variant), fmt)


def cmd_count(parser, args) -> str:
    c, _ = _read_circuit(args.input)
    fmt = _require_format(parser, args, ("json", "csv"), "json")
    report = ir.gate_counts(c).as_dict()
    if fmt == "csv":
        return _csv(list(report), [list(report.values())])
    return _json(report)


def cmd_estimate(parser, args) -> str:
    _require_format(parser, args, ("json",), "json")
    est = estimator.estimate(args.op, args.n, args.route, floor_log=args.floor_log)
    report = estimator.success_probability(est, _noise(args))
    kind = estimator.OperationKind.parse(args.op)
    return _json({"op": kind.value, "n": args.n, "estimate": est.as_dict(), "success": report.as_dict()})


def cmd_sweep(parser, args) -> str:
    fmt = _require_format(parser, args, ("csv", "json"), "csv")
    rows = estimator.sweep(args.op, args.n_from, args.n_to, _noise(args), floor_log=args.floor_log)
    if fmt == "json":
        return _json([dict(zip(estimator.SWEEP_HEADER, (r.n, r.p_success_conventional, r.p_success_qutrit,
                                                          r.error_decrease_percent))) for r in rows])
    return _csv(estimator.SWEEP_HEADER,
                [(r.n, r.p_success_conventional, r.p_success_qutrit, r.error_decrease_percent) for r in rows])


def cmd_simulate(parser, args) -> str:
    _require_format(parser, args, ("json",), "json")
    c, _ = _read_circuit(args.input)
    digits = sim.parse_digits(args.input_basis)
    out: dict = {"dims": list(c.dims), "input": digits}
    if args.noise or args.compare_ideal:
        rho = sim.run_density(c, digits, _noise(args) if args.noise else sim.NoiseParams.noiseless())
        pops = rho.populations()
        out["populations"] = {
            "".join(map(str, np.unravel_index(i, c.dims))): float(p) for i, p in enumerate(pops) if p > 1e-15
        }
        out["trace"] = float(np.real(rho.trace()))
        if args.compare_ideal:
            out["fidelity"] = rho.fidelity_with_pure(sim.run(c, digits))
    else:
        state = sim.run(c, digits)
        out["amplitudes"] = {
            state.basis_label(i): [float(a.real), float(a.imag)]
            for i, a in enumerate(state.amplitudes) if abs(a) > 1e-15
        }
    return _json(out)


COMMANDS = {
    "generate": cmd_generate,
    "decompose": cmd_decompose,
    "count": cmd_count,
    "estimate": cmd_estimate,
    "sweep": cmd_sweep,
    "simulate": cmd_simulate,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "qasm"], default=None)
    common.add_argument("--output", "-o", default=None, help="write to this path instead of stdout")
    common.add_argument("--seed", type=int, default=None, help="reserved; every command is deterministic")

    noise = argparse.ArgumentParser(add_help=False)
    defaults = sim.NoiseParams()
    noise.add_argument("--eps1", type=float, default=defaults.eps1)
    noise.add_argument("--eps2", type=float, default=defaults.eps2)
    noise.add_argument("--t1q", type=float, default=defaults.t1_qubit, help="qubit T1, microseconds")
    noise.add_argument("--t1t", type=float, default=defaults.t1_qutrit, help="qutrit T1, microseconds")
    noise.add_argument("--gate-time", type=float, default=defaults.gate_time, help="layer duration, microseconds")

    parser = argparse.ArgumentParser(prog="qutrit-arith", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", parents=[common], help="build an adder or multiplier circuit")
    p.add_argument("op", choices=["adder", "multiplier"])
    p.add_argument("--n", type=int)
    p.add_argument("--na", type=int)
    p.add_argument("--nb", type=int)

    p = sub.add_parser("decompose", parents=[common], help="expand every Toffoli")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--variant", choices=VARIANT_CHOICES, default="C")

    p = sub.add_parser("count", parents=[common], help="gate tallies and depth")
    p.add_argument("input", nargs="?", default="-")

    ops = ["add", "sub", "mul", "div", "sqrt", "add_sub", "mul_div"]
    p = sub.add_parser("estimate", parents=[common, noise], help="closed-form resources and success probability")
    p.add_argument("--op", choices=ops, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--route", choices=["ct", "clifford_t", "qutrit"], default="qutrit")
    p.add_argument("--floor-log", action="store_true")

    p = sub.add_parser("sweep", parents=[common, noise], help="success probability over a range of n")
    p.add_argument("--op", choices=ops, required=True)
    p.add_argument("--from", dest="n_from", type=int, required=True)
    p.add_argument("--to", dest="n_to", type=int, required=True)
    p.add_argument("--floor-log", action="store_true")

    p = sub.add_parser("simulate", parents=[common, noise], help="run a circuit on a basis input")
    p.add_argument("input", nargs="?", default="-")
    p.add_argument("--input", dest="input_basis", required=True, metavar="DIGITS",
                   help="basis digits, e.g. 110 or 1,1,0")
    p.add_argument("--noise", action="store_true", help="density-matrix run with the noise flags")
    p.add_argument("--compare-ideal", action="store_true", help="report fidelity to the noiseless output")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = COMMANDS[args.command](parser, args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
