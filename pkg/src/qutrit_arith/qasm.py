"""OpenQASM 2.0 subset reader/writer with a small ternary extension.

Accepted statements::

    OPENQASM 2.0;            include "qelib1.inc";      // comments
    qreg q[n];  creg c[n];
    x h t tdg s sdg  <q>;    cx <q>,<q>;   ccx <q>,<q>,<q>;
    measure <q> -> <c>;      barrier <q>[, <q> ...];

Extensions::

    tcx_inc(v) ctl,tgt;      // tgt <- tgt + 1 mod 3 when ctl == v
    tcx_dec(v) ctl,tgt;      // tgt <- tgt - 1 mod 3 when ctl == v
    tcx_x(v)   ctl,tgt;      // swap |0>,|1> of tgt when ctl == v
    qutrit q[i];             // declare wire radix 3

``tcx_inc``/``tcx_dec`` promote their target to radix 3 on their own.
Registers are flattened to wire ids in declaration order. Whole-register
arguments broadcast as in standard QASM. Anything else is reported as an
``unsupported-statement`` error rather than skipped, so that gate counts
never silently miss a gate.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .circuit import Circuit, Gate, GateKind, TernaryAction, WireSpec, check_circuit, validate


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int
    length: int = 1

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


ERROR_KINDS = ("syntax", "unsupported-statement", "undeclared-register", "index-out-of-range", "arity-mismatch")


@dataclass(frozen=True)
class ParseError:
    span: SourceSpan
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.span}: {self.kind}: {self.message}"


class QasmParseError(ValueError):
    """Raised by :func:`parse_qasm`; ``errors`` lists every problem found."""

    def __init__(self, errors: list[ParseError]):
        self.errors = errors
        super().__init__("\n".join(map(str, errors)))


_ONE_WIRE = {"x": GateKind.X, "h": GateKind.H, "t": GateKind.T, "tdg": GateKind.TDG, "s": GateKind.S, "sdg": GateKind.SDG}
_TERNARY = {"tcx_inc": TernaryAction.INCREMENT, "tcx_dec": TernaryAction.DECREMENT, "tcx_x": TernaryAction.FLIP01}
_ARITY = {**{k: 1 for k in _ONE_WIRE}, "cx": 2, "ccx": 3, **{k: 2 for k in _TERNARY}}

_IDENT = r"[A-Za-z_][A-Za-z0-9_]*"
_ARG_RE = re.compile(rf"\s*({_IDENT})\s*(?:\[\s*(\d+)\s*\])?\s*$")
_HEAD_RE = re.compile(rf"({_IDENT})")
_REG_RE = re.compile(rf"(qreg|creg)\s+({_IDENT})\s*\[\s*(\d+)\s*\]\s*$")
_GATE_RE = re.compile(rf"({_IDENT})\s*(?:\(([^)]*)\))?\s*(.*)$", re.S)


@dataclass
class _Statement:
    text: str
    positions: list[tuple[int, int]]

    def span(self, start: int = 0, length: int | None = None) -> SourceSpan:
        if not self.positions:
            return SourceSpan(1, 1, 1)
        start = min(max(start, 0), len(self.positions) - 1)
        line, col = self.positions[start]
        length = length if length is not None else len(self.text) - start
        return SourceSpan(line, col, max(1, length))


def _split(source: str) -> tuple[list[_Statement], list[ParseError]]:
    """Cut ``source`` into ';'-terminated statements, dropping comments.

    Brace blocks (``gate foo a { ... }``) are kept as one statement so they
    can be rejected whole.
    """
    stmts: list[_Statement] = []
    chars: list[str] = []
    pos: list[tuple[int, int]] = []
    depth = 0
    line, col = 1, 1
    i = 0
    while i < len(source):
        ch = source[i]
        if ch == "/" and source.startswith("//", i):
            while i < len(source) and source[i] != "\n":
                i += 1
            continue
        if ch == ";" and depth == 0 or ch == "}" and depth == 1:
            if ch == "}":
                chars.append(ch)
                pos.append((line, col))
                depth = 0
            stmts.append(_strip(chars, pos))
            chars, pos = [], []
        else:
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth = max(0, depth - 1)
            chars.append(ch)
            pos.append((line, col))
        if ch == "\n":
            line, col = line + 1, 1
        else:
            col += 1
        i += 1
    errors = []
    tail = _strip(chars, pos)
    if tail.text:
        errors.append(ParseError(tail.span(0, len(tail.text)), "syntax", f"missing ';' after {tail.text!r}"))
    return [s for s in stmts if s.text], errors


def _strip(chars: list[str], pos: list[tuple[int, int]]) -> _Statement:
    text = "".join(chars)
    lead = len(text) - len(text.lstrip())
    trail = len(text.rstrip())
    return _Statement(text[lead:trail], pos[lead:trail])


class _Parser:
    def __init__(self):
        self.qregs: dict[str, tuple[int, int]] = {}
        self.cregs: dict[str, int] = {}
        self.num_wires = 0
        self.labels: list[str] = []
        self.promote: set[int] = set()
        self.gates: list[Gate] = []
        self.gate_spans: list[SourceSpan] = []
        self.errors: list[ParseError] = []

    def error(self, stmt: _Statement, kind: str, message: str, start: int = 0, length: int | None = None):
        self.errors.append(ParseError(stmt.span(start, length), kind, message))

    # -- statements ------------------------------------------------------
    def statement(self, stmt: _Statement) -> None:
        text = stmt.text
        head = _HEAD_RE.match(text)
        if not head:
            self.error(stmt, "syntax", f"unexpected token {text.split()[0]!r}", 0, len(text.split()[0]))
            return
        word = head.group(1)
        if word == "OPENQASM":
            if text.split()[1:] != ["2.0"]:
                self.error(stmt, "unsupported-statement", f"only OPENQASM 2.0 is supported, got {text!r}")
        elif word == "include":
            if not re.fullmatch(r'include\s+"[^"]*"', text):
                self.error(stmt, "syntax", f"malformed include {text!r}")
        elif word in ("qreg", "creg"):
            self.register(stmt)
        elif word == "measure":
            self.measure(stmt)
        elif word == "barrier":
            self.barrier(stmt)
        elif word == "qutrit":
            for ws in self.args(stmt, text[len(word):], len(word)) or []:
                self.promote.update(ws)
        elif word in _ARITY:
            self.gate(stmt)
        else:
            self.error(stmt, "unsupported-statement", f"unsupported statement {word!r}", 0, len(word))

    def register(self, stmt: _Statement) -> None:
        m = _REG_RE.match(stmt.text)
        if not m:
            self.error(stmt, "syntax", f"malformed register declaration {stmt.text!r}")
            return
        kind, name, size = m.group(1), m.group(2), int(m.group(3))
        if name in self.qregs or name in self.cregs:
            self.error(stmt, "syntax", f"register {name!r} declared twice", m.start(2), len(name))
            return
        if kind == "qreg":
            self.qregs[name] = (self.num_wires, size)
            self.labels += [f"{name}[{i}]" for i in range(size)]
            self.num_wires += size
        else:
            self.cregs[name] = size

    def args(self, stmt: _Statement, text: str, offset: int, regs: str = "q") -> list[list[int]] | None:
        """Resolve a comma list of register references to wire-id lists."""
        out = []
        cursor = offset
        if not text.strip():
            self.error(stmt, "syntax", "missing arguments", offset)
            return None
        for piece in text.split(","):
            start = cursor + len(piece) - len(piece.lstrip())
            cursor += len(piece) + 1
            m = _ARG_RE.match(piece)
            if not m:
                self.error(stmt, "syntax", f"malformed argument {piece.strip()!r}", start, len(piece.strip()) or 1)
                return None
            name, idx = m.group(1), m.group(2)
            table = self.qregs if regs == "q" else {k: (0, v) for k, v in self.cregs.items()}
            if name not in table:
                self.error(stmt, "undeclared-register", f"undeclared register {name!r}", start, len(name))
                return None
            base, size = table[name]
            if idx is None:
                out.append([base + i for i in range(size)])
            elif int(idx) >= size:
                self.error(stmt, "index-out-of-range", f"{name}[{idx}] out of range for size {size}", start, len(piece.strip()))
                return None
            else:
                out.append([base + int(idx)])
        return out

    def broadcast(self, stmt: _Statement, resolved: list[list[int]]) -> list[tuple[int, ...]] | None:
        sizes = {len(r) for r in resolved if len(r) != 1}
        if len(sizes) > 1:
            self.error(stmt, "arity-mismatch", f"register sizes {sorted(sizes)} do not broadcast")
            return None
        n = sizes.pop() if sizes else 1
        return [tuple(r[0] if len(r) == 1 else r[i] for r in resolved) for i in range(n)]

    def gate(self, stmt: _Statement) -> None:
        m = _GATE_RE.match(stmt.text)
        name, params, rest = m.group(1), m.group(2), m.group(3)
        control_value = None
        if name in _TERNARY:
            if params is None or params.strip() not in ("1", "2"):
                self.error(stmt, "syntax", f"{name} needs a control value (1) or (2), got {params!r}", 0, len(name))
                return
            control_value = int(params)
        elif params is not None:
            self.error(stmt, "unsupported-statement", f"{name} takes no parameters", 0, len(name))
            return
        resolved = self.args(stmt, rest, m.start(3))
        if resolved is None:
            return
        if len(resolved) != _ARITY[name]:
            self.error(stmt, "arity-mismatch", f"{name} takes {_ARITY[name]} argument(s), got {len(resolved)}", 0, len(name))
            return
        calls = self.broadcast(stmt, resolved)
        if calls is None:
            return
        for wires in calls:
            if len(set(wires)) != len(wires):
                self.error(stmt, "arity-mismatch", f"{name} repeats a qubit argument", m.start(3), len(rest))
                return
        for wires in calls:
            if name in _TERNARY:
                action = _TERNARY[name]
                if action is not TernaryAction.FLIP01:
                    self.promote.add(wires[1])
                g = Gate(GateKind.TERNARY_CX, wires, control_value, action)
            elif name in _ONE_WIRE:
                g = Gate(_ONE_WIRE[name], wires)
            else:
                g = Gate(GateKind.CX if name == "cx" else GateKind.CCX, wires)
            self.gates.append(g)
            self.gate_spans.append(stmt.span(0, len(name)))

    def measure(self, stmt: _Statement) -> None:
        m = re.match(r"measure\s+(.*?)\s*->\s*(.*)$", stmt.text, re.S)
        if not m:
            self.error(stmt, "syntax", f"malformed measure {stmt.text!r}")
            return
        qs = self.args(stmt, m.group(1), m.start(1))
        cs = self.args(stmt, m.group(2), m.start(2), regs="c")
        if qs is None or cs is None:
            return
        if len(qs) != 1 or len(cs) != 1 or len(qs[0]) != len(cs[0]):
            self.error(stmt, "arity-mismatch", "measure needs one quantum and one classical argument of equal size")
            return
        for w in qs[0]:
            self.gates.append(Gate(GateKind.MEASURE, (w,)))
            self.gate_spans.append(stmt.span(0, 7))

    def barrier(self, stmt: _Statement) -> None:
        resolved = self.args(stmt, stmt.text[7:], 7)
        if resolved is None:
            return
        seen = []
        for ws in resolved:
            seen += [w for w in ws if w not in seen]
        for w in seen:
            self.gates.append(Gate(GateKind.BARRIER, (w,)))
            self.gate_spans.append(stmt.span(0, 7))

    def finish(self, name: str) -> Circuit:
        wires = tuple(
            WireSpec(i, 3 if i in self.promote else 2, self.labels[i]) for i in range(self.num_wires)
        )
        circuit = Circuit(wires, tuple(self.gates), name)
        for v in validate(circuit):
            span = self.gate_spans[v.gate_index] if v.gate_index is not None else SourceSpan(1, 1, 1)
            self.errors.append(ParseError(span, "unsupported-statement", v.rule))
        return circuit


def parse_qasm(source: str, name: str = "qasm") -> Circuit:
    """Parse QASM text; raise :class:`QasmParseError` listing every error."""
    statements, errors = _split(source)
    parser = _Parser()
    parser.errors.extend(errors)
    for stmt in statements:
        parser.statement(stmt)
    circuit = parser.finish(name)
    if parser.errors:
        parser.errors.sort(key=lambda e: (e.span.line, e.span.column))
        raise QasmParseError(parser.errors)
    return circuit


_EMIT_NAMES = {GateKind.X: "x", GateKind.H: "h", GateKind.T: "t", GateKind.TDG: "tdg",
               GateKind.S: "s", GateKind.SDG: "sdg", GateKind.CX: "cx", GateKind.CCX: "ccx"}
_EMIT_TERNARY = {v: k for k, v in _TERNARY.items()}


def emit_qasm(circuit: Circuit) -> str:
    """Serialize to the dialect read by :func:`parse_qasm`, one statement per line."""
    check_circuit(circuit)
    lines = ["OPENQASM 2.0;", 'include "qelib1.inc";']
    n = circuit.num_wires
    if n:
        lines.append(f"qreg q[{n}];")
    if any(g.kind is GateKind.MEASURE for g in circuit.gates):
        lines.append(f"creg c[{n}];")
    lines += [f"qutrit q[{w.id}];" for w in circuit.wires if w.radix == 3]
    for g in circuit.gates:
        args = ",".join(f"q[{w}]" for w in g.wires)
        if g.kind is GateKind.TERNARY_CX:
            lines.append(f"{_EMIT_TERNARY[g.action]}({g.control_value}) {args};")
        elif g.kind is GateKind.MEASURE:
            lines.append(f"measure {args} -> c[{g.wires[0]}];")
        elif g.kind is GateKind.BARRIER:
            lines.append(f"barrier {args};")
        else:
            lines.append(f"{_EMIT_NAMES[g.kind]} {args};")
    return "\n".join(lines) + "\n"
