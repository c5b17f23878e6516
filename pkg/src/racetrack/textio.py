"""Flat-text circuit format and an OpenQASM-2 subset reader.

Flat text: one gate per line, `KIND q<i> [q<j>] [param,...]`.  Blank lines
and `#` comments are ignored on input; output round-trips bit-exactly.
"""
from __future__ import annotations

import re

from .circuit import Circuit, build_dag
from .gates import Gate, GateType

_KINDS = {t.value: t for t in GateType}


def circuit_to_text(c: Circuit) -> str:
    lines = [f"# width {c.width}"]
    for g in c.gates:
        parts = [g.kind.value] + [f"q{q}" for q in g.qubits]
        if g.params:
            parts.append(",".join(repr(p) for p in g.params))
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> Circuit:
    width = 0
    explicit_width = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = re.match(r"#\s*width\s+(\d+)", line)
            if m:
                explicit_width = int(m.group(1))
            continue
        tokens = line.split()
        kind = _KINDS.get(tokens[0])
        if kind is None:
            raise ValueError(f"line {lineno}: unknown gate kind {tokens[0]!r}")
        qubits: list[int] = []
        params: tuple[float, ...] = ()
        for tok in tokens[1:]:
            if tok.startswith("q") and tok[1:].isdigit():
                qubits.append(int(tok[1:]))
            else:
                params = tuple(float(x) for x in tok.split(","))
        width = max(width, max(qubits, default=-1) + 1)
        gates.append(Gate(id=len(gates), kind=kind, qubits=tuple(qubits), params=params))
    if explicit_width is not None:
        width = max(width, explicit_width)
    return build_dag(gates, width)


_QASM_GATE = re.compile(
    r"^\s*(h|x|rx|rz|cx|rzz)\s*(?:\(([^)]*)\))?\s+([^;]+);", re.IGNORECASE
)
_QASM_MEASURE = re.compile(r"^\s*measure\s+(\S+?)\s*->\s*\S+\s*;", re.IGNORECASE)
_QASM_QREG = re.compile(r"^\s*qreg\s+(\w+)\s*\[(\d+)\]\s*;", re.IGNORECASE)
_QASM_IDX = re.compile(r"\w+\s*\[(\d+)\]")

_QASM_KINDS = {
    "h": GateType.H,
    "x": GateType.X,
    "rx": GateType.RX,
    "rz": GateType.RZ,
    "cx": GateType.CX,
    "rzz": GateType.RZZ,
}


def _eval_qasm_angle(expr: str) -> float:
    import math

    expr = expr.strip().replace("pi", repr(math.pi))
    if not re.fullmatch(r"[0-9eE+\-*/. ()]+", expr):
        raise ValueError(f"unsupported QASM parameter expression {expr!r}")
    return float(eval(expr, {"__builtins__": {}}, {}))  # arithmetic only


def circuit_from_qasm(text: str) -> Circuit:
    """Read the supported OpenQASM-2 subset: h, x, rx, rz, cx, rzz, measure."""
    width = 0
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//")[0].strip()
        if not line or line.startswith(("OPENQASM", "include", "creg", "barrier")):
            continue
        m = _QASM_QREG.match(line)
        if m:
            width = max(width, int(m.group(2)))
            continue
        m = _QASM_MEASURE.match(line)
        if m:
            idx = _QASM_IDX.search(m.group(1))
            if not idx:
                raise ValueError(f"line {lineno}: cannot parse measure target")
            gates.append(Gate(len(gates), GateType.MEASURE, (int(idx.group(1)),)))
            continue
        m = _QASM_GATE.match(line)
        if m:
            name, args, operands = m.group(1).lower(), m.group(2), m.group(3)
            kind = _QASM_KINDS[name]
            qubits = tuple(int(x) for x in _QASM_IDX.findall(operands))
            params: tuple[float, ...] = ()
            if args:
                params = tuple(_eval_qasm_angle(a) for a in args.split(","))
            gates.append(Gate(len(gates), kind, qubits, params))
            continue
        raise ValueError(f"line {lineno}: unsupported QASM statement {line!r}")
    width = max(width, max((max(g.qubits) + 1 for g in gates), default=0))
    return build_dag(gates, width)
