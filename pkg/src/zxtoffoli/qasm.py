"""
OpenQASM 2.0 export, and a small interpreter for the exported subset.

The header defines ``crx_l`` and ``swap_l`` from qelib1 primitives so the text
is self-describing; :func:`qasm_unitary` expands those definitions and
simulates the result. QASM registers are 0-based: qubit 1 is ``q[0]``.
"""
from __future__ import annotations

import ast
import math
import operator
import re

import numpy as np

from .core import Circuit, Kind
from .sim import H, X, apply_matrix, controlled, phase_matrix

HEADER = """OPENQASM 2.0;
include "qelib1.inc";
// controlled Rx(theta): identity unless c is 1, then exp(-i theta X / 2) on t
gate crx_l(theta) c, t { u1(pi/2) t; cx c, t; u3(-theta/2, 0, 0) t; cx c, t; u3(theta/2, -pi/2, 0) t; }
// swap as three CNOTs
gate swap_l a, b { cx a, b; cx b, a; cx a, b; }
"""

_EXPORTABLE = {Kind.PHASE, Kind.CRX, Kind.CNOT, Kind.H, Kind.SWAP}


def _num(x: float) -> str:
    return format(x, ".17g")


def export_qasm(c: Circuit) -> str:
    bad = sorted({g.kind.value for g in c.gates if g.kind not in _EXPORTABLE})
    if bad:
        raise ValueError(f"gate kinds not exportable to QASM: {', '.join(bad)}")
    lines = [HEADER + f"qreg q[{c.width}];"]
    for g in c.gates:
        qs = ", ".join(f"q[{q - 1}]" for q in g.qubits)
        if g.kind is Kind.PHASE:
            lines.append(f"u1({_num(g.angle.radians)}) {qs};")
        elif g.kind is Kind.CRX:
            lines.append(f"crx_l({_num(g.angle.radians)}) {qs};")
        elif g.kind is Kind.CNOT:
            lines.append(f"cx {qs};")
        elif g.kind is Kind.H:
            lines.append(f"h {qs};")
        else:
            lines.append(f"swap_l {qs};")
    return "\n".join(lines) + "\n"


# --- interpreter ------------------------------------------------------------

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def _eval(expr: str, env: dict[str, float]) -> float:
    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name):
            if node.id == "pi":
                return math.pi
            if node.id in env:
                return env[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise ValueError(f"unsupported expression {expr!r}")

    return ev(ast.parse(expr.strip(), mode="eval"))


def _u3(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -np.exp(1j * lam) * s],
                     [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]], dtype=complex)


_PRIMITIVES = {
    "u1": (1, lambda p: phase_matrix(p[0])),
    "u3": (3, lambda p: _u3(*p)),
    "U": (3, lambda p: _u3(*p)),
    "h": (0, lambda p: H),
    "x": (0, lambda p: X),
    "cx": (0, lambda p: controlled(X)),
    "CX": (0, lambda p: controlled(X)),
}

_GATE_DEF = re.compile(r"gate\s+(\w+)\s*(?:\(([^)]*)\))?\s*([\w\s,]+?)\s*\{([^}]*)\}", re.S)
_STMT = re.compile(r"^(\w+)\s*(?:\((.*)\))?\s*(.*)$", re.S)


def _split_args(text: str) -> list[str]:
    return [a.strip() for a in text.split(",") if a.strip()] if text else []


def qasm_unitary(text: str) -> np.ndarray:
    """Unitary of an exported program, expanding its user gate definitions."""
    text = re.sub(r"//[^\n]*", "", text)
    defs = {}
    for m in _GATE_DEF.finditer(text):
        defs[m.group(1)] = (_split_args(m.group(2)), _split_args(m.group(3)), m.group(4))
    body = _GATE_DEF.sub("", text)

    width = None
    ops: list[tuple[str, list[float], list[int]]] = []

    def emit(name: str, params: list[float], qubits: list[int]) -> None:
        if name in _PRIMITIVES:
            ops.append((name, params, qubits))
            return
        if name not in defs:
            raise ValueError(f"unknown gate {name!r}")
        pnames, qnames, inner = defs[name]
        env = dict(zip(pnames, params))
        qmap = dict(zip(qnames, qubits))
        for stmt in filter(None, (s.strip() for s in inner.split(";"))):
            n, p, q = _STMT.match(stmt).groups()
            emit(n, [_eval(e, env) for e in _split_args(p)], [qmap[a] for a in _split_args(q)])

    for stmt in filter(None, (s.strip() for s in body.split(";"))):
        if stmt.startswith(("OPENQASM", "include")):
            continue
        reg = re.match(r"qreg\s+(\w+)\[(\d+)\]", stmt)
        if reg:
            width = int(reg.group(2))
            continue
        name, params, args = _STMT.match(stmt).groups()
        qubits = [int(re.match(r"\w+\[(\d+)\]", a).group(1)) + 1 for a in _split_args(args)]
        emit(name, [_eval(e, {}) for e in _split_args(params)], qubits)

    if width is None:
        raise ValueError("no qreg declaration")
    u = np.eye(2 ** width, dtype=complex)
    for name, params, qubits in ops:
        arity, make = _PRIMITIVES[name]
        if len(params) != arity:
            raise ValueError(f"{name} takes {arity} parameter(s), got {len(params)}")
        u = apply_matrix(u, width, make(params), qubits)
    return u
