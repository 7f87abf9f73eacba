"""
Compilation of local gates to NMR pulse primitives.

Primitives on a chain of spins (1-based):

    u0(theta) on (a, b)   exp(i theta Z_a Z_b)   Ising coupling
    u1(theta) on (a,)     exp(i theta Z_a)       free evolution, control role
    u2(theta) on (b,)     exp(i theta Z_b)       free evolution, target role
    h on (spins...)       ideal Hadamard frame on each listed spin

An entangling gate on (control c, target t) is the sandwich
H_t . u0(c,t) . u1(c) . u2(t) . H_t.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import Circuit, Gate, Kind
from .localize import check_locality
from .sim import H as HADAMARD
from .sim import apply_matrix

# sandwich(pi/4, -pi/4, -pi/4) = exp(-i pi/4) * CNOT
CNOT_SANDWICH_PHASE = cmath.exp(-1j * math.pi / 4)
CNOT_ANGLES = (math.pi / 4, -math.pi / 4, -math.pi / 4)

_IH = np.kron(np.eye(2), HADAMARD)


class PulseKind(str, Enum):
    U0 = "u0"
    U1 = "u1"
    U2 = "u2"
    H = "h"


@dataclass(frozen=True)
class PulseStep:
    kind: PulseKind
    spins: tuple[int, ...]
    theta: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", PulseKind(self.kind))
        object.__setattr__(self, "spins", tuple(int(s) for s in self.spins))
        if not self.spins or min(self.spins) < 1 or len(set(self.spins)) != len(self.spins):
            raise ValueError(f"bad spin list {self.spins}")
        if self.kind is PulseKind.H:
            if self.theta is not None:
                raise ValueError("a Hadamard frame takes no angle")
            return
        if self.theta is None or not math.isfinite(self.theta):
            raise ValueError(f"{self.kind} needs a finite angle, got {self.theta!r}")
        expected = 2 if self.kind is PulseKind.U0 else 1
        if len(self.spins) != expected:
            raise ValueError(f"{self.kind} acts on {expected} spin(s), got {self.spins}")

    def matrix(self) -> np.ndarray:
        if self.kind is PulseKind.H:
            m = np.ones((1, 1), dtype=complex)
            for _ in self.spins:
                m = np.kron(m, HADAMARD)
            return m
        if self.kind is PulseKind.U0:
            return np.diag(np.exp(1j * self.theta * np.array([1, -1, -1, 1])))
        return np.diag(np.exp(1j * self.theta * np.array([1, -1])))


@dataclass(frozen=True)
class PulseSchedule:
    """Ordered pulse steps; ``global_phase`` times their product is the gate."""

    width: int
    steps: tuple[PulseStep, ...] = ()
    global_phase: complex = 1.0 + 0j

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(self, "global_phase", complex(self.global_phase))
        if abs(abs(self.global_phase) - 1) > 1e-12:
            raise ValueError(f"global phase must have unit modulus, got {self.global_phase}")

    def __len__(self) -> int:
        return len(self.steps)

    def __add__(self, other: PulseSchedule) -> PulseSchedule:
        if other.width != self.width:
            raise ValueError(f"width mismatch: {self.width} vs {other.width}")
        return PulseSchedule(self.width, self.steps + other.steps,
                             self.global_phase * other.global_phase)


def delta_terms(t0: float, t1: float, t2: float) -> tuple[complex, complex, complex, complex]:
    return (cmath.exp(1j * (t0 + t1 + t2)), cmath.exp(1j * (-t0 + t1 - t2)),
            cmath.exp(1j * (-t0 - t1 + t2)), cmath.exp(1j * (t0 - t1 - t2)))


def ising_sandwich(t0: float, t1: float, t2: float) -> np.ndarray:
    """Closed form of (I x H) U0(t0) U1(t1) U2(t2) (I x H) through the Deltas."""
    d1, d2, d3, d4 = delta_terms(t0, t1, t2)
    m = np.zeros((4, 4), dtype=complex)
    m[:2, :2] = [[d1 + d2, d1 - d2], [d1 - d2, d1 + d2]]
    m[2:, 2:] = [[d3 + d4, d3 - d4], [d3 - d4, d3 + d4]]
    return m / 2


def ising_sandwich_product(t0: float, t1: float, t2: float) -> np.ndarray:
    """The same sandwich as an explicit product of the four matrices.

    U2 is diag(e^{i t2}, e^{-i t2}, e^{i t2}, e^{-i t2}); the printed
    derivation shows e^{-i t0} in its second entry, which contradicts the
    Delta terms it leads to.
    """
    u0 = np.diag(np.exp(1j * t0 * np.array([1, -1, -1, 1])))
    u1 = np.diag(np.exp(1j * t1 * np.array([1, 1, -1, -1])))
    u2 = np.diag(np.exp(1j * t2 * np.array([1, -1, 1, -1])))
    return _IH @ u0 @ u1 @ u2 @ _IH


def _sandwich_steps(c: int, t: int, t0: float, t1: float, t2: float) -> list[PulseStep]:
    return [PulseStep(PulseKind.H, (t,)),
            PulseStep(PulseKind.U0, (c, t), t0),
            PulseStep(PulseKind.U1, (c,), t1),
            PulseStep(PulseKind.U2, (t,), t2),
            PulseStep(PulseKind.H, (t,))]


def merge_frames(steps) -> list[PulseStep]:
    """Collapse runs of Hadamard frames: H.H cancels, disjoint frames combine."""
    out: list[PulseStep] = []
    pending: set[int] = set()
    for s in steps:
        if s.kind is PulseKind.H:
            pending ^= set(s.spins)
            continue
        if pending:
            out.append(PulseStep(PulseKind.H, tuple(sorted(pending))))
            pending = set()
        out.append(s)
    if pending:
        out.append(PulseStep(PulseKind.H, tuple(sorted(pending))))
    return out


def _adjacent(g: Gate) -> None:
    a, b = g.qubits
    if abs(a - b) != 1:
        raise ValueError(f"{g} acts on non-adjacent spins {a},{b}; lower the circuit first")


def compile_gate(g: Gate, width: int | None = None) -> PulseSchedule:
    width = width or max(g.qubits)
    k = g.kind
    if k is Kind.PHASE:
        theta = g.angle.radians
        return PulseSchedule(width, (PulseStep(PulseKind.U1, g.qubits, -theta / 2),),
                             cmath.exp(1j * theta / 2))
    if k is Kind.H:
        return PulseSchedule(width, (PulseStep(PulseKind.H, g.qubits),))
    if k is Kind.CRX:
        _adjacent(g)
        theta = g.angle.radians / 2
        return PulseSchedule(width, tuple(_sandwich_steps(*g.qubits, theta / 2, 0.0, -theta / 2)))
    if k is Kind.CNOT:
        _adjacent(g)
        return PulseSchedule(width, tuple(_sandwich_steps(*g.qubits, *CNOT_ANGLES)),
                             1 / CNOT_SANDWICH_PHASE)
    if k is Kind.SWAP:
        _adjacent(g)
        a, b = g.qubits
        # the reversed CNOT is H(x)H . CNOT(a->b) . H(x)H, which reduces to the
        # same sandwich with the frame on spin a
        steps = (_sandwich_steps(a, b, *CNOT_ANGLES) + _sandwich_steps(b, a, *CNOT_ANGLES)
                 + _sandwich_steps(a, b, *CNOT_ANGLES))
        return PulseSchedule(width, tuple(merge_frames(steps)), CNOT_SANDWICH_PHASE ** -3)
    raise ValueError(f"cannot compile {k} to pulses; unfuse root-of-X gates into phase + crx first")


def compile_circuit(c: Circuit) -> PulseSchedule:
    report = check_locality(c)
    if not report:
        raise ValueError(f"circuit is not local; offending gates {list(report.offending)}")
    sched = PulseSchedule(c.width)
    for g in c.gates:
        sched = sched + compile_gate(g, c.width)
    return sched


def pulse_unitary(s: PulseSchedule) -> np.ndarray:
    for i, step in enumerate(s.steps):
        if max(step.spins) > s.width:
            raise ValueError(f"step {i} uses spin {max(step.spins)} beyond width {s.width}")
    states = np.eye(2 ** s.width, dtype=complex)
    for step in s.steps:
        states = apply_matrix(states, s.width, step.matrix(), step.spins)
    return s.global_phase * states


def schedule_to_dict(s: PulseSchedule) -> dict:
    steps = []
    for st in s.steps:
        d = {"kind": st.kind.value, "spins": list(st.spins)}
        if st.theta is not None:
            d["theta"] = st.theta
        steps.append(d)
    return {"width": s.width, "steps": steps,
            "global_phase": [s.global_phase.real, s.global_phase.imag]}


def schedule_from_dict(d: dict) -> PulseSchedule:
    steps = tuple(PulseStep(PulseKind(x["kind"]), tuple(x["spins"]), x.get("theta"))
                  for x in d["steps"])
    width = d.get("width") or max((max(s.spins) for s in steps), default=1)
    re, im = d.get("global_phase", (1.0, 0.0))
    return PulseSchedule(int(width), steps, complex(re, im))
