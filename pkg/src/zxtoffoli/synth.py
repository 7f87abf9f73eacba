"""
Generators for the ancilla-free n-qubit Toffoli circuit and its controlled-Rx
skeleton, plus the phase/rotation fusion identity.

Layout of the circuit on qubits 1..n (qubit n is the target):

    P1  phase gates, one per positive rotation landing on qubit n
    C1  positive ladder rotations (i -> k) among qubits 2..n
    C2  positive ladder rotations (1 -> k), k = n..2
    C3  negative ladder rotations (i -> k) among qubits 2..n
    P2  phase gates, one per negative rotation landing on qubit n
    C4  inverse of the negative ladder on qubits 2..n-1
    C5  inverse of the (1 -> k) rotations, k = n-1..2
    C6  inverse of the positive ladder on qubits 2..n-1

C1..C3 apply X**AND(x) to the target using the identity
``AND = sum_j c_j x_j - sum_j c_j y_j`` where y is the control register after
a controlled increment; C1, C2 and C3 also perform that increment on qubits
1..n-1 (relative phases included), C4..C6 undo it exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (
    CONTROLLED_KINDS,
    Circuit,
    DyadicAngle,
    Gate,
    Kind,
    compose,
    crootx,
    crx,
    phase,
)

PART_NAMES = ("P1", "C1", "C2", "C3", "P2", "C4", "C5", "C6")

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_I2 = np.eye(2, dtype=complex)


def _check_n(n: int) -> None:
    if not isinstance(n, (int, np.integer)) or n < 3:
        raise ValueError(f"n must be an integer >= 3, got {n!r}")


def ladder_angle(i: int, k: int, sign: int = 1) -> DyadicAngle:
    """Rotation angle for the ladder gate controlled by qubit i onto qubit k.

    Qubit 1 contributes pi/2**(k-2); qubit i >= 2 contributes pi/2**(k-i).
    """
    if not 1 <= i < k:
        raise ValueError(f"ladder gate needs 1 <= control < target, got ({i}, {k})")
    return DyadicAngle(sign, k - 2 if i == 1 else k - i)


def _rung(i: int, k: int, sign: int) -> Gate:
    return crx(i, k, ladder_angle(i, k, sign))


def _fan_in(lo: int, hi: int, sign: int) -> list[Gate]:
    # pairs among lo..hi, each qubit collecting all its lower partners before
    # it turns into a control for the next qubit down
    return [_rung(i, k, sign) for k in range(hi, lo, -1) for i in range(k - 1, lo - 1, -1)]


def _fan_out(lo: int, hi: int, sign: int) -> list[Gate]:
    return [_rung(i, k, sign) for i in range(lo, hi) for k in range(i + 1, hi + 1)]


def czx_blocks(n: int) -> dict[str, Circuit]:
    """The six controlled-Rx blocks C1..C6 for n qubits."""
    _check_n(n)
    blocks = {
        "C1": _fan_in(2, n, +1),
        "C2": [_rung(1, k, +1) for k in range(n, 1, -1)],
        "C3": _fan_out(2, n, -1),
        "C4": _fan_in(2, n - 1, +1),
        "C5": [_rung(1, k, -1) for k in range(n - 1, 1, -1)],
        "C6": _fan_out(2, n - 1, -1),
    }
    return {name: Circuit(n, tuple(gates)) for name, gates in blocks.items()}


def gen_czx(n: int) -> Circuit:
    """Controlled-Rx-only circuit realizing C^{n-1}(Rx(pi)) on target n."""
    blocks = czx_blocks(n)
    return compose(*(blocks[name] for name in PART_NAMES if name.startswith("C")))


def _phases_for(gates, target: int) -> list[Gate]:
    found = {}
    for g in gates:
        if g.kind is Kind.CRX and g.target == target:
            if g.control in found:
                raise ValueError(f"two rotations from qubit {g.control} onto {target}")
            found[g.control] = phase(g.control, g.angle.halved())
    return [found[q] for q in sorted(found)]


def gen_phase_layers(n: int) -> tuple[Circuit, Circuit]:
    """Phase layers P1 and P2.

    Each rotation Rx(+-pi/2**t) that lands on qubit n gets a partner
    S(+-pi/2**(t+1)) on its control qubit: P1 for C1 and C2, P2 for C3.
    """
    blocks = czx_blocks(n)
    p1 = _phases_for(blocks["C1"].gates + blocks["C2"].gates, n)
    p2 = _phases_for(blocks["C3"].gates, n)
    return Circuit(n, tuple(p1)), Circuit(n, tuple(p2))


@dataclass(frozen=True)
class ToffoliPlan:
    n: int
    parts: dict[str, Circuit] = field(repr=False)

    def __post_init__(self):
        if tuple(self.parts) != PART_NAMES:
            raise ValueError(f"parts must be {PART_NAMES}, got {tuple(self.parts)}")
        for name, part in self.parts.items():
            allowed = Kind.PHASE if name.startswith("P") else Kind.CRX
            bad = [str(g) for g in part.gates if g.kind is not allowed]
            if bad:
                raise ValueError(f"{name} may only hold {allowed} gates, found {bad}")
        n_phase = len(self.parts["P1"]) + len(self.parts["P2"])
        if n_phase != 2 * self.n - 3:
            raise ValueError(f"expected {2 * self.n - 3} phase gates, found {n_phase}")

    def circuit(self) -> Circuit:
        return compose(*self.parts.values())


def plan_toffoli(n: int) -> ToffoliPlan:
    blocks = czx_blocks(n)
    p1, p2 = gen_phase_layers(n)
    parts = {"P1": p1, **{k: blocks[k] for k in ("C1", "C2", "C3")}, "P2": p2,
             **{k: blocks[k] for k in ("C4", "C5", "C6")}}
    return ToffoliPlan(n, parts)


def gen_toffoli(n: int) -> Circuit:
    """n-qubit Toffoli (controls 1..n-1, target n) on exactly n lines."""
    return plan_toffoli(n).circuit()


def root_of_x(t: int, dagger: bool = False) -> np.ndarray:
    """e^{i pi/2^(t+1)} Rx(pi/2^t): the 2**t-th root of X, or its adjoint."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    half = np.ldexp(np.pi, -(t + 1))
    m = np.exp(1j * half) * (np.cos(half) * _I2 - 1j * np.sin(half) * _X)
    return m.conj().T if dagger else m


def fuse_phase(g: Gate, s: Gate) -> Gate:
    """Merge ``S(theta/2)`` on the control into ``crx(theta)``.

    ``crx(+pi/2**t)`` becomes a controlled 2**t-th root of X, ``crx(-pi/2**t)``
    its adjoint.
    """
    if g.kind is not Kind.CRX:
        raise ValueError(f"expected a crx gate, got {g}")
    if s.kind is not Kind.PHASE:
        raise ValueError(f"expected a phase gate, got {s}")
    if s.qubits[0] != g.control:
        raise ValueError(f"phase on qubit {s.qubits[0]} but rotation controlled by {g.control}")
    if s.angle != g.angle.halved():
        raise ValueError(f"phase angle {s.angle} must be half the rotation angle {g.angle}")
    return crootx(g.control, g.target, g.angle.k, dagger=g.angle.sign < 0)


def _commutes_with_phase_on(g: Gate, q: int) -> bool:
    if q not in g.qubits or g.kind is Kind.PHASE:
        return True
    return g.kind in CONTROLLED_KINDS and g.control == q


def _find_partner(gates, taken, idx: int, step: int) -> int | None:
    s = gates[idx]
    q = s.qubits[0]
    j = idx + step
    while 0 <= j < len(gates):
        h = gates[j]
        if (j not in taken and h is not None and h.kind is Kind.CRX and h.control == q
                and h.angle == s.angle.doubled()):
            return j
        if h is not None and not _commutes_with_phase_on(h, q):
            return None
        j += step
    return None


def fuse_phases(c: Circuit) -> Circuit:
    """Fuse every phase gate that can slide onto a matching rotation.

    A phase may travel past gates that leave its line diagonal (phases, or
    gates using the line only as control). Forward partners are preferred.
    Unmatched phases stay in place.
    """
    gates: list[Gate | None] = list(c.gates)
    taken: set[int] = set()
    for idx, g in enumerate(c.gates):
        if g.kind is not Kind.PHASE or g.angle.k == 0:
            continue
        j = _find_partner(gates, taken, idx, +1)
        if j is None:
            j = _find_partner(gates, taken, idx, -1)
        if j is None:
            continue
        gates[j] = fuse_phase(gates[j], g)
        gates[idx] = None
        taken.add(j)
    return Circuit(c.width, tuple(g for g in gates if g is not None))
