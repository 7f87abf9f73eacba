"""
Lowering of the Toffoli circuit to local gates on a linear chain.

Each rotation block is realized by swap networks: a qubit bubbles along the
chain and meets its partners one by one, the rotation being applied just before
each swap. Orderings are tracked as :class:`Permutation` values (logical qubit
-> physical line).
"""
from __future__ import annotations

from dataclasses import dataclass

from .core import Circuit, Gate, Permutation, compose, swap
from .synth import plan_toffoli

BLOCK_IDS = ("C1'", "C2'", "C3'", "C3.5'", "C4'", "C5'", "C6'", "C6.5'")


@dataclass(frozen=True)
class LoweredBlock:
    block_id: str
    circuit: Circuit
    ordering_in: Permutation
    ordering_out: Permutation

    def to_dict(self) -> dict:
        return {"block_id": self.block_id,
                "ordering_in": list(self.ordering_in.ordering),
                "ordering_out": list(self.ordering_out.ordering)}


@dataclass(frozen=True)
class LocalityReport:
    passed: bool
    offending: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.passed


def check_locality(c: Circuit) -> LocalityReport:
    bad = tuple(i for i, g in enumerate(c.gates)
                if len(g.qubits) == 2 and abs(g.qubits[0] - g.qubits[1]) != 1)
    return LocalityReport(not bad, bad)


class _Chain:
    """Tracks which logical qubit sits on which line while emitting gates."""

    def __init__(self, start: Permutation, pending: dict[tuple[int, int], Gate]):
        self.n = start.n
        self.line_of = list(start.map)
        self.pending = dict(pending)
        self.gates: list[Gate] = []

    def holder(self, line: int) -> int:
        return self.line_of.index(line) + 1

    def _meet(self, a: int, b: int) -> None:
        g = self.pending.pop((a, b), None) or self.pending.pop((b, a), None)
        if g is None:
            return
        lines = [self.line_of[q - 1] for q in g.qubits]
        if abs(lines[0] - lines[1]) != 1:
            raise AssertionError(f"{g} requested on non-adjacent lines {lines}")
        self.gates.append(g.relabel(lambda q: self.line_of[q - 1]))

    def step(self, line: int, direction: int) -> None:
        """Meet the neighbour on ``line + direction`` and swap with it."""
        other = line + direction
        a, b = self.holder(line), self.holder(other)
        self._meet(a, b)
        self.gates.append(swap(min(line, other), max(line, other)))
        self.line_of[a - 1], self.line_of[b - 1] = other, line

    def move(self, src: int, dst: int) -> None:
        d = 1 if dst > src else -1
        for line in range(src, dst, d):
            self.step(line, d)

    def reverse(self, lo: int, hi: int) -> None:
        # the bottom qubit climbs to the top of the unsorted part, then the next
        for top in range(lo, hi):
            for line in range(hi, top, -1):
                self.step(line, -1)

    def result(self, block_id: str, start: Permutation) -> LoweredBlock:
        if self.pending:
            raise AssertionError(f"{block_id}: gates never met: {list(self.pending.values())}")
        return LoweredBlock(block_id, Circuit(self.n, tuple(self.gates)), start,
                            Permutation(tuple(self.line_of)))


def _pairs(c: Circuit) -> dict[tuple[int, int], Gate]:
    out = {}
    for g in c.gates:
        if g.qubits in out:
            raise ValueError(f"duplicate pair {g.qubits}")
        out[g.qubits] = g
    return out


def _pipeline(n: int) -> list[LoweredBlock]:
    parts = plan_toffoli(n).parts
    blocks: list[LoweredBlock] = []
    current = Permutation.identity(n)

    def run(block_id: str, source: Circuit | None, script) -> None:
        nonlocal current
        chain = _Chain(current, _pairs(source) if source is not None else {})
        script(chain)
        blocks.append(chain.result(block_id, current))
        current = blocks[-1].ordering_out

    run("C1'", parts["C1"], lambda ch: ch.reverse(2, n))
    run("C2'", parts["C2"], lambda ch: ch.move(1, n))
    run("C3'", parts["C3"], lambda ch: ch.reverse(1, n - 1))
    run("C3.5'", None, lambda ch: ch.move(n, 1))
    run("C4'", parts["C4"], lambda ch: ch.reverse(2, n - 1))
    run("C5'", parts["C5"], lambda ch: ch.move(1, n - 1))
    run("C6'", parts["C6"], lambda ch: ch.reverse(1, n - 2))
    run("C6.5'", None, lambda ch: ch.move(n - 1, 1))
    return blocks


def lower_block(block_id: str, n: int) -> LoweredBlock:
    if block_id not in BLOCK_IDS:
        raise ValueError(f"unknown block {block_id!r}; expected one of {BLOCK_IDS}")
    if not isinstance(n, int) or n < 3:
        raise ValueError(f"n must be an integer >= 3, got {n!r}")
    return _pipeline(n)[BLOCK_IDS.index(block_id)]


def _relabel(c: Circuit, p: Permutation) -> Circuit:
    return Circuit(c.width, tuple(g.relabel(p) for g in c.gates))


def lower_pipeline(n: int) -> list[LoweredBlock]:
    """All ten segments in order, P1 and P2 included as identity-ordered blocks."""
    if not isinstance(n, int) or n < 3:
        raise ValueError(f"n must be an integer >= 3, got {n!r}")
    parts = plan_toffoli(n).parts
    blocks = _pipeline(n)
    before_p2 = blocks[3].ordering_out
    ident = Permutation.identity(n)
    p1 = LoweredBlock("P1", parts["P1"], ident, ident)
    p2 = LoweredBlock("P2", _relabel(parts["P2"], before_p2), before_p2, before_p2)
    return [p1, *blocks[:4], p2, *blocks[4:]]


def lower_toffoli(n: int) -> Circuit:
    return compose(*(b.circuit for b in lower_pipeline(n)))

