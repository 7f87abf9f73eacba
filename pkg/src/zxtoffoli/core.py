"""
Circuit data model: exact dyadic angles, gates, circuits, qubit permutations.

All qubit/line indices are 1-based, qubit 1 being the first (most significant)
line. Circuits are immutable; every operation returns a new value.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Sequence


class Kind(str, Enum):
    PHASE = "phase"
    CRX = "crx"
    CROOTX = "crootx"
    CROOTXDG = "crootxdg"
    CNOT = "cnot"
    H = "h"
    SWAP = "swap"

    def __str__(self) -> str:
        return self.value


SINGLE_QUBIT_KINDS = frozenset({Kind.PHASE, Kind.H})
ANGLE_KINDS = frozenset({Kind.PHASE, Kind.CRX})
ROOT_KINDS = frozenset({Kind.CROOTX, Kind.CROOTXDG})
# kinds whose first qubit acts only as a control (diagonal on that line)
CONTROLLED_KINDS = frozenset({Kind.CRX, Kind.CROOTX, Kind.CROOTXDG, Kind.CNOT})


@dataclass(frozen=True, order=True)
class DyadicAngle:
    """The angle ``sign * pi / 2**k``, stored exactly."""

    sign: int
    k: int

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign!r}")
        if not isinstance(self.k, int) or isinstance(self.k, bool) or self.k < 0:
            raise ValueError(f"k must be a non-negative int, got {self.k!r}")

    @property
    def radians(self) -> float:
        # ldexp scales by a power of two, so this is exact apart from pi itself
        return self.sign * math.ldexp(math.pi, -self.k)

    def __float__(self) -> float:
        return self.radians

    def __neg__(self) -> DyadicAngle:
        return DyadicAngle(-self.sign, self.k)

    def halved(self) -> DyadicAngle:
        return DyadicAngle(self.sign, self.k + 1)

    def doubled(self) -> DyadicAngle:
        if self.k == 0:
            raise ValueError("cannot double pi: result is not of the form pi/2**k")
        return DyadicAngle(self.sign, self.k - 1)

    def __str__(self) -> str:
        s = "-" if self.sign < 0 else ""
        return f"{s}pi" if self.k == 0 else f"{s}pi/{2 ** self.k}"


def dyadic(k: int, sign: int = 1) -> DyadicAngle:
    return DyadicAngle(sign, k)


@dataclass(frozen=True)
class Gate:
    """One gate of the paper's vocabulary.

    ``qubits`` lists the control first for controlled kinds. ``angle`` is set
    for ``phase`` and ``crx``; ``root`` is the exponent t of a controlled
    2**t-th root of X.
    """

    kind: Kind
    qubits: tuple[int, ...]
    angle: DyadicAngle | None = None
    root: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        arity = 1 if self.kind in SINGLE_QUBIT_KINDS else 2
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} acts on {arity} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated qubit in {self.kind} {self.qubits}")
        if min(self.qubits) < 1:
            raise ValueError(f"qubit indices are 1-based, got {self.qubits}")
        if (self.angle is not None) != (self.kind in ANGLE_KINDS):
            raise ValueError(f"{self.kind} {'needs' if self.kind in ANGLE_KINDS else 'takes no'} angle")
        if self.kind in ROOT_KINDS:
            if not isinstance(self.root, int) or self.root < 0:
                raise ValueError(f"{self.kind} needs a non-negative root exponent, got {self.root!r}")
        elif self.root is not None:
            raise ValueError(f"{self.kind} takes no root exponent")

    @property
    def control(self) -> int | None:
        return self.qubits[0] if self.kind in CONTROLLED_KINDS else None

    @property
    def target(self) -> int:
        return self.qubits[-1]

    def inverse(self) -> Gate:
        if self.kind in ANGLE_KINDS:
            return Gate(self.kind, self.qubits, -self.angle)
        if self.kind is Kind.CROOTX:
            return Gate(Kind.CROOTXDG, self.qubits, root=self.root)
        if self.kind is Kind.CROOTXDG:
            return Gate(Kind.CROOTX, self.qubits, root=self.root)
        return self

    def relabel(self, mapping) -> Gate:
        return Gate(self.kind, tuple(mapping(q) for q in self.qubits), self.angle, self.root)

    def __str__(self) -> str:
        arg = f"({self.angle})" if self.angle else (f"[t={self.root}]" if self.root is not None else "")
        return f"{self.kind}{arg} {','.join(map(str, self.qubits))}"


def phase(q: int, angle: DyadicAngle) -> Gate:
    return Gate(Kind.PHASE, (q,), angle)


def crx(control: int, target: int, angle: DyadicAngle) -> Gate:
    return Gate(Kind.CRX, (control, target), angle)


def crootx(control: int, target: int, t: int, dagger: bool = False) -> Gate:
    return Gate(Kind.CROOTXDG if dagger else Kind.CROOTX, (control, target), root=t)


def cnot(control: int, target: int) -> Gate:
    return Gate(Kind.CNOT, (control, target))


def hadamard(q: int) -> Gate:
    return Gate(Kind.H, (q,))


def swap(a: int, b: int) -> Gate:
    return Gate(Kind.SWAP, (a, b))


@dataclass(frozen=True)
class Circuit:
    width: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        if self.width < 1:
            raise ValueError(f"width must be positive, got {self.width}")
        object.__setattr__(self, "gates", tuple(self.gates))
        for i, g in enumerate(self.gates):
            if not isinstance(g, Gate):
                raise TypeError(f"gate {i} is not a Gate: {g!r}")
            if max(g.qubits) > self.width:
                raise ValueError(f"gate {i} ({g}) exceeds circuit width {self.width}")

    @classmethod
    def empty(cls, width: int) -> Circuit:
        return cls(width)

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __add__(self, other: Circuit) -> Circuit:
        return compose(self, other)

    def inverse(self) -> Circuit:
        return Circuit(self.width, tuple(g.inverse() for g in reversed(self.gates)))


def compose(a: Circuit, b: Circuit, *more: Circuit) -> Circuit:
    """Gates of ``a`` followed by gates of ``b`` (and any further circuits)."""
    gates = list(a.gates)
    for c in (b, *more):
        if c.width != a.width:
            raise ValueError(f"width mismatch: {a.width} vs {c.width}")
        gates.extend(c.gates)
    return Circuit(a.width, tuple(gates))


def depth(c: Circuit) -> int:
    """Layer count under as-soon-as-possible scheduling of the stored order.

    Every gate, single- or two-qubit, costs one layer.
    """
    busy: dict[int, int] = {}
    d = 0
    for g in c.gates:
        layer = 1 + max(busy.get(q, 0) for q in g.qubits)
        for q in g.qubits:
            busy[q] = layer
        d = max(d, layer)
    return d


def size(c: Circuit) -> dict[Kind, int]:
    counts = Counter(g.kind for g in c.gates)
    return {k: counts.get(k, 0) for k in Kind}


@dataclass(frozen=True)
class Permutation:
    """Logical qubit -> physical line, ``map[q - 1]`` being the line of qubit q."""

    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))
        if sorted(self.map) != list(range(1, len(self.map) + 1)):
            raise ValueError(f"not a bijection on 1..{len(self.map)}: {self.map}")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def from_ordering(cls, ordering: Sequence[int]) -> Permutation:
        """Build from a line-ordered tuple: ``ordering[i - 1]`` is the logical
        qubit sitting on line i (the notation ``{1, n, n-1, ..., 2}``)."""
        n = len(ordering)
        lines = [0] * n
        for line, q in enumerate(ordering, start=1):
            if not 1 <= q <= n:
                raise ValueError(f"ordering entry {q} outside 1..{n}")
            lines[q - 1] = line
        return cls(tuple(lines))

    @property
    def n(self) -> int:
        return len(self.map)

    @property
    def ordering(self) -> tuple[int, ...]:
        out = [0] * self.n
        for q, line in enumerate(self.map, start=1):
            out[line - 1] = q
        return tuple(out)

    def __call__(self, q: int) -> int:
        return self.map[q - 1]

    def inverse(self) -> Permutation:
        return Permutation(self.ordering)

    def then(self, other: Permutation) -> Permutation:
        """Apply ``self`` first, then ``other``."""
        if other.n != self.n:
            raise ValueError(f"size mismatch: {self.n} vs {other.n}")
        return Permutation(tuple(other(line) for line in self.map))

    def is_identity(self) -> bool:
        return self.map == tuple(range(1, self.n + 1))

    def inversions(self) -> int:
        m = self.map
        return sum(1 for i in range(len(m)) for j in range(i + 1, len(m)) if m[i] > m[j])


def permute(c: Circuit, p: Permutation) -> Circuit:
    if p.n != c.width:
        raise ValueError(f"permutation size {p.n} does not match width {c.width}")
    return Circuit(c.width, tuple(g.relabel(p) for g in c.gates))


# --- canonical JSON ---------------------------------------------------------

def gate_to_dict(g: Gate) -> dict:
    d: dict = {"kind": g.kind.value, "qubits": list(g.qubits)}
    if g.angle is not None:
        d["sign"] = g.angle.sign
        d["k"] = g.angle.k
    if g.root is not None:
        d["t"] = g.root
    return d


def gate_from_dict(d: dict) -> Gate:
    kind = Kind(d["kind"])
    angle = DyadicAngle(int(d["sign"]), int(d["k"])) if kind in ANGLE_KINDS else None
    root = int(d["t"]) if kind in ROOT_KINDS else None
    return Gate(kind, tuple(d["qubits"]), angle, root)


def circuit_to_dict(c: Circuit) -> dict:
    return {"width": c.width, "gates": [gate_to_dict(g) for g in c.gates]}


def circuit_from_dict(d: dict) -> Circuit:
    return Circuit(int(d["width"]), tuple(gate_from_dict(g) for g in d["gates"]))


def dumps(c: Circuit, **kwargs) -> str:
    return json.dumps(circuit_to_dict(c), **kwargs)


def loads(text: str) -> Circuit:
    return circuit_from_dict(json.loads(text))


def concat(width: int, parts: Iterable[Circuit]) -> Circuit:
    return compose(Circuit.empty(width), Circuit.empty(width), *parts)
