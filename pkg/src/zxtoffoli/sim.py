"""
Dense unitary / statevector engine and the brute-force oracles.

Basis convention: qubit 1 is the most significant bit of the basis index, so
the all-controls-one subspace of an n-qubit controlled gate is the bottom-right
2x2 block.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .core import Circuit, Gate, Kind, Permutation
from .synth import root_of_x

MAX_WIDTH = 12  # dense unitaries above this are 4**n complex entries too many
MAX_STATE_WIDTH = 24

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
SWAP = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex)

ZX = Z @ X
# block realized by the controlled-Rx skeleton: Rx(pi) = -iX
RX_PI = np.array([[0, -1j], [-1j, 0]], dtype=complex)


def rx(theta: float) -> np.ndarray:
    return np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * X


def phase_matrix(theta: float) -> np.ndarray:
    return np.diag([1, np.exp(1j * theta)]).astype(complex)


def controlled(block: np.ndarray) -> np.ndarray:
    m = np.eye(4, dtype=complex)
    m[2:, 2:] = block
    return m


def gate_matrix(g: Gate) -> np.ndarray:
    """Matrix of ``g`` on its own qubits, ``g.qubits[0]`` most significant."""
    k = g.kind
    if k is Kind.PHASE:
        return phase_matrix(g.angle.radians)
    if k is Kind.H:
        return H
    if k is Kind.CRX:
        return controlled(rx(g.angle.radians))
    if k is Kind.CROOTX:
        return controlled(root_of_x(g.root))
    if k is Kind.CROOTXDG:
        return controlled(root_of_x(g.root, dagger=True))
    if k is Kind.CNOT:
        return controlled(X)
    if k is Kind.SWAP:
        return SWAP
    raise ValueError(f"no matrix for gate kind {k}")


def apply_matrix(states: np.ndarray, n: int, m: np.ndarray, qubits) -> np.ndarray:
    """Apply ``m`` to the 1-based ``qubits`` of a (2**n, batch) state block."""
    batch = states.shape[1]
    axes = [q - 1 for q in qubits]
    k = len(axes)
    st = states.reshape([2] * n + [batch])
    st = np.tensordot(m.reshape([2] * (2 * k)), st, axes=(list(range(k, 2 * k)), axes))
    st = np.moveaxis(st, list(range(k)), axes)
    return st.reshape(2 ** n, batch)


def _run(c: Circuit, states: np.ndarray) -> np.ndarray:
    cache: dict[Gate, np.ndarray] = {}
    for g in c.gates:
        m = cache.get(g)
        if m is None:
            m = cache[g] = gate_matrix(g)
        states = apply_matrix(states, c.width, m, g.qubits)
    return states


def unitary_of(c: Circuit) -> np.ndarray:
    """U = G_m ... G_1 (first gate acts first)."""
    if c.width > MAX_WIDTH:
        raise ValueError(f"width {c.width} exceeds dense-unitary cap {MAX_WIDTH}")
    return _run(c, np.eye(2 ** c.width, dtype=complex))


def apply_state(c: Circuit, s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    if s.ndim != 1 or s.shape[0] != 2 ** c.width:
        raise ValueError(f"state of shape {s.shape} does not match width {c.width}")
    if c.width > MAX_STATE_WIDTH:
        raise ValueError(f"width {c.width} exceeds statevector cap {MAX_STATE_WIDTH}")
    norm = np.linalg.norm(s)
    if abs(norm - 1) > 1e-12:
        raise ValueError(f"state is not normalized (norm {norm!r})")
    return _run(c, s.reshape(-1, 1)).reshape(-1)


def basis_state(n: int, bits: str | int) -> np.ndarray:
    index = int(bits, 2) if isinstance(bits, str) else bits
    s = np.zeros(2 ** n, dtype=complex)
    s[index] = 1
    return s


# --- oracles ----------------------------------------------------------------

def controlled_matrix(n: int, block: np.ndarray) -> np.ndarray:
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    m = np.eye(2 ** n, dtype=complex)
    m[-2:, -2:] = block
    return m


def toffoli_matrix(n: int) -> np.ndarray:
    return controlled_matrix(n, X)


def czx_matrix(n: int) -> np.ndarray:
    """n-qubit controlled-Rx(pi): the gate the controlled-Rx skeleton realizes.

    Equal to the Toffoli times a phase -i on the all-controls-one subspace.
    """
    return controlled_matrix(n, RX_PI)


ORACLE_BLOCKS = {"toffoli": X, "czx": RX_PI}


def controlled_apply(n: int, block: np.ndarray, states: np.ndarray) -> np.ndarray:
    """Action of ``controlled_matrix(n, block)`` without building it."""
    out = np.array(states, dtype=complex, copy=True)
    out[-2:] = block @ states[-2:]
    return out


def permutation_matrix(p: Permutation) -> np.ndarray:
    """Basis map |x> -> |x'> with x'[p(q)] = x[q]."""
    n = p.n
    dim = 2 ** n
    m = np.zeros((dim, dim), dtype=complex)
    for x in range(dim):
        y = 0
        for q in range(1, n + 1):
            if (x >> (n - q)) & 1:
                y |= 1 << (n - p(q))
        m[y, x] = 1
    return m


# --- equivalence ------------------------------------------------------------

@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    phase: complex
    max_deviation: float

    def to_dict(self) -> dict:
        return {"equivalent": bool(self.equivalent),
                "phase": [float(self.phase.real), float(self.phase.imag)],
                "max_deviation": float(self.max_deviation)}


def _report(a: np.ndarray, b: np.ndarray, tol: float) -> EquivalenceReport:
    dim = b.shape[0]
    nz = np.flatnonzero(np.abs(b) > 0.5 / dim)
    if nz.size == 0:
        raise ValueError("reference has no entry large enough to fix the phase")
    r, c = np.unravel_index(nz[0], b.shape)
    ph = complex(a[r, c] / b[r, c])
    dev = float(np.max(np.abs(a - ph * b)))
    ok = dev <= tol and abs(abs(ph) - 1) <= max(tol, 1e-12)
    return EquivalenceReport(ok, ph, dev)


def equiv_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> EquivalenceReport:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return _report(a, b, tol)


def unitarity_error(u: np.ndarray) -> float:
    return float(np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0]))))


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("ZXTOFFOLI_THREADS", "1")))
    except ValueError:
        return 1


def verify(c: Circuit, oracle: str = "toffoli", tol: float = 1e-9, seed: int = 0,
           full_limit: int = 8, n_random: int = 32, threads: int | None = None) -> EquivalenceReport:
    """Compare ``c`` with a named controlled oracle up to one global phase.

    Widths up to ``full_limit`` use full unitaries. Wider circuits are run on
    every computational basis state (in column chunks) plus ``n_random``
    random states, all aligned to the phase found on the first basis state.
    """
    if oracle not in ORACLE_BLOCKS:
        raise ValueError(f"unknown oracle {oracle!r}; choose from {sorted(ORACLE_BLOCKS)}")
    block = ORACLE_BLOCKS[oracle]
    n = c.width
    if n <= full_limit:
        return equiv_up_to_phase(unitary_of(c), controlled_matrix(n, block), tol)
    if n > MAX_STATE_WIDTH:
        raise ValueError(f"width {n} exceeds statevector cap {MAX_STATE_WIDTH}")

    dim = 2 ** n
    chunk = max(1, min(dim, 2 ** 20 // dim))
    starts = list(range(0, dim, chunk))

    def run_chunk(lo: int):
        hi = min(dim, lo + chunk)
        cols = np.zeros((dim, hi - lo), dtype=complex)
        cols[np.arange(lo, hi), np.arange(hi - lo)] = 1
        return _run(c, cols), controlled_apply(n, block, cols)

    workers = threads or _threads()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(run_chunk, starts))
    else:
        results = [run_chunk(lo) for lo in starts]

    got0, want0 = results[0]
    ph = complex(got0[0, 0] / want0[0, 0])
    dev = max(float(np.max(np.abs(g - ph * w))) for g, w in results)

    rng = np.random.default_rng(seed)
    states = rng.normal(size=(dim, n_random)) + 1j * rng.normal(size=(dim, n_random))
    states /= np.linalg.norm(states, axis=0)
    dev = max(dev, float(np.max(np.abs(_run(c, states) - ph * controlled_apply(n, block, states)))))
    ok = dev <= tol and abs(abs(ph) - 1) <= max(tol, 1e-12)
    return EquivalenceReport(ok, ph, dev)
