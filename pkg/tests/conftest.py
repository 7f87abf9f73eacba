import numpy as np
import pytest
from hypothesis import strategies as st

from zxtoffoli.core import Circuit, DyadicAngle, Gate, Kind

_details: dict[str, str] = {}


@pytest.fixture
def criterion(request):
    """Record a one-line detail for the acceptance summary, then assert."""

    def record(ok: bool, detail: str) -> None:
        _details[request.node.nodeid] = detail
        assert ok, detail

    return record


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" in rep.nodeid and rep.when == "call":
                name = rep.nodeid.split("::")[-1]
                lines.append((name, outcome, _details.get(rep.nodeid, "")))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, detail in sorted(lines):
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}  {detail}")


angles = st.builds(DyadicAngle, st.sampled_from([1, -1]), st.integers(0, 8))


@st.composite
def gates(draw, width: int = 3, kinds=tuple(Kind)):
    kind = draw(st.sampled_from(kinds))
    arity = 1 if kind in (Kind.PHASE, Kind.H) else 2
    qubits = tuple(draw(st.permutations(range(1, width + 1)))[:arity])
    angle = draw(angles) if kind in (Kind.PHASE, Kind.CRX) else None
    root = draw(st.integers(0, 6)) if kind in (Kind.CROOTX, Kind.CROOTXDG) else None
    return Gate(kind, qubits, angle, root)


@st.composite
def circuits(draw, width: int = 3, max_gates: int = 8, kinds=tuple(Kind)):
    gs = draw(st.lists(gates(width, kinds), max_size=max_gates))
    return Circuit(width, tuple(gs))


def random_unitary_like(rng: np.random.Generator, dim: int) -> np.ndarray:
    q, _ = np.linalg.qr(rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim)))
    return q


def caption_orderings(n: int) -> dict[str, tuple[int, ...]]:
    """Ordering after each lowered block, transcribed from the figure captions."""
    ident = tuple(range(1, n + 1))
    return {
        "C1'": (1, *range(n, 1, -1)),
        "C2'": tuple(range(n, 0, -1)),
        "C3'": (*range(2, n + 1), 1),
        "C3.5'": ident,
        "C4'": (1, *range(n - 1, 1, -1), n),
        "C5'": (*range(n - 1, 0, -1), n),
        "C6'": (*range(2, n), 1, n),
        "C6.5'": ident,
    }
