import numpy as np
import pytest
from conftest import caption_orderings

from zxtoffoli import sim
from zxtoffoli.core import Circuit, Kind, Permutation, crx, dyadic, size
from zxtoffoli.localize import (
    BLOCK_IDS,
    check_locality,
    lower_block,
    lower_pipeline,
    lower_toffoli,
)
from zxtoffoli.synth import gen_czx, gen_toffoli, plan_toffoli

NS = range(3, 8)
SOURCE = {"C1'": "C1", "C2'": "C2", "C3'": "C3", "C4'": "C4", "C5'": "C5", "C6'": "C6"}


def inversions(seq) -> int:
    return sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])


def test_caption_tuples_n4():
    # spelled out once by hand for n = 4
    assert caption_orderings(4) == {
        "C1'": (1, 4, 3, 2), "C2'": (4, 3, 2, 1), "C3'": (2, 3, 4, 1), "C3.5'": (1, 2, 3, 4),
        "C4'": (1, 3, 2, 4), "C5'": (3, 2, 1, 4), "C6'": (2, 3, 1, 4), "C6.5'": (1, 2, 3, 4)}


@pytest.mark.parametrize("n", NS)
class TestBlocks:
    def test_orderings_match_captions(self, n):
        expected = caption_orderings(n)
        for b in lower_pipeline(n):
            if b.block_id in expected:
                assert b.ordering_out.ordering == expected[b.block_id], b.block_id

    def test_chaining(self, n):
        blocks = lower_pipeline(n)
        assert blocks[0].ordering_in.is_identity()
        for a, b in zip(blocks, blocks[1:]):
            assert a.ordering_out == b.ordering_in
        assert blocks[-1].ordering_out.is_identity()

    def test_block_conjugation(self, n):
        # unitary(lowered) == P_out . U(block) . P_in^dagger
        parts = plan_toffoli(n).parts
        for bid in BLOCK_IDS:
            b = lower_block(bid, n)
            src = parts[SOURCE[bid]] if bid in SOURCE else Circuit.empty(n)
            p_in = sim.permutation_matrix(b.ordering_in)
            p_out = sim.permutation_matrix(b.ordering_out)
            lhs = sim.unitary_of(b.circuit)
            rhs = p_out @ sim.unitary_of(src) @ p_in.conj().T
            assert np.max(np.abs(lhs - rhs)) < 1e-12, bid

    def test_reset_blocks_are_minimal_swaps(self, n):
        for bid in ("C3.5'", "C6.5'"):
            b = lower_block(bid, n)
            assert {g.kind for g in b.circuit.gates} == {Kind.SWAP}
            assert len(b.circuit) == inversions(b.ordering_in.ordering)
        assert len(lower_block("C3.5'", n).circuit) == n - 1
        assert len(lower_block("C6.5'", n).circuit) == n - 2

    def test_locality(self, n):
        c = lower_toffoli(n)
        assert check_locality(c)
        assert c.width == n

    def test_rotations_and_phases_preserved(self, n):
        low, ref = size(lower_toffoli(n)), size(gen_toffoli(n))
        assert low[Kind.CRX] == ref[Kind.CRX]
        assert low[Kind.PHASE] == ref[Kind.PHASE] == 2 * n - 3

    def test_pipeline_is_toffoli(self, n):
        r = sim.equiv_up_to_phase(sim.unitary_of(lower_toffoli(n)), sim.toffoli_matrix(n))
        assert r.equivalent and r.max_deviation < 1e-9


def test_c1_n4_brute_force():
    b = lower_block("C1'", 4)
    p = sim.permutation_matrix(b.ordering_out)
    lhs = p.conj().T @ sim.unitary_of(b.circuit)
    rhs = sim.unitary_of(plan_toffoli(4).parts["C1"])
    assert sim.equiv_up_to_phase(lhs, rhs, 1e-12).equivalent


def test_p2_sits_at_identity():
    blocks = lower_pipeline(5)
    p2 = blocks[5]
    assert p2.block_id == "P2" and p2.ordering_in.is_identity()
    assert p2.circuit == plan_toffoli(5).parts["P2"]


def test_czx_is_not_local():
    report = check_locality(gen_czx(5))
    assert not report
    assert report.offending
    assert all(abs(gen_czx(5).gates[i].qubits[0] - gen_czx(5).gates[i].qubits[1]) > 1
               for i in report.offending)


def test_locality_on_small_circuits():
    assert check_locality(Circuit(3, (crx(2, 3, dyadic(1)), crx(2, 1, dyadic(1)))))
    assert check_locality(Circuit.empty(3))
    assert check_locality(Circuit(3, (crx(1, 3, dyadic(1)),))).offending == (0,)


def test_errors():
    with pytest.raises(ValueError):
        lower_block("C7'", 4)
    with pytest.raises(ValueError):
        lower_block("C1'", 2)
    with pytest.raises(ValueError):
        lower_pipeline(2)


def test_orderings_are_permutations():
    for b in lower_pipeline(6):
        assert isinstance(b.ordering_out, Permutation)
        assert sorted(b.ordering_out.ordering) == list(range(1, 7))
        assert b.to_dict()["ordering_out"] == list(b.ordering_out.ordering)
