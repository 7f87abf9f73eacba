import cmath

import numpy as np
import pytest
from conftest import circuits, random_unitary_like
from hypothesis import given, settings
from hypothesis import strategies as st

from zxtoffoli import sim
from zxtoffoli.core import Circuit, Kind, cnot, crx, dyadic, hadamard
from zxtoffoli.sim import (
    apply_state,
    basis_state,
    czx_matrix,
    equiv_up_to_phase,
    toffoli_matrix,
    unitary_of,
)
from zxtoffoli.synth import gen_czx, gen_toffoli


def test_empty_is_identity():
    assert np.array_equal(unitary_of(Circuit.empty(2)), np.eye(4))


def test_cnot_qubit1_controls():
    u = unitary_of(Circuit(2, (cnot(1, 2),)))
    expected = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
    assert np.array_equal(u, expected)


def test_qubit1_is_msb():
    u = unitary_of(Circuit(3, (hadamard(1),)))
    assert np.allclose(u, np.kron(sim.H, np.eye(4)))


def test_width_cap():
    with pytest.raises(ValueError, match="cap"):
        unitary_of(Circuit.empty(sim.MAX_WIDTH + 1))


class TestOracles:
    def test_toffoli_small(self):
        assert np.array_equal(toffoli_matrix(1), sim.X)
        assert np.array_equal(toffoli_matrix(2), unitary_of(Circuit(2, (cnot(1, 2),))))

    def test_toffoli_3_swaps_110_111(self):
        expected = np.eye(8)
        expected[[6, 7]] = expected[[7, 6]]
        assert np.array_equal(toffoli_matrix(3), expected)

    def test_czx_is_toffoli_with_minus_i_on_controls(self):
        # block algebra: diag(1,...,1,-i,-i) . Toffoli
        for n in (2, 3, 4):
            d = np.ones(2 ** n, dtype=complex)
            d[-2:] = -1j
            assert np.allclose(czx_matrix(n), np.diag(d) @ toffoli_matrix(n))

    def test_czx_1(self):
        assert np.allclose(czx_matrix(1), [[0, -1j], [-1j, 0]])

    def test_zx_block_orientation(self):
        # Z.X as literally multiplied: [[0,1],[-1,0]]
        assert np.array_equal(sim.ZX, [[0, 1], [-1, 0]])
        n = 3
        cz = np.diag([1] * (2 ** n - 1) + [-1])
        assert np.allclose(sim.controlled_matrix(n, sim.ZX), cz @ toffoli_matrix(n))

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_oracles_unitary(self, n):
        for m in (toffoli_matrix(n), czx_matrix(n)):
            assert sim.unitarity_error(m) < 1e-12


class TestEquivalence:
    def test_recovers_phase(self):
        a = random_unitary_like(np.random.default_rng(1), 8)
        lam = cmath.exp(1j * cmath.pi / 7)
        r = equiv_up_to_phase(lam * a, a)
        assert r.equivalent
        assert abs(r.phase - lam) < 1e-12

    def test_i_vs_x(self):
        assert not equiv_up_to_phase(np.eye(2), sim.X).equivalent

    def test_dim_mismatch(self):
        with pytest.raises(ValueError):
            equiv_up_to_phase(np.eye(2), np.eye(4))

    @settings(max_examples=40, deadline=None)
    @given(st.floats(0, 2 * np.pi), st.integers(0, 1000))
    def test_random_phase_recovery(self, phi, seed):
        a = random_unitary_like(np.random.default_rng(seed), 4)
        lam = cmath.exp(1j * phi)
        r = equiv_up_to_phase(a, a / lam)
        assert abs(r.phase - lam) < 1e-12
        assert r.max_deviation < 1e-12


class TestApplyState:
    def test_empty(self):
        s = random_unitary_like(np.random.default_rng(0), 8)[:, 0]
        assert np.allclose(apply_state(Circuit.empty(3), s), s)

    def test_toffoli_on_110(self):
        out = apply_state(gen_toffoli(3), basis_state(3, "110"))
        assert equiv_up_to_phase(out.reshape(-1, 1), basis_state(3, "111").reshape(-1, 1)).equivalent

    def test_toffoli_on_010(self):
        out = apply_state(gen_toffoli(3), basis_state(3, "010"))
        assert equiv_up_to_phase(out.reshape(-1, 1), basis_state(3, "010").reshape(-1, 1)).equivalent

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            apply_state(Circuit.empty(2), np.ones(4))
        with pytest.raises(ValueError):
            apply_state(Circuit.empty(2), np.ones(8) / np.sqrt(8))

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_matches_columns(self, n):
        c = gen_toffoli(n)
        u = unitary_of(c)
        for i in range(2 ** n):
            out = apply_state(c, basis_state(n, i))
            assert np.max(np.abs(out - u[:, i])) < 1e-12
            assert abs(np.linalg.norm(out) - 1) < 1e-12


@settings(max_examples=30, deadline=None)
@given(circuits(width=3, max_gates=10))
def test_random_circuits_unitary(c):
    assert sim.unitarity_error(unitary_of(c)) < 1e-12 * 8


@pytest.mark.parametrize("make", [gen_toffoli, gen_czx])
@pytest.mark.parametrize("n", [3, 5, 7])
def test_generated_unitary(make, n):
    assert sim.unitarity_error(unitary_of(make(n))) < 1e-12 * 2 ** n


class TestVerify:
    def test_full_path(self):
        assert sim.verify(gen_toffoli(4)).equivalent
        assert not sim.verify(gen_czx(4)).equivalent
        assert sim.verify(gen_czx(4), "czx").equivalent

    def test_statevector_path_matches_full(self):
        c = gen_toffoli(6)
        full = sim.verify(c, full_limit=8)
        sv = sim.verify(c, full_limit=4, threads=2)
        assert sv.equivalent and full.equivalent
        assert abs(sv.phase - full.phase) < 1e-12

    def test_statevector_path_detects_error(self):
        c = gen_toffoli(5)
        broken = Circuit(5, c.gates[:-1])
        assert not sim.verify(broken, full_limit=3).equivalent

    def test_unknown_oracle(self):
        with pytest.raises(ValueError):
            sim.verify(gen_toffoli(3), "ccz")


def test_gate_matrix_crx():
    m = sim.gate_matrix(crx(1, 2, dyadic(1)))
    assert np.allclose(m[2:, 2:], np.array([[1, -1j], [-1j, 1]]) / np.sqrt(2))
    assert sim.gate_matrix(crx(1, 2, dyadic(1))).shape == (4, 4)
    assert Kind.CRX in Kind
