"""Ancilla-free n-qubit Toffoli synthesis, nearest-neighbour lowering and NMR
pulse compilation, checked against dense unitary oracles."""
from .core import (
    Circuit,
    DyadicAngle,
    Gate,
    Kind,
    Permutation,
    compose,
    depth,
    permute,
    size,
)
from .localize import check_locality, lower_block, lower_toffoli
from .sim import czx_matrix, equiv_up_to_phase, toffoli_matrix, unitary_of
from .synth import fuse_phase, gen_czx, gen_phase_layers, gen_toffoli, root_of_x

__all__ = [
    "Circuit", "DyadicAngle", "Gate", "Kind", "Permutation", "compose", "depth", "permute",
    "size", "check_locality", "lower_block", "lower_toffoli", "czx_matrix",
    "equiv_up_to_phase", "toffoli_matrix", "unitary_of", "fuse_phase", "gen_czx",
    "gen_phase_layers", "gen_toffoli", "root_of_x",
]
