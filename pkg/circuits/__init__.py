from .Gate import Gate, gate_cz, gate_cnot, gate_iswap, gate_interaction, gate_hopping, HAMILTONIAN_LABELS
from .NoiseModel import NoiseModel, ErrorRealization, sample_errors, TEMPORAL_MODES
from .TrotterProgram import (TrotterProgram, VARIANTS, build_trotter_step, build_trotter_program, cnot_chain_gates,
                             iswap_chain_gates, sequence_unitary, iterate_states, apply_program)
