from .PauliTerm import PauliTerm, multiply
from .OperatorSum import OperatorSum
from .dense import (DenseOperator, to_dense, from_dense, spectral_norm, exp_unitary, exp_hermitian,
                    hermitian_eigh, conjugate_dense, phase_distance)
from .clifford import CliffordTag, conjugate, conjugate_by_clifford, hadamard_lemma_series
