"""
Conjugation of Pauli sums by gates e^{i angle G}.

When the Pauli terms of G commute pairwise and carry real coefficients the
conjugation is exact inside the Pauli-sum representation: every term
c Q of G rotates an anticommuting string P into cos(2 angle c) P + i sin(2 angle c) Q P.
Other generators go through the dense matrices.
"""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

from utils.errors import DomainError, UsageError
from .OperatorSum import OperatorSum
from .PauliTerm import multiply
from .dense import conjugate_dense, exp_unitary, from_dense

logger = logging.getLogger(__name__)

CLIFFORD_KINDS = ("CZ", "CNOT", "iSWAP", "inv_iSWAP")


@dataclass(frozen=True)
class CliffordTag:
    """
    A two-qubit Clifford gate on zero-based qubits.

    For CZ and CNOT the first qubit is the control. Occupation of a qubit
    means the |0> state throughout.
    """
    kind: str
    qubits: Tuple[int, int]
    n_qubits: int

    def __post_init__(self):
        if self.kind not in CLIFFORD_KINDS:
            raise UsageError("Unsupported Clifford gate {!r}, expected one of {}".format(self.kind, CLIFFORD_KINDS))
        j, k = self.qubits
        if j == k:
            raise UsageError("{} needs two distinct qubits, got {} twice".format(self.kind, j))
        if not (0 <= j < self.n_qubits and 0 <= k < self.n_qubits):
            raise UsageError("Qubits {} outside a register of {}".format(self.qubits, self.n_qubits))

    def generator(self) -> Tuple[OperatorSum, float]:
        """
        (generator, angle) with the gate equal to e^{i angle generator}.

        The CNOT generator n_c (1 - X_t) is left unnormalized: its spectrum is
        {0, 2}, so its norm is 2 at angle pi/2. Shifting it by the identity gives
        a generator with spectrum {-1, 1} and changes the over-rotated gate
        e^{i (pi/2 + delta_phi) G} only by the global phase e^{i delta_phi}, so
        fidelities and the traceless part of the disorder terms are the same in
        both conventions.
        """
        n = self.n_qubits
        j, k = self.qubits
        if self.kind == "CZ":
            return OperatorSum.occupied(n, j) * OperatorSum.empty(n, k), math.pi
        if self.kind == "CNOT":
            return OperatorSum.occupied(n, j) * (1 - OperatorSum.single(n, k, "X")), math.pi / 2
        sign = 1.0 if self.kind == "iSWAP" else -1.0
        return sign * OperatorSum.hopping(n, j, k), math.pi / 2


def conjugate(generator: OperatorSum, angle: float, op: OperatorSum) -> OperatorSum:
    """
    Ad_{e^{i angle G}}(op) = e^{i angle G} op e^{-i angle G}.
    :param generator: Hermitian generator G
    :param angle: rotation angle
    :param op: operator to conjugate, same register
    """
    if generator.n_qubits != op.n_qubits:
        raise UsageError("Register sizes differ: {} vs {}".format(generator.n_qubits, op.n_qubits))
    if not generator.is_hermitian():
        raise DomainError("Generator is not Hermitian: {}".format(generator))
    if not generator.terms_commute():
        logger.debug("Generator terms do not commute, conjugating densely")
        unitary = exp_unitary(generator, angle)
        return from_dense(conjugate_dense(unitary, op), op.n_qubits)

    result = op
    for rotation in generator.terms:
        if set(rotation.factors) == {"I"}:
            continue
        theta = 2 * angle * rotation.coefficient.real
        cos, sin = math.cos(theta), math.sin(theta)
        axis = rotation.scaled(1 / rotation.coefficient)
        rotated = []
        for term in result.terms:
            if term.commutes_with(axis):
                rotated.append(term)
            else:
                rotated.append(term.scaled(cos))
                rotated.append(multiply(axis, term).scaled(1j * sin))
        result = OperatorSum(op.n_qubits, rotated)
    return result


def conjugate_by_clifford(gate: CliffordTag, op: OperatorSum) -> OperatorSum:
    """
    U op U^dagger for one of the supported Clifford gates, exact in the Pauli-sum representation.
    """
    if not isinstance(gate, CliffordTag):
        raise UsageError("Expected a CliffordTag, got {!r}".format(gate))
    generator, angle = gate.generator()
    return conjugate(generator, angle, op)


def hadamard_lemma_series(x: OperatorSum, y: OperatorSum, order: int) -> OperatorSum:
    """
    Truncated e^X Y e^-X = Y + [X, Y] + [X, [X, Y]]/2! + ... up to nested depth ``order``.
    """
    if order < 0:
        raise UsageError("Series order must be non-negative, got {}".format(order))
    total = y
    nested = y
    for depth in range(1, order + 1):
        nested = x.commutator(nested) / depth
        if nested.is_zero():
            break
        total = total + nested
    return total
