"""
Dense realization of Pauli sums as torch complex128 matrices.

Registers here are at most a handful of qubits, so every operator is a full
2^n x 2^n matrix and Hermitian exponentials go through torch.linalg.eigh.
"""
from dataclasses import dataclass
from functools import lru_cache

import torch

from utils.errors import DomainError, NumericalError, UsageError
from .OperatorSum import OperatorSum
from .PauliTerm import PAULI_LABELS

DTYPE = torch.complex128

_SINGLE_QUBIT = {
    "I": torch.tensor([[1, 0], [0, 1]], dtype=DTYPE),
    "X": torch.tensor([[0, 1], [1, 0]], dtype=DTYPE),
    "Y": torch.tensor([[0, -1j], [1j, 0]], dtype=DTYPE),
    "Z": torch.tensor([[1, 0], [0, -1]], dtype=DTYPE),
}


@dataclass(frozen=True)
class DenseOperator:
    matrix: torch.Tensor
    n_qubits: int

    def __post_init__(self):
        dim = 2 ** self.n_qubits
        if tuple(self.matrix.shape) != (dim, dim):
            raise UsageError("Expected a {0}x{0} matrix for {1} qubits, got {2}".format(
                dim, self.n_qubits, tuple(self.matrix.shape)))
        if self.matrix.dtype != DTYPE:
            object.__setattr__(self, "matrix", self.matrix.to(DTYPE))

    @property
    def dim(self):
        return 2 ** self.n_qubits

    def adjoint(self) -> "DenseOperator":
        return DenseOperator(self.matrix.conj().T, self.n_qubits)

    def is_hermitian(self, atol=1e-12) -> bool:
        return bool(torch.allclose(self.matrix, self.matrix.conj().T, atol=atol, rtol=0))

    def is_unitary(self, atol=1e-12) -> bool:
        eye = torch.eye(self.dim, dtype=DTYPE)
        return spectral_norm(self.matrix.conj().T @ self.matrix - eye) <= atol

    def __matmul__(self, other):
        if isinstance(other, DenseOperator):
            return DenseOperator(self.matrix @ other.matrix, self.n_qubits)
        return self.matrix @ other

    def __add__(self, other):
        return DenseOperator(self.matrix + other.matrix, self.n_qubits)

    def __sub__(self, other):
        return DenseOperator(self.matrix - other.matrix, self.n_qubits)


@lru_cache(maxsize=4096)
def pauli_matrix(factors: str) -> torch.Tensor:
    """Kronecker product of the single-qubit factors, qubit 0 leftmost."""
    result = _SINGLE_QUBIT[factors[0]]
    for label in factors[1:]:
        result = torch.kron(result, _SINGLE_QUBIT[label])
    return result


def to_dense(op: OperatorSum, n_qubits: int = None) -> DenseOperator:
    """
    Kronecker-product realization of an operator sum.
    :param op: operator to realize
    :param n_qubits: register size, defaults to the operator's own; a larger register pads with identities
    """
    if n_qubits is None:
        n_qubits = op.n_qubits
    if op.n_qubits > n_qubits:
        raise UsageError("Operator on {} qubits does not fit a register of {}".format(op.n_qubits, n_qubits))
    if op.n_qubits < n_qubits:
        op = op.embed(n_qubits)
    matrix = torch.zeros((2 ** n_qubits, 2 ** n_qubits), dtype=DTYPE)
    for term in op.terms:
        matrix = matrix + term.coefficient * pauli_matrix(term.factors)
    return DenseOperator(matrix, n_qubits)


def _as_matrix(op) -> torch.Tensor:
    if isinstance(op, DenseOperator):
        return op.matrix
    if isinstance(op, OperatorSum):
        return to_dense(op).matrix
    return op


def spectral_norm(op) -> float:
    """
    Largest singular value.
    :param op: DenseOperator, OperatorSum or square tensor
    """
    matrix = _as_matrix(op)
    try:
        return float(torch.linalg.svdvals(matrix).max())
    except RuntimeError as e:
        raise NumericalError("Singular value decomposition failed: {}".format(e))


def hermitian_eigh(matrix: torch.Tensor):
    """Eigen decomposition of a Hermitian (batch of) matrix, wrapping solver failures."""
    try:
        return torch.linalg.eigh(matrix)
    except RuntimeError as e:
        raise NumericalError("Hermitian eigen decomposition failed: {}".format(e))


def exp_hermitian(matrix: torch.Tensor, angle) -> torch.Tensor:
    """e^{i angle M} for Hermitian M (or a batch of them)."""
    eigenvalues, eigenvectors = hermitian_eigh(matrix)
    phases = torch.exp(1j * angle * eigenvalues.to(DTYPE))
    return (eigenvectors * phases.unsqueeze(-2)) @ eigenvectors.conj().transpose(-2, -1)


def exp_unitary(generator: OperatorSum, angle: float, n_qubits: int = None) -> DenseOperator:
    """
    e^{i angle G} for a Hermitian generator G.
    :param generator: Hermitian operator sum
    :param angle: rotation angle in radians
    :param n_qubits: register size, defaults to the generator's
    """
    if not generator.is_hermitian():
        raise DomainError("Generator is not Hermitian: {}".format(generator))
    dense = to_dense(generator, n_qubits)
    return DenseOperator(exp_hermitian(dense.matrix, float(angle)), dense.n_qubits)


def conjugate_dense(unitary, op) -> torch.Tensor:
    """U op U^dagger on dense matrices."""
    u = _as_matrix(unitary)
    return u @ _as_matrix(op) @ u.conj().T


def phase_distance(u, v) -> float:
    """
    Distance between two unitaries ignoring a global phase.

    The phase is aligned through the trace overlap, which is the optimal
    choice for the Frobenius norm and agrees with the spectral-norm optimum
    to second order in the distance.
    """
    a, b = _as_matrix(u), _as_matrix(v)
    overlap = torch.trace(b.conj().T @ a)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else torch.tensor(1.0, dtype=DTYPE)
    return spectral_norm(a - phase * b)


def _decomposition_basis() -> torch.Tensor:
    # basis[a, 2 * r + c] = sigma_a[c, r] / 2 so that contracting with M[r, c] gives tr(sigma_a M) / 2
    basis = torch.zeros((4, 4), dtype=DTYPE)
    for a, label in enumerate(PAULI_LABELS):
        basis[a] = _SINGLE_QUBIT[label].T.reshape(4) / 2
    return basis


def from_dense(op, n_qubits: int = None) -> OperatorSum:
    """
    Pauli decomposition c_P = tr(P M) / 2^n of a dense matrix.
    :param op: DenseOperator or square tensor
    :param n_qubits: register size when a bare tensor is passed
    """
    matrix = _as_matrix(op)
    if n_qubits is None:
        n_qubits = op.n_qubits if isinstance(op, DenseOperator) else int(matrix.shape[0]).bit_length() - 1
    if matrix.shape[0] != 2 ** n_qubits:
        raise UsageError("Matrix of size {} is not a {}-qubit operator".format(matrix.shape[0], n_qubits))
    # interleave row and column index of every qubit, then contract each pair with the Pauli basis
    tensor = matrix.reshape([2] * (2 * n_qubits))
    order = [axis for q in range(n_qubits) for axis in (q, n_qubits + q)]
    tensor = tensor.permute(order).reshape([4] * n_qubits)
    basis = _decomposition_basis()
    for q in range(n_qubits):
        tensor = torch.movedim(torch.tensordot(tensor, basis, dims=([q], [1])), -1, q)
    coefficients = tensor.reshape(-1)
    terms = {}
    for flat in torch.nonzero(coefficients.abs() > 1e-14).flatten().tolist():
        labels, index = [], flat
        for _ in range(n_qubits):
            labels.append(PAULI_LABELS[index % 4])
            index //= 4
        terms["".join(reversed(labels))] = coefficients[flat].item()
    return OperatorSum(n_qubits, terms)
