from dataclasses import dataclass
from functools import cached_property
from typing import Tuple

import torch

from operators import OperatorSum, CliffordTag, to_dense, exp_hermitian, hermitian_eigh
from operators.dense import DTYPE, DenseOperator
from utils.errors import DomainError, UsageError

HAMILTONIAN_LABELS = ("U", "t1", "t2")
CLIFFORD_LABELS = ("CZ", "CNOT", "iSWAP", "inv_iSWAP")
GATE_LABELS = HAMILTONIAN_LABELS + CLIFFORD_LABELS


@dataclass(frozen=True, eq=False)
class Gate:
    """
    A unitary e^{i angle A} with the over-rotation acting as angle -> angle + delta_phi.

    ``qubits`` are one-based and ordered (control, target) where the gate
    distinguishes them. Single-qubit gates are never noisy.
    """
    generator: OperatorSum
    nominal_angle: float
    qubits: Tuple[int, ...]
    label: str
    noisy: bool = True

    def __post_init__(self):
        if self.label not in GATE_LABELS:
            raise UsageError("Unknown gate label {!r}, expected one of {}".format(self.label, GATE_LABELS))
        if not self.generator.is_hermitian():
            raise DomainError("Gate generator is not Hermitian: {}".format(self.generator))
        for q in self.qubits:
            if not 1 <= q <= self.generator.n_qubits:
                raise UsageError("Qubit {} outside [1, {}]".format(q, self.generator.n_qubits))
        if len(set(self.qubits)) < 2:
            object.__setattr__(self, "noisy", False)

    @property
    def n_qubits(self) -> int:
        return self.generator.n_qubits

    @property
    def is_hamiltonian_term(self) -> bool:
        """Small-angle gates that implement a Hamiltonian term directly."""
        return self.label in HAMILTONIAN_LABELS

    def clifford_tag(self) -> CliffordTag:
        if self.is_hamiltonian_term:
            raise UsageError("{} gate is not a Clifford gate".format(self.label))
        return CliffordTag(self.label, tuple(q - 1 for q in self.qubits), self.n_qubits)

    @cached_property
    def spectrum(self):
        """Eigen decomposition of the dense generator, shared by all applications."""
        return hermitian_eigh(to_dense(self.generator).matrix)

    def unitary(self, delta_phi: float = 0.0) -> DenseOperator:
        matrix = exp_hermitian(to_dense(self.generator).matrix, self.nominal_angle + float(delta_phi))
        return DenseOperator(matrix, self.n_qubits)

    def apply(self, states: torch.Tensor, delta_phi=0.0) -> torch.Tensor:
        """
        Apply e^{i (angle + delta_phi) A} to a batch of state vectors.
        :param states: (batch, 2^n) or (2^n,) complex tensor
        :param delta_phi: scalar or (batch,) over-rotations
        """
        eigenvalues, eigenvectors = self.spectrum
        angle = self.nominal_angle + torch.as_tensor(delta_phi, dtype=torch.float64)
        phases = torch.exp(1j * angle.unsqueeze(-1) * eigenvalues).to(DTYPE)
        rotated = states @ eigenvectors.conj()
        return (rotated * phases) @ eigenvectors.T

    def to_dict(self):
        return {"label": self.label, "qubits": list(self.qubits), "nominal_angle": self.nominal_angle,
                "noisy": self.noisy}

    def __repr__(self):
        return "Gate({}{}, angle={:.6g}{})".format(self.label, self.qubits, self.nominal_angle,
                                                   "" if self.noisy else ", exact")


def _check_pair(name, j, k, n_qubits):
    if j == k:
        raise UsageError("{} needs two distinct qubits, got {} twice".format(name, j))
    for q in (j, k):
        if not 1 <= q <= n_qubits:
            raise UsageError("Qubit {} outside [1, {}]".format(q, n_qubits))


def _clifford(kind, j, k, n_qubits) -> Gate:
    _check_pair(kind, j, k, n_qubits)
    generator, angle = CliffordTag(kind, (j - 1, k - 1), n_qubits).generator()
    return Gate(generator, angle, (j, k), kind)


def gate_cz(control: int, target: int, n_qubits: int = 4) -> Gate:
    """e^{i pi n_control e_target}: -1 exactly when control is occupied and target empty."""
    return _clifford("CZ", control, target, n_qubits)


def gate_cnot(control: int, target: int, n_qubits: int = 4) -> Gate:
    """
    e^{i pi/2 n_control (1 - X_target)}, the controlled NOT with control on occupation.
    The generator has norm 2; over-rotations scale it as is.
    """
    return _clifford("CNOT", control, target, n_qubits)


def gate_iswap(j: int, k: int, sign: int = 1, n_qubits: int = 4) -> Gate:
    """e^{+-i pi/2 (sigma+_j sigma-_k + sigma-_j sigma+_k)}"""
    if sign not in (1, -1):
        raise UsageError("iSWAP sign must be +1 or -1, got {}".format(sign))
    return _clifford("iSWAP" if sign > 0 else "inv_iSWAP", j, k, n_qubits)


def gate_interaction(j: int, k: int, strength: float, step_duration: float, n_qubits: int = 4) -> Gate:
    """e^{-i strength dt n_j n_k}, written as generator -n_j n_k with angle strength dt."""
    _check_pair("U", j, k, n_qubits)
    generator = -(OperatorSum.occupied(n_qubits, j - 1) * OperatorSum.occupied(n_qubits, k - 1))
    return Gate(generator, strength * step_duration, (j, k), "U")


def gate_hopping(j: int, k: int, amplitude: float, step_duration: float, label: str = "t1",
                 n_qubits: int = 4) -> Gate:
    """e^{i t dt (sigma+_j sigma-_k + h.c.)}, the evolution under -t times the hopping."""
    _check_pair(label, j, k, n_qubits)
    return Gate(OperatorSum.hopping(n_qubits, j - 1, k - 1), amplitude * step_duration, (j, k), label)

