from dataclasses import dataclass
from numbers import Number
from typing import Mapping

from utils.errors import UsageError

PAULI_LABELS = "IXYZ"

# (left, right) -> (phase, label) for the single-qubit product left * right
_PRODUCT_TABLE = {}
for _a in PAULI_LABELS:
    _PRODUCT_TABLE[("I", _a)] = (1, _a)
    _PRODUCT_TABLE[(_a, "I")] = (1, _a)
    _PRODUCT_TABLE[(_a, _a)] = (1, "I")
for _a, _b, _c in (("X", "Y", "Z"), ("Y", "Z", "X"), ("Z", "X", "Y")):
    _PRODUCT_TABLE[(_a, _b)] = (1j, _c)
    _PRODUCT_TABLE[(_b, _a)] = (-1j, _c)


@dataclass(frozen=True)
class PauliTerm:
    """
    A complex coefficient times a tensor product of single-qubit Pauli factors.

    Qubit 0 is the leftmost character of ``factors`` and the most significant
    bit of the dense realization.
    """
    factors: str
    coefficient: complex = 1.0

    def __post_init__(self):
        if not self.factors:
            raise UsageError("A Pauli term needs at least one qubit")
        bad = set(self.factors) - set(PAULI_LABELS)
        if bad:
            raise UsageError("Unknown Pauli labels {} in {!r}".format(sorted(bad), self.factors))
        object.__setattr__(self, "coefficient", complex(self.coefficient))

    @classmethod
    def from_sparse(cls, n_qubits: int, ops: Mapping[int, str], coefficient=1.0):
        """
        Build a term from {qubit: label} with identities elsewhere.
        :param n_qubits: register size
        :param ops: zero-based qubit index to Pauli label
        :param coefficient: complex prefactor
        """
        labels = ["I"] * n_qubits
        for qubit, label in ops.items():
            if not 0 <= qubit < n_qubits:
                raise UsageError("Qubit {} outside a register of {} qubits".format(qubit, n_qubits))
            labels[qubit] = label
        return cls("".join(labels), coefficient)

    @property
    def n_qubits(self) -> int:
        return len(self.factors)

    @property
    def support(self):
        return tuple(q for q, label in enumerate(self.factors) if label != "I")

    def adjoint(self) -> "PauliTerm":
        return PauliTerm(self.factors, self.coefficient.conjugate())

    def scaled(self, factor) -> "PauliTerm":
        return PauliTerm(self.factors, self.coefficient * factor)

    def commutes_with(self, other: "PauliTerm") -> bool:
        _check_sizes(self, other)
        clashes = sum(1 for a, b in zip(self.factors, other.factors) if a != "I" and b != "I" and a != b)
        return clashes % 2 == 0

    def __mul__(self, other):
        if isinstance(other, PauliTerm):
            return multiply(self, other)
        if isinstance(other, Number):
            return self.scaled(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self.scaled(other)
        return NotImplemented

    def __neg__(self):
        return self.scaled(-1)

    def __str__(self):
        return "({:.6g}){}".format(self.coefficient, self.factors)


def _check_sizes(a: PauliTerm, b: PauliTerm):
    if a.n_qubits != b.n_qubits:
        raise UsageError("Register sizes differ: {} vs {}".format(a.n_qubits, b.n_qubits))


def multiply(a: PauliTerm, b: PauliTerm) -> PauliTerm:
    """
    Exact product a * b including the induced phase.
    :param a: left factor
    :param b: right factor
    :return: the single Pauli term equal to a * b

    >>> multiply(PauliTerm("X"), PauliTerm("Y"))
    PauliTerm(factors='Z', coefficient=1j)
    """
    _check_sizes(a, b)
    phase = a.coefficient * b.coefficient
    labels = []
    for left, right in zip(a.factors, b.factors):
        factor_phase, label = _PRODUCT_TABLE[(left, right)]
        phase *= factor_phase
        labels.append(label)
    return PauliTerm("".join(labels), phase)
