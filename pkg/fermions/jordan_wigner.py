"""
Jordan-Wigner encoding of fermionic modes on qubits.

Mode j (one based) lives on qubit j - 1 and c_j = prod_{k<j} (-Z_k) sigma-_j,
with the occupied state |0>.
"""
from itertools import product
from typing import Iterable

from operators import OperatorSum
from utils.errors import UsageError
from .FermionExpression import FermionExpression, ODD_LABELS

KINDS = ("annihilate", "create")


def _check_mode(mode, n_modes):
    if not 1 <= mode <= n_modes:
        raise UsageError("Mode {} outside [1, {}]".format(mode, n_modes))


def _string(n_modes, mode) -> OperatorSum:
    result = OperatorSum.identity(n_modes)
    for k in range(mode - 1):
        result = result * OperatorSum.single(n_modes, k, "Z", -1.0)
    return result


def jordan_wigner(mode: int, kind: str, n_modes: int) -> OperatorSum:
    """
    Pauli realization of c_mode or c^dagger_mode.
    :param mode: one-based mode index
    :param kind: 'annihilate' or 'create'
    :param n_modes: register size
    """
    _check_mode(mode, n_modes)
    if kind == "annihilate":
        return _string(n_modes, mode) * OperatorSum.sigma_minus(n_modes, mode - 1)
    if kind == "create":
        return _string(n_modes, mode) * OperatorSum.sigma_plus(n_modes, mode - 1)
    raise UsageError("Unknown operator kind {!r}, expected one of {}".format(kind, KINDS))


def number_operator(modes: Iterable[int], n_modes: int) -> OperatorSum:
    """Sum of sigma+ sigma- over the given one-based modes."""
    total = OperatorSum.zero(n_modes)
    for mode in sorted(set(modes)):
        _check_mode(mode, n_modes)
        total = total + OperatorSum.occupied(n_modes, mode - 1)
    return total


# qubit-local images of the per-mode labels; odd labels pick up the string of later odd operators
def _local_mode_operator(n_modes, qubit, label) -> OperatorSum:
    if label == "I":
        return OperatorSum.identity(n_modes)
    if label == "+":
        return OperatorSum.sigma_plus(n_modes, qubit)
    if label == "-":
        return OperatorSum.sigma_minus(n_modes, qubit)
    if label == "N":
        return OperatorSum.occupied(n_modes, qubit)
    return OperatorSum.empty(n_modes, qubit)


def expression_to_pauli(expression: FermionExpression) -> OperatorSum:
    """
    Forward map of a fermionic expression. Every odd operator on mode j leaves
    a factor (-Z_k) on all qubits k < j, placed to the right of the operator on k.
    """
    n = expression.n_modes
    total = OperatorSum.zero(n)
    for label, coefficient in expression.terms.items():
        term = OperatorSum.identity(n, coefficient)
        odd_after = 0
        for qubit in reversed(range(n)):
            local = _local_mode_operator(n, qubit, label[qubit])
            if odd_after % 2:
                local = local * OperatorSum.single(n, qubit, "Z", -1.0)
            term = term * local
            if label[qubit] in ODD_LABELS:
                odd_after += 1
        total = total + term
    return total


# Pauli factor -> [(coefficient, mode label)] for an even and an odd number of X/Y factors on later qubits
_PAULI_TO_MODE = {
    ("I", 0): ((1, "I"),),
    ("I", 1): ((1, "E"), (-1, "N")),
    ("Z", 0): ((1, "N"), (-1, "E")),
    ("Z", 1): ((-1, "I"),),
    ("X", 0): ((1, "+"), (1, "-")),
    ("X", 1): ((1, "+"), (-1, "-")),
    ("Y", 0): ((-1j, "+"), (1j, "-")),
    ("Y", 1): ((-1j, "+"), (-1j, "-")),
}


def inverse_jordan_wigner(op: OperatorSum) -> FermionExpression:
    """
    Fermionic expression whose Jordan-Wigner image is ``op``.

    Every Pauli string has a preimage, so the map is total; particle-number
    violating parts show up as monomials with unequal creator and
    annihilator counts (see disorder.classification).
    :return: expression in normal-ordered labels (I, +, -, N)
    """
    n = op.n_qubits
    merged = {}
    for term in op.terms:
        choices = []
        odd_after = 0
        for qubit in reversed(range(n)):
            label = term.factors[qubit]
            choices.append(_PAULI_TO_MODE[(label, odd_after % 2)])
            if label in "XY":
                odd_after += 1
        choices.reverse()
        for combination in product(*choices):
            coefficient = term.coefficient
            chars = []
            for factor, char in combination:
                coefficient *= factor
                chars.append(char)
            key = "".join(chars)
            merged[key] = merged.get(key, 0j) + coefficient
    return FermionExpression(n, merged).normal_ordered()
