"""
Effective disorder delta H of a faulty gate sequence.

An over-rotated gate factors as e^{i angle A} e^{i delta_phi A}. Commuting the
error factor to the end of the step through the later large-angle gates
turns it into e^{i delta_phi Ad(A)}, and matching e^{-i delta H tau/n} gives

    delta H = -(n/tau) sum_k delta_phi_k Ad_{later large-angle gates}(A_k).

Small-angle gates are not conjugated through: their contribution is of
order delta_phi * g tau/n and dropped along with delta_phi^2.
"""
import logging
from typing import List, Sequence, Tuple

from circuits import Gate
from operators import OperatorSum, conjugate
from utils.errors import UsageError

logger = logging.getLogger(__name__)


def derive_case1(gate: Gate, delta_phi: float, n_over_tau: float) -> OperatorSum:
    """
    Disorder from a gate that directly implements a Hamiltonian term.
    :param gate: U, t1 or t2 gate
    :param delta_phi: over-rotation in radians
    :param n_over_tau: steps per unit time
    """
    if not gate.is_hamiltonian_term:
        raise UsageError("{} gate does not implement a Hamiltonian term, use derive_case2".format(gate.label))
    return gate.generator * (-n_over_tau * delta_phi)


def error_templates(gates: Sequence[Gate]) -> List[OperatorSum]:
    """
    Per-gate disorder per unit (n/tau) delta_phi: -Ad_{later large-angle gates}(A_k).

    Templates do not depend on the error angles, so a program derives them
    once and every step is a linear combination.
    """
    templates = []
    for k, gate in enumerate(gates):
        op = gate.generator
        for later in gates[k + 1:]:
            if later.is_hamiltonian_term:
                continue
            op = conjugate(later.generator, later.nominal_angle, op)
        templates.append(-op)
    logger.debug("Derived %d error templates", len(templates))
    return templates


def derive_contributions(sequence: Sequence[Tuple[Gate, float]], n_over_tau: float) -> List[OperatorSum]:
    """The disorder contributed by every (gate, delta_phi) of the sequence, in order."""
    gates = [gate for gate, _ in sequence]
    return [template * (n_over_tau * delta) for template, (_, delta) in zip(error_templates(gates), sequence)]


def derive_case2(sequence: Sequence[Tuple[Gate, float]], n_over_tau: float = 1.0) -> OperatorSum:
    """
    Disorder of a decomposed block, every error conjugated through the
    large-angle gates that follow it. Applied gate by gate this is the
    iterated form e^X e^Y = e^{Ad_{e^X} Y} e^X.
    :param sequence: (gate, delta_phi) pairs in time order
    :param n_over_tau: steps per unit time
    """
    if not sequence:
        raise UsageError("Empty gate sequence")
    n_qubits = sequence[0][0].n_qubits
    total = OperatorSum.zero(n_qubits)
    for contribution in derive_contributions(sequence, n_over_tau):
        total = total + contribution
    return total
