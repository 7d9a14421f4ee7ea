from dataclasses import dataclass

from fermions import FermionExpression, expression_to_pauli, inverse_jordan_wigner, number_operator
from operators import OperatorSum


@dataclass(frozen=True, eq=False)
class DisorderClassification:
    """
    Split of a disorder operator into particle-conserving fermionic terms
    (hoppings, density-density and number terms) and the Pauli residual that
    changes the particle number.
    """
    physical_part: FermionExpression
    unphysical_residual: OperatorSum

    @property
    def conserves_particle_number(self) -> bool:
        return self.unphysical_residual.is_zero(1e-12)

    @property
    def n_monomials(self) -> int:
        return len(self.physical_part)


def classify(delta_h: OperatorSum) -> DisorderClassification:
    expression = inverse_jordan_wigner(delta_h)
    physical = expression.conserving_part()
    residual = delta_h - expression_to_pauli(physical)
    return DisorderClassification(physical, residual)


def commutes_with_particle_number(delta_h: OperatorSum, atol=1e-12) -> bool:
    """[N_total, delta H] == 0 checked in the Pauli algebra."""
    total = number_operator(range(1, delta_h.n_qubits + 1), delta_h.n_qubits)
    return total.commutator(delta_h).is_zero(atol)
