"""Closed-form disorder templates of the cz_chain Hubbard step."""
from typing import List

from fermions import number_operator
from operators import OperatorSum


def _nn(n, j, k):
    return number_operator([j], n) * number_operator([k], n)


def _hole_after_particle(n, j, k):
    # n_j (1 - n_k)
    return number_operator([j], n) * OperatorSum.empty(n, k - 1)


def _hop(n, j, k):
    return OperatorSum.hopping(n, j - 1, k - 1)


def hubbard_cz_chain_templates() -> List[OperatorSum]:
    """
    delta H per unit (n/tau) delta_phi for each gate of the cz_chain step with
    U, t1 and t2 all nonzero, in gate order:

        U(1,4) U(2,3) t1(1,2) t1(3,4) t2(2,3) CZ(1,2) CZ(1,3) t2(1,4) CZ(1,3) CZ(1,2)

    U errors enter with +, hopping errors with -, and the t2(1,4) error picks
    up the Z2 Z3 string from the CZ gates after it.
    """
    n = 4
    string = OperatorSum.single(n, 1, "Z") * OperatorSum.single(n, 2, "Z")
    return [
        _nn(n, 1, 4),
        _nn(n, 2, 3),
        -_hop(n, 1, 2),
        -_hop(n, 3, 4),
        -_hop(n, 2, 3),
        -_hole_after_particle(n, 1, 2),
        -_hole_after_particle(n, 1, 3),
        -(string * _hop(n, 1, 4)),
        -_hole_after_particle(n, 1, 3),
        -_hole_after_particle(n, 1, 2),
    ]
