from .FermionExpression import FermionExpression
from .jordan_wigner import jordan_wigner, inverse_jordan_wigner, expression_to_pauli, number_operator
from .FermionHamiltonian import FermionHamiltonian, ModeRelabeling, build_hubbard_spinflip, realize
