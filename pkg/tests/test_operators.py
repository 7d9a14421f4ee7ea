import math

import pytest
import torch

from operators import (CliffordTag, OperatorSum, PauliTerm, conjugate, conjugate_by_clifford, conjugate_dense,
                       exp_unitary, from_dense, hadamard_lemma_series, multiply, phase_distance, spectral_norm,
                       to_dense)
from utils.errors import DomainError, UsageError


def test_single_qubit_products():
    assert multiply(PauliTerm("X"), PauliTerm("Y")) == PauliTerm("Z", 1j)
    assert multiply(PauliTerm("Y"), PauliTerm("X")) == PauliTerm("Z", -1j)
    assert multiply(PauliTerm("Z"), PauliTerm("Z")) == PauliTerm("I", 1)
    assert multiply(PauliTerm("XZ", 2), PauliTerm("ZZ")) == PauliTerm("YI", -2j)


def test_pauli_term_validation():
    with pytest.raises(UsageError):
        PauliTerm("XA")
    with pytest.raises(UsageError):
        PauliTerm("")
    with pytest.raises(UsageError):
        multiply(PauliTerm("X"), PauliTerm("XX"))


def test_operator_sum_is_canonical():
    op = OperatorSum(2, [PauliTerm("XI", 1), PauliTerm("ZZ", 2), PauliTerm("XI", -1)])
    assert op.as_dict() == {"ZZ": 2}
    assert list(OperatorSum(2, {"ZZ": 1, "XI": 1}).as_dict()) == ["XI", "ZZ"]
    assert OperatorSum(2, {"XI": 1e-16}).is_zero()


def test_ladder_operators():
    n = 3
    plus, minus = OperatorSum.sigma_plus(n, 1), OperatorSum.sigma_minus(n, 1)
    assert (plus * minus).equals(OperatorSum.occupied(n, 1))
    assert (minus * plus).equals(OperatorSum.empty(n, 1))
    assert (plus * plus).is_zero()
    assert plus.adjoint().equals(minus)
    # occupied is |0>
    assert torch.allclose(to_dense(OperatorSum.occupied(1, 0)).matrix,
                          torch.diag(torch.tensor([1, 0], dtype=torch.complex128)))


def test_commutator_and_hermiticity():
    n = 2
    x, y = OperatorSum.single(n, 0, "X"), OperatorSum.single(n, 0, "Y")
    assert x.commutator(y).equals(OperatorSum.single(n, 0, "Z", 2j))
    assert x.anticommutator(y).is_zero()
    assert OperatorSum.hopping(n, 0, 1).is_hermitian()
    assert not OperatorSum.single(n, 0, "X", 1j).is_hermitian()


def test_embed():
    op = OperatorSum.hopping(2, 0, 1)
    assert op.embed(4, 1).as_dict() == {"IXXI": 0.5, "IYYI": 0.5}
    with pytest.raises(UsageError):
        op.embed(2, 1)


def test_dense_decomposition():
    op = OperatorSum(3, {"XYZ": 0.3, "ZZI": -1.2, "IIX": 0.7j, "III": 2.0})
    assert from_dense(to_dense(op)).equals(op)
    assert spectral_norm(OperatorSum.hopping(2, 0, 1)) == pytest.approx(1.0)


def test_exp_unitary_matches_matrix_exp():
    generator = OperatorSum(2, {"XY": 0.3, "ZI": -0.8, "YY": 0.5})
    expected = torch.matrix_exp(1j * 0.7 * to_dense(generator).matrix)
    assert torch.allclose(exp_unitary(generator, 0.7).matrix, expected, atol=1e-12)
    assert exp_unitary(generator, 0.7).is_unitary()


def test_phase_distance_ignores_global_phase():
    unitary = exp_unitary(OperatorSum.hopping(2, 0, 1), 0.4)
    rotated = unitary.matrix * complex(math.cos(0.3), math.sin(0.3))
    assert phase_distance(unitary, rotated) < 1e-12
    assert phase_distance(unitary, exp_unitary(OperatorSum.hopping(2, 0, 1), 0.5)) > 1e-3


def test_cz_turns_creation_into_string():
    n = 2
    generator, angle = CliffordTag("CZ", (0, 1), n).generator()
    image = conjugate(generator, angle, OperatorSum.sigma_plus(n, 0))
    assert image.equals(OperatorSum.single(n, 1, "Z") * OperatorSum.sigma_plus(n, 0))


def test_cnot_generator_is_unnormalized():
    n = 2
    generator, angle = CliffordTag("CNOT", (0, 1), n).generator()
    assert angle == pytest.approx(math.pi / 2)
    assert spectral_norm(generator) == pytest.approx(2.0)
    # shifted by the identity the spectrum is {-1, 1}
    assert spectral_norm(generator - OperatorSum.identity(n)) == pytest.approx(1.0)
    over_rotated = exp_unitary(generator, angle + 0.1)
    shifted = exp_unitary(generator - OperatorSum.identity(n), angle + 0.1)
    assert phase_distance(over_rotated, shifted) < 1e-12


@pytest.mark.parametrize("kind", ["CZ", "CNOT", "iSWAP", "inv_iSWAP"])
def test_clifford_conjugation_matches_dense(kind):
    n = 3
    tag = CliffordTag(kind, (0, 2), n)
    op = OperatorSum.hopping(n, 0, 1) + OperatorSum.single(n, 2, "Y", 0.3) + \
        OperatorSum(n, {"XZY": 0.25, "ZIZ": -0.5})
    generator, angle = tag.generator()
    dense = from_dense(conjugate_dense(exp_unitary(generator, angle), op), n)
    assert conjugate_by_clifford(tag, op).equals(dense)


def test_conjugation_with_non_commuting_generator():
    n = 2
    generator = OperatorSum(n, {"XI": 0.4, "ZZ": 0.7})
    op = OperatorSum(n, {"YX": 1.0, "IZ": 0.5})
    dense = from_dense(conjugate_dense(exp_unitary(generator, 0.3), op), n)
    assert conjugate(generator, 0.3, op).equals(dense)


def test_conjugation_errors():
    with pytest.raises(DomainError):
        conjugate(OperatorSum.single(2, 0, "X", 1j), 0.1, OperatorSum.single(2, 1, "Z"))
    with pytest.raises(UsageError):
        conjugate(OperatorSum.single(2, 0, "X"), 0.1, OperatorSum.single(3, 1, "Z"))
    with pytest.raises(UsageError):
        CliffordTag("SWAP", (0, 1), 2)
    with pytest.raises(UsageError):
        CliffordTag("CZ", (1, 1), 2)


def test_hadamard_lemma_converges_to_exact_conjugation():
    n = 2
    generator, angle = CliffordTag("CZ", (0, 1), n).generator()
    y = OperatorSum.sigma_plus(n, 0)
    exact = conjugate(generator, angle, y)
    x = generator * (1j * angle)
    errors = [spectral_norm(hadamard_lemma_series(x, y, order) - exact) for order in (6, 14, 22, 30)]
    assert all(a > b for a, b in zip(errors, errors[1:]))
    assert errors[-1] < 1e-8
    with pytest.raises(UsageError):
        hadamard_lemma_series(x, y, -1)


if __name__ == '__main__':
    test_single_qubit_products()
    test_cz_turns_creation_into_string()
    test_hadamard_lemma_converges_to_exact_conjugation()
