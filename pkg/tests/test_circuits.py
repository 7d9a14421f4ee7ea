import numpy as np
import pytest
import torch

from circuits import (ErrorRealization, NoiseModel, TrotterProgram, VARIANTS, apply_program, build_trotter_program,
                      gate_cnot, gate_cz, gate_hopping, gate_iswap, sample_errors, sequence_unitary)
from evolution import InitialState
from fermions import build_hubbard_spinflip, realize
from operators import exp_hermitian, phase_distance, to_dense
from utils.errors import UsageError

DTYPE = torch.complex128


def test_two_qubit_gate_matrices():
    cz = gate_cz(1, 2, n_qubits=2).unitary().matrix
    assert torch.allclose(cz, torch.diag(torch.tensor([1, -1, 1, 1], dtype=DTYPE)), atol=1e-12)

    cnot = gate_cnot(1, 2, n_qubits=2).unitary().matrix
    expected = torch.tensor([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], dtype=DTYPE)
    assert torch.allclose(cnot, expected, atol=1e-12)

    iswap = gate_iswap(1, 2, n_qubits=2).unitary().matrix
    expected = torch.tensor([[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=DTYPE)
    assert torch.allclose(iswap, expected, atol=1e-12)
    inverse = gate_iswap(1, 2, sign=-1, n_qubits=2).unitary().matrix
    assert torch.allclose(iswap @ inverse, torch.eye(4, dtype=DTYPE), atol=1e-12)


def test_gate_validation():
    with pytest.raises(UsageError):
        gate_cz(1, 1)
    with pytest.raises(UsageError):
        gate_cnot(1, 5)
    with pytest.raises(UsageError):
        gate_iswap(1, 2, sign=2)


def test_apply_matches_unitary():
    gate = gate_hopping(1, 3, 0.7, 0.1)
    states = torch.randn(3, 16, dtype=DTYPE, generator=torch.Generator().manual_seed(1))
    deltas = torch.tensor([0.0, 0.02, -0.05], dtype=torch.float64)
    applied = gate.apply(states, deltas)
    for b in range(3):
        expected = gate.unitary(float(deltas[b])).matrix @ states[b]
        assert torch.allclose(applied[b], expected, atol=1e-12)


def test_gate_counts_per_step():
    counts = {variant: build_trotter_program((1.0, 1.0, 1.0), 1.0, 20, variant).n_gates for variant in VARIANTS}
    assert counts == {"cz_chain": 10, "cnot_chain": 12, "iswap_chain": 14}
    assert build_trotter_program((1.0, 0.0, 1.0), 1.0, 20).n_gates == 8


def test_variants_agree_without_noise():
    programs = [build_trotter_program((1.0, 0.7, 0.4), 1.0, 20, variant) for variant in VARIANTS]
    reference = programs[0].step_unitary()
    for program in programs[1:]:
        assert phase_distance(reference, program.step_unitary()) < 1e-10
        assert torch.allclose(reference.matrix, program.step_unitary().matrix, atol=1e-10)


@pytest.mark.parametrize("variant", VARIANTS)
def test_noiseless_step_converges_quadratically(variant):
    h = to_dense(realize(build_hubbard_spinflip(1.0, 1.0, 1.0))).matrix
    errors = []
    for step in (0.1, 0.05, 0.025):
        program = build_trotter_program((1.0, 1.0, 1.0), step, 1, variant)
        errors.append(phase_distance(program.step_unitary(), exp_hermitian(h, -step)))
    ratios = np.array(errors[:-1]) / np.array(errors[1:])
    assert np.all(ratios >= 3.5), ratios


def test_noise_draw_statistics():
    program = build_trotter_program((1.0, 1.0, 1.0), 1000.0, 10000)
    delta_phi = sample_errors(program, NoiseModel(0.025, seed=0), 0).delta_phi
    assert delta_phi.size == 100_000 and np.all(delta_phi != 0)
    assert abs(delta_phi.mean()) < 5 * 0.025 / np.sqrt(delta_phi.size)
    assert delta_phi.std() == pytest.approx(0.025, rel=0.02)


def test_noise_is_reproducible():
    program = build_trotter_program((1.0, 1.0, 1.0), 1.0, 20)
    noise = NoiseModel(0.01, "per_step_iid", seed=7)
    first, again = sample_errors(program, noise, run_id=3), sample_errors(program, noise, run_id=3)
    assert np.array_equal(first.delta_phi, again.delta_phi)
    assert not np.array_equal(first.delta_phi, sample_errors(program, noise, run_id=4).delta_phi)
    assert first.delta_phi.shape == (20, 10)
    assert not first.is_quasi_static


def test_quasi_static_repeats_first_draw():
    program = build_trotter_program((1.0, 1.0, 1.0), 1.0, 20)
    iid = sample_errors(program, NoiseModel(0.01, "per_step_iid", seed=7), run_id=2)
    static = sample_errors(program, NoiseModel(0.01, "quasi_static", seed=7), run_id=2)
    assert static.is_quasi_static
    assert np.array_equal(static.delta_phi[0], iid.delta_phi[0])
    assert np.array_equal(static.delta_phi[-1], iid.delta_phi[0])


def test_zero_noise_draws_zeros():
    program = build_trotter_program((1.0, 1.0, 1.0), 1.0, 5)
    assert not sample_errors(program, NoiseModel(0.0), 0).delta_phi.any()


def test_noise_model_validation():
    with pytest.raises(UsageError):
        NoiseModel(-0.1)
    with pytest.raises(UsageError):
        NoiseModel(0.1, "drifting")


def test_apply_program_composes_steps():
    program = build_trotter_program((1.0, 1.0, 1.0), 0.5, 5, "iswap_chain")
    realization = sample_errors(program, NoiseModel(0.02, seed=1), 0)
    psi0 = InitialState([1, 2]).vector()
    trajectory = apply_program(program, realization, psi0)
    assert trajectory.shape == (6, 16)
    state = psi0
    for m in range(program.n_steps):
        state = program.step_unitary(realization.step(m)).matrix @ state
    assert torch.allclose(trajectory[-1], state, atol=1e-10)
    assert torch.allclose(torch.linalg.vector_norm(trajectory, dim=1), torch.ones(6, dtype=torch.float64))


def test_apply_program_rejects_bad_input():
    program = build_trotter_program((1.0, 1.0, 1.0), 0.5, 5)
    with pytest.raises(UsageError):
        apply_program(program, ErrorRealization.zeros(5, 10), 2 * InitialState([1]).vector())
    with pytest.raises(UsageError):
        apply_program(program, ErrorRealization.zeros(4, 10), InitialState([1]).vector())


def test_program_description_roundtrip():
    program = build_trotter_program((1.0, 0.5, 0.25), 2.0, 40, "cnot_chain")
    description = program.to_dict(NoiseModel(0.01, "quasi_static", 3))
    assert description["noise"]["temporal_mode"] == "quasi_static"
    rebuilt = TrotterProgram.from_dict(description)
    assert [g.label for g in rebuilt.step_gates] == [g.label for g in program.step_gates]
    assert phase_distance(rebuilt.step_unitary(), program.step_unitary()) < 1e-14
    with pytest.raises(UsageError):
        TrotterProgram.from_dict({"variant": "cz_chain"})


def test_sequence_unitary_order():
    first, second = gate_cnot(1, 2, 2), gate_cz(1, 2, 2)
    product = sequence_unitary([first, second]).matrix
    assert torch.allclose(product, second.unitary().matrix @ first.unitary().matrix)


if __name__ == '__main__':
    test_two_qubit_gate_matrices()
    test_variants_agree_without_noise()
    test_noise_is_reproducible()
