import json
import math

import numpy as np
import pytest
import torch

from circuits import ErrorRealization, NoiseModel, build_trotter_program, sample_errors
from disorder import derive_trace, step_error
from evolution import (InitialState, ObservableRecorder, Trajectory, evolve_effective, evolve_faulty,
                       evolve_faulty_batch, evolve_ideal, spatial_variance, spatial_variance_from_probabilities)
from fermions import build_hubbard_spinflip, realize
from utils.errors import DomainError, UsageError

H_PARAMS = (1.0, 1.0, 1.0)


@pytest.fixture(scope="module")
def hamiltonian():
    return realize(build_hubbard_spinflip(*H_PARAMS))


def test_initial_state_ordering_sign():
    state = InitialState([1, 2]).vector()
    # modes 1 and 2 occupied is |0011>
    assert state[3].item() == pytest.approx(-1)
    assert torch.count_nonzero(state) == 1
    assert InitialState([2, 1]).vector()[3].item() == pytest.approx(1)
    assert InitialState([]).vector()[15].item() == pytest.approx(1)
    with pytest.raises(UsageError):
        InitialState([1, 1])
    with pytest.raises(UsageError):
        InitialState([5])


def test_spatial_variance_values():
    first, third = InitialState([1]).vector(), InitialState([3]).vector()
    assert spatial_variance(first) == pytest.approx(0.0)
    assert spatial_variance(InitialState([2]).vector()) == pytest.approx(0.0)
    assert spatial_variance((first + third) / math.sqrt(2)) == pytest.approx(1.0)
    single = [InitialState([k]).vector() for k in range(1, 5)]
    uniform = sum(single) / 2
    assert spatial_variance(uniform) == pytest.approx(0.5)
    assert spatial_variance(uniform, "compact") == pytest.approx(0.25)
    assert spatial_variance(InitialState([1, 2]).vector()) == pytest.approx(0.25)


def test_spatial_variance_is_sector_weighted():
    probs = np.zeros(16)
    probs[7] = 0.5  # mode 1 alone
    probs[3] = 0.5  # modes 1 and 2
    assert spatial_variance_from_probabilities(probs) == pytest.approx(0.5 * 0.0 + 0.5 * 0.25)
    with pytest.raises(DomainError):
        spatial_variance(InitialState([]).vector())


def test_recorder_rejects_unknown_observable():
    with pytest.raises(UsageError):
        ObservableRecorder(4, ("n1", "parity"))
    with pytest.raises(UsageError):
        ObservableRecorder(4, ("energy",))


def test_ideal_evolution_conserves(hamiltonian):
    trajectory = evolve_ideal(hamiltonian, InitialState([1, 2]), 5.0, 50)
    assert trajectory.backend == "ideal_exact"
    assert len(trajectory) == 51
    assert np.allclose(trajectory["N"], 2.0, atol=1e-12)
    assert np.allclose(trajectory["energy"], trajectory["energy"][0], atol=1e-10)
    assert trajectory["n1"][0] == pytest.approx(1.0)
    assert trajectory["n1"].std() > 1e-3


def test_ideal_evolution_independent_of_slicing(hamiltonian):
    coarse = evolve_ideal(hamiltonian, InitialState([1, 2]), 4.0, 20)
    fine = evolve_ideal(hamiltonian, InitialState([1, 2]), 4.0, 40)
    assert np.allclose(fine.times[::2], coarse.times)
    assert np.allclose(fine["n1"][::2], coarse["n1"], atol=1e-12)


def test_effective_without_errors_matches_ideal(hamiltonian):
    program = build_trotter_program(H_PARAMS, 2.0, 40)
    trace = derive_trace(program, ErrorRealization.zeros(40, program.n_gates))
    effective = evolve_effective(hamiltonian, trace, InitialState([1, 2]), 2.0, 40)
    ideal = evolve_ideal(hamiltonian, InitialState([1, 2]), 2.0, 40)
    for name in ("n1", "sigma2", "N"):
        assert np.allclose(effective[name], ideal[name], atol=1e-10)
    with pytest.raises(UsageError):
        evolve_effective(hamiltonian, trace, InitialState([1, 2]), 2.0, 20)


def test_faulty_close_to_effective(hamiltonian):
    program = build_trotter_program(H_PARAMS, 2.0, 40)
    realization = sample_errors(program, NoiseModel(0.025, seed=3), 0)
    trace = derive_trace(program, realization)
    faulty = evolve_faulty(program, realization, InitialState([1, 2]))
    effective = evolve_effective(hamiltonian, trace, InitialState([1, 2]), 2.0, 40)
    bound = 0.0
    for m in range(program.n_steps):
        bound += step_error(program, trace, hamiltonian, m, realization)
        assert abs(faulty["n1"][m + 1] - effective["n1"][m + 1]) <= 2 * bound + 1e-10
    assert faulty.metadata["variant"] == "cz_chain"


def test_faulty_batch_matches_single_runs():
    program = build_trotter_program(H_PARAMS, 1.0, 10, "iswap_chain")
    noise = NoiseModel(0.05, seed=11)
    realizations = [sample_errors(program, noise, run_id) for run_id in range(3)]
    values, states = evolve_faulty_batch(program, np.stack([r.delta_phi for r in realizations]),
                                         InitialState([1, 2]), keep_states=True)
    assert states.shape == (3, 11, 16)
    for b, realization in enumerate(realizations):
        single = evolve_faulty(program, realization, InitialState([1, 2]))
        for name in ("n1", "sigma2", "N"):
            assert np.allclose(values[name][b], single[name], atol=1e-12)
    with pytest.raises(UsageError):
        evolve_faulty_batch(program, np.zeros((3, 9, program.n_gates)), InitialState([1, 2]))


def test_particle_number_by_variant():
    psi0 = InitialState([1, 2])
    for variant, conserving in (("cz_chain", True), ("iswap_chain", True), ("cnot_chain", False)):
        program = build_trotter_program(H_PARAMS, 1.0, 20, variant)
        trajectory = evolve_faulty(program, sample_errors(program, NoiseModel(0.05, seed=2), 0), psi0)
        drift = np.abs(trajectory["N"] - 2.0).max()
        if conserving:
            assert drift < 1e-10, variant
        else:
            assert drift > 1e-6, variant


def test_trajectory_outputs(tmp_path, hamiltonian):
    trajectory = evolve_ideal(hamiltonian, InitialState([1, 2]), 1.0, 10, metadata={"run_id": 0})
    path = trajectory.to_csv(tmp_path / "ideal.csv")
    assert path.read_text().splitlines()[0] == "t,n1,sigma2,N,energy"
    table = np.loadtxt(path, delimiter=",", skiprows=1)
    assert table.shape == (11, 5)
    assert np.allclose(table[:, 1], trajectory["n1"])
    written = json.loads(trajectory.to_json(tmp_path / "ideal.json").read_text())
    assert written["backend"] == "ideal_exact" and written["metadata"] == {"run_id": 0}
    with pytest.raises(UsageError):
        Trajectory(np.arange(3), {"n1": np.zeros(4)}, "ideal_exact")


if __name__ == '__main__':
    test_initial_state_ordering_sign()
    test_spatial_variance_values()
