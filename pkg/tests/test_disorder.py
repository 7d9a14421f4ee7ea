import json

import numpy as np
import pytest

from circuits import (ErrorRealization, NoiseModel, VARIANTS, build_trotter_program, cnot_chain_gates, gate_cz,
                      gate_hopping, gate_interaction, iswap_chain_gates, sample_errors, sequence_unitary)
from disorder import (classify, commutes_with_particle_number, derive_case1, derive_case2, derive_trace,
                      error_templates, fit_step_error_scaling, hubbard_cz_chain_templates)
from fermions import number_operator
from operators import OperatorSum, conjugate_dense, from_dense, spectral_norm
from utils.errors import UsageError


def test_hamiltonian_term_errors():
    hopping = gate_hopping(1, 2, 1.0, 0.05)
    assert derive_case1(hopping, 0.01, 20.0).equals(OperatorSum.hopping(4, 0, 1) * -0.2)
    interaction = gate_interaction(1, 4, 1.0, 0.05)
    expected = number_operator([1], 4) * number_operator([4], 4) * 0.2
    assert derive_case1(interaction, 0.01, 20.0).equals(expected)
    with pytest.raises(UsageError):
        derive_case1(gate_cz(1, 2), 0.01, 20.0)


def test_cz_chain_templates_closed_form():
    program = build_trotter_program((1.0, 1.0, 1.0), 1.0, 20, "cz_chain")
    derived = error_templates(program.step_gates)
    closed = hubbard_cz_chain_templates()
    assert len(derived) == len(closed)
    for k, (a, b) in enumerate(zip(derived, closed)):
        assert a.equals(b), k


def test_disorder_is_linear_in_step_count():
    angles = np.linspace(-0.02, 0.02, 10)
    coarse = build_trotter_program((1.0, 1.0, 1.0), 1.0, 20)
    fine = build_trotter_program((1.0, 1.0, 1.0), 1.0, 40)
    coarse_step = derive_trace(coarse, ErrorRealization.constant(20, angles)).step(0)
    fine_step = derive_trace(fine, ErrorRealization.constant(40, angles)).step(0)
    assert fine_step.equals(coarse_step * 2.0)


def _nested_sigma(m):
    sigma = number_operator([1], m)
    for j in range(2, m):
        difference = number_operator([j], m) - sigma
        sigma = difference * difference
    return sigma


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_cnot_chain_nested_string(m):
    gates = cnot_chain_gates(m)
    template = error_templates(gates)[0]
    x_last = OperatorSum.single(m, m - 1, "X")
    expected = -((OperatorSum.identity(m) - x_last) * _nested_sigma(m))
    assert template.equals(expected, atol=1e-12)
    if m > 2:
        dense = from_dense(conjugate_dense(sequence_unitary(gates[1:]), gates[0].generator), m)
        assert template.equals(-dense, atol=1e-12)
    assert not classify(template).conserves_particle_number


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_iswap_chain_gives_hopping(m):
    gates = iswap_chain_gates(m)
    template = error_templates(gates)[0]
    classification = classify(template)
    assert classification.conserves_particle_number
    assert classification.n_monomials == 2
    for label in classification.physical_part.terms:
        assert label[0] != "I" and label[m - 1] != "I"
        assert set(label[1:m - 1]) <= {"I"}
    if m > 2:
        dense = from_dense(conjugate_dense(sequence_unitary(gates[1:]), gates[0].generator), m)
        assert template.equals(-dense, atol=1e-12)


def test_derive_case2_sums_contributions():
    gates = cnot_chain_gates(4)
    angles = [0.01, -0.02, 0.005]
    total = derive_case2(list(zip(gates, angles)), n_over_tau=10.0)
    expected = OperatorSum.zero(4)
    for template, delta in zip(error_templates(gates), angles):
        expected = expected + template * (10.0 * delta)
    assert total.equals(expected)
    with pytest.raises(UsageError):
        derive_case2([])


def test_particle_number_conservation_by_variant():
    for variant in VARIANTS:
        program = build_trotter_program((1.0, 1.0, 1.0), 1.0, 20, variant)
        realization = sample_errors(program, NoiseModel(0.025, seed=5), 0)
        step = derive_trace(program, realization).step(0)
        assert step.is_hermitian()
        conserving = variant != "cnot_chain"
        assert commutes_with_particle_number(step) == conserving, variant
        assert classify(step).conserves_particle_number == conserving, variant


def test_trace_provenance_and_bounds(tmp_path):
    program = build_trotter_program((1.0, 1.0, 1.0), 1.0, 4)
    delta = np.zeros((4, program.n_gates))
    delta[1, 7] = 0.01
    trace = derive_trace(program, ErrorRealization(delta))
    assert len(trace) == 4
    assert trace.step(0).is_zero()
    entries = trace.provenance(1)
    assert [entry["gate_index"] for entry in entries] == [7]
    assert entries[0]["label"] == "t2" and entries[0]["qubits"] == [1, 4]
    assert spectral_norm(trace.step(1)) <= trace.norm_bound(1) + 1e-12
    dense = trace.dense_steps(1)[0]
    assert from_dense(dense, 4).equals(trace.step(1))
    written = json.loads(trace.to_json(tmp_path / "trace.json").read_text())
    assert written["steps"][1]["terms"][0]["label"] == "t2"
    with pytest.raises(UsageError):
        derive_trace(program, ErrorRealization.zeros(3, program.n_gates))


@pytest.mark.parametrize("variant", VARIANTS)
def test_step_error_is_second_order(variant):
    scaling = fit_step_error_scaling(variant=variant, n_realizations=20)
    assert np.all(scaling["ratios"] > 3.5)


if __name__ == '__main__':
    test_cz_chain_templates_closed_form()
    test_cnot_chain_nested_string(4)
    test_iswap_chain_gives_hopping(4)
