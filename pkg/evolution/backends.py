"""
Time evolution backends on dense statevectors.

faulty_circuit        the Trotter circuit with every gate over-rotated
effective_hamiltonian e^{-i (H + delta H_m) tau/n} for step m
ideal_exact           e^{-i H t} from a single eigen decomposition of H

Every backend works on a batch of runs at once and records its observables
at t = 0 and after every Trotter step.
"""
import logging
from typing import Dict, Iterator, Optional, Sequence, Tuple

import numpy as np
import torch

from circuits import ErrorRealization, TrotterProgram, iterate_states
from disorder import DisorderTrace
from operators import OperatorSum, exp_hermitian, hermitian_eigh, to_dense
from operators.dense import DTYPE
from utils.errors import DomainError, UsageError
from .Trajectory import Trajectory
from .observables import InitialState, ObservableRecorder, check_state

logger = logging.getLogger(__name__)

DEFAULT_OBSERVABLES = ("n1", "sigma2", "N")


def initial_vector(psi0, n_qubits: int) -> torch.Tensor:
    if isinstance(psi0, InitialState):
        if psi0.n_modes != n_qubits:
            raise UsageError("Initial state has {} modes, program acts on {} qubits".format(psi0.n_modes, n_qubits))
        psi0 = psi0.vector()
    return check_state(psi0, n_qubits)


def _record(recorder: ObservableRecorder, initial: torch.Tensor, steps: Iterator[torch.Tensor], n_steps: int,
            keep_states: bool) -> Tuple[Dict[str, np.ndarray], Optional[torch.Tensor]]:
    batch = initial.shape[0]
    values = {name: np.empty((batch, n_steps + 1)) for name in recorder.names}
    kept = [initial] if keep_states else None
    for name, value in recorder(initial).items():
        values[name][:, 0] = value
    for m, states in enumerate(steps, start=1):
        for name, value in recorder(states).items():
            values[name][:, m] = value
        if keep_states:
            kept.append(states)
    return values, (torch.stack(kept, dim=1) if keep_states else None)


def _check_hamiltonian(h: OperatorSum, n_qubits: int) -> torch.Tensor:
    if not h.is_hermitian():
        raise DomainError("Hamiltonian is not Hermitian")
    return to_dense(h, n_qubits).matrix


def evolve_faulty_batch(program: TrotterProgram, delta_phi: np.ndarray, psi0, observables=DEFAULT_OBSERVABLES,
                        r_vector="default", hamiltonian: OperatorSum = None, keep_states: bool = False):
    """
    Run the faulty circuit for a batch of realizations.
    :param delta_phi: (batch, n_steps, n_gates) over-rotations
    :return: (name -> (batch, n_steps + 1) values, (batch, n_steps + 1, 2^n) states or None)
    """
    delta_phi = np.asarray(delta_phi, dtype=float)
    if delta_phi.ndim != 3 or delta_phi.shape[1:] != (program.n_steps, program.n_gates):
        raise UsageError("Over-rotations of shape {} do not match program ({}, {})".format(
            delta_phi.shape, program.n_steps, program.n_gates))
    recorder = ObservableRecorder(program.n_qubits, observables, r_vector, hamiltonian)
    initial = initial_vector(psi0, program.n_qubits).expand(delta_phi.shape[0], -1).clone()
    return _record(recorder, initial, iterate_states(program, delta_phi, initial), program.n_steps, keep_states)


def evolve_faulty(program: TrotterProgram, realization: ErrorRealization, psi0, observables=DEFAULT_OBSERVABLES,
                  r_vector="default", hamiltonian: OperatorSum = None, keep_states: bool = False,
                  metadata: dict = None) -> Trajectory:
    if realization.delta_phi.shape != (program.n_steps, program.n_gates):
        raise UsageError("Realization shape {} does not match program ({}, {})".format(
            realization.delta_phi.shape, program.n_steps, program.n_gates))
    values, states = evolve_faulty_batch(program, realization.delta_phi[None], psi0, observables, r_vector,
                                         hamiltonian, keep_states)
    meta = {"variant": program.variant, "run_id": realization.run_id, **(metadata or {})}
    return Trajectory(program.times, {k: v[0] for k, v in values.items()}, "faulty_circuit", meta,
                      None if states is None else states[0])


def _effective_steps(h_matrix: torch.Tensor, trace: DisorderTrace, delta_phi: np.ndarray, dt: float,
                     states: torch.Tensor) -> Iterator[torch.Tensor]:
    n_steps = delta_phi.shape[1]
    # quasi-static runs share one propagator for all steps
    static = bool(np.all(delta_phi == delta_phi[:, :1]))
    propagators = None
    for m in range(n_steps):
        if propagators is None or not static:
            generators = h_matrix + trace.dense_steps(m, delta_phi)
            if not torch.allclose(generators, generators.conj().transpose(-2, -1), atol=1e-12):
                raise DomainError("delta H of step {} is not Hermitian".format(m))
            propagators = exp_hermitian(generators, -dt)
        states = torch.einsum("bij,bj->bi", propagators, states)
        yield states


def evolve_effective_batch(h: OperatorSum, trace: DisorderTrace, delta_phi: np.ndarray, psi0, total_time: float,
                           observables=DEFAULT_OBSERVABLES, r_vector="default", keep_states: bool = False):
    """
    Evolve under H + delta H_m for a batch of angle arrays sharing the templates of ``trace``.
    :param delta_phi: (batch, n_steps, n_gates) over-rotations
    """
    delta_phi = np.asarray(delta_phi, dtype=float)
    if delta_phi.ndim != 3 or delta_phi.shape[2] != len(trace.templates):
        raise UsageError("Over-rotations of shape {} do not match {} templates".format(
            delta_phi.shape, len(trace.templates)))
    if total_time <= 0:
        raise UsageError("Total time must be positive, got {}".format(total_time))
    n_qubits = trace.n_qubits
    h_matrix = _check_hamiltonian(h, n_qubits)
    n_steps = delta_phi.shape[1]
    recorder = ObservableRecorder(n_qubits, observables, r_vector, h)
    initial = initial_vector(psi0, n_qubits).expand(delta_phi.shape[0], -1).clone()
    steps = _effective_steps(h_matrix, trace, delta_phi, total_time / n_steps, initial)
    return _record(recorder, initial, steps, n_steps, keep_states)


def evolve_effective(h: OperatorSum, trace: DisorderTrace, psi0, total_time: float, n_steps: int,
                     observables=DEFAULT_OBSERVABLES, r_vector="default", keep_states: bool = False,
                     metadata: dict = None) -> Trajectory:
    """
    Apply e^{-i (H + delta H_m) tau/n} for every step m of the trace.
    """
    if len(trace) != n_steps:
        raise UsageError("Trace has {} steps, expected {}".format(len(trace), n_steps))
    values, states = evolve_effective_batch(h, trace, trace.delta_phi[None], psi0, total_time, observables,
                                            r_vector, keep_states)
    times = np.arange(n_steps + 1) * (total_time / n_steps)
    return Trajectory(times, {k: v[0] for k, v in values.items()}, "effective_hamiltonian", dict(metadata or {}),
                      None if states is None else states[0])


def evolve_ideal(h: OperatorSum, psi0, total_time: float, n_steps: int,
                 observables: Sequence[str] = DEFAULT_OBSERVABLES + ("energy",), r_vector="default",
                 keep_states: bool = False, metadata: dict = None) -> Trajectory:
    """
    psi(m tau/n) = V e^{-i Lambda m tau/n} V^dagger psi0 with H = V Lambda V^dagger.
    """
    if n_steps <= 0 or total_time <= 0:
        raise UsageError("Need positive n_steps and total_time, got {} and {}".format(n_steps, total_time))
    n_qubits = h.n_qubits
    h_matrix = _check_hamiltonian(h, n_qubits)
    state = initial_vector(psi0, n_qubits)
    eigenvalues, eigenvectors = hermitian_eigh(h_matrix)
    times = np.arange(n_steps + 1) * (total_time / n_steps)
    coefficients = eigenvectors.conj().T @ state
    phases = torch.exp(-1j * torch.as_tensor(times)[:, None] * eigenvalues[None, :]).to(DTYPE)
    states = (phases * coefficients) @ eigenvectors.T
    recorder = ObservableRecorder(n_qubits, observables, r_vector, h)
    values = recorder(states)
    logger.debug("Ideal evolution over %d slices", n_steps + 1)
    return Trajectory(times, values, "ideal_exact", dict(metadata or {}), states if keep_states else None)
