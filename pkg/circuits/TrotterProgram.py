"""
Trotter step assembly for the two-site spin-flip Hubbard model and the
nearest-neighbour gate chains that carry a Jordan-Wigner string.
"""
import json
import logging
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple

import numpy as np
import torch

from operators.dense import DTYPE, DenseOperator
from utils.errors import UsageError
from .Gate import Gate, gate_cnot, gate_cz, gate_hopping, gate_interaction, gate_iswap
from .NoiseModel import ErrorRealization, NoiseModel

logger = logging.getLogger(__name__)

VARIANTS = ("cz_chain", "cnot_chain", "iswap_chain")
NORM_TOLERANCE = 1e-10


def _string_hopping_block(variant: str, t2: float, step_duration: float, n_qubits: int) -> List[Gate]:
    """
    Gates for -t2 (c1^dagger c4 + h.c.), the hopping whose image carries Z2 Z3.

    Every variant sandwiches a plain t2 gate on (1, 4) between two copies of
    an operator equal to CZ(1,2) CZ(1,3) up to factors commuting with it.
    """
    t2_gate = gate_hopping(1, 4, t2, step_duration, "t2", n_qubits)
    if variant == "cz_chain":
        string = [gate_cz(1, 2, n_qubits), gate_cz(1, 3, n_qubits)]
        return string + [t2_gate] + list(reversed(string))
    if variant == "iswap_chain":
        # +iSWAP moves the CZ target from qubit 2 to 3, -iSWAP moves it back
        transport = [gate_cz(1, 2, n_qubits), gate_iswap(2, 3, 1, n_qubits),
                     gate_cz(1, 2, n_qubits), gate_iswap(2, 3, -1, n_qubits)]
        closing = [gate_iswap(2, 3, 1, n_qubits), gate_cz(1, 2, n_qubits),
                   gate_iswap(2, 3, -1, n_qubits), gate_cz(1, 2, n_qubits)]
        return transport + [t2_gate] + closing
    if variant == "cnot_chain":
        # CNOT(3,2) CZ(2,1) CNOT(3,2) = CZ(1,2) CZ(1,3) Z2 Z3
        string = [gate_cnot(3, 2, n_qubits), gate_cz(2, 1, n_qubits), gate_cnot(3, 2, n_qubits)]
        return string + [t2_gate] + string
    raise UsageError("Unknown variant {!r}, expected one of {}".format(variant, VARIANTS))


def build_trotter_step(h_params: Tuple[float, float, float], step_angle_scale: float,
                       variant: str = "cz_chain") -> List[Gate]:
    """
    One Trotter step in time order: U gates, t1 gates, the t2 gate on (2, 3),
    then the block for the string hopping between 1 and 4. Terms with zero
    amplitude are left out.
    :param h_params: (U, t1, t2) in units of g
    :param step_angle_scale: tau / n in units of 1/g
    :param variant: cz_chain, cnot_chain or iswap_chain
    """
    if variant not in VARIANTS:
        raise UsageError("Unknown variant {!r}, expected one of {}".format(variant, VARIANTS))
    U, t1, t2 = h_params
    n_qubits = 4
    gates = []
    if U != 0:
        gates += [gate_interaction(1, 4, U, step_angle_scale, n_qubits),
                  gate_interaction(2, 3, U, step_angle_scale, n_qubits)]
    if t1 != 0:
        gates += [gate_hopping(1, 2, t1, step_angle_scale, "t1", n_qubits),
                  gate_hopping(3, 4, t1, step_angle_scale, "t1", n_qubits)]
    if t2 != 0:
        gates.append(gate_hopping(2, 3, t2, step_angle_scale, "t2", n_qubits))
        gates += _string_hopping_block(variant, t2, step_angle_scale, n_qubits)
    return gates


def cnot_chain_gates(m: int) -> List[Gate]:
    """CNOT(m-1, m), CNOT(m-2, m-1), ..., CNOT(1, 2) in time order on m qubits."""
    if m < 2:
        raise UsageError("A chain needs at least two qubits, got {}".format(m))
    return [gate_cnot(j, j + 1, m) for j in range(m - 1, 0, -1)]


def iswap_chain_gates(m: int) -> List[Gate]:
    """iSWAP(m-1, m), iSWAP(m-2, m-1), ..., iSWAP(1, 2) in time order on m qubits."""
    if m < 2:
        raise UsageError("A chain needs at least two qubits, got {}".format(m))
    return [gate_iswap(j, j + 1, 1, m) for j in range(m - 1, 0, -1)]


def sequence_unitary(gates: Sequence[Gate], delta_phi=None) -> DenseOperator:
    """Product U_K ... U_1 of gates given in time order."""
    if not gates:
        raise UsageError("Empty gate sequence")
    if delta_phi is None:
        delta_phi = np.zeros(len(gates))
    result = torch.eye(2 ** gates[0].n_qubits, dtype=DTYPE)
    for gate, delta in zip(gates, delta_phi):
        result = gate.unitary(delta).matrix @ result
    return DenseOperator(result, gates[0].n_qubits)


@dataclass(frozen=True, eq=False)
class TrotterProgram:
    step_gates: Tuple[Gate, ...]
    n_steps: int
    total_time: float
    variant: str
    parameters: Tuple[float, float, float] = (1.0, 1.0, 1.0)

    def __post_init__(self):
        if self.n_steps <= 0:
            raise UsageError("Number of Trotter steps must be positive, got {}".format(self.n_steps))
        if self.total_time <= 0:
            raise UsageError("Total time must be positive, got {}".format(self.total_time))
        if self.variant not in VARIANTS:
            raise UsageError("Unknown variant {!r}, expected one of {}".format(self.variant, VARIANTS))
        object.__setattr__(self, "step_gates", tuple(self.step_gates))

    @property
    def n_gates(self) -> int:
        return len(self.step_gates)

    @property
    def n_qubits(self) -> int:
        return self.step_gates[0].n_qubits if self.step_gates else 4

    @property
    def step_duration(self) -> float:
        return self.total_time / self.n_steps

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.n_steps + 1) * self.step_duration

    def step_unitary(self, delta_phi=None) -> DenseOperator:
        if not self.step_gates:
            return DenseOperator(torch.eye(2 ** self.n_qubits, dtype=DTYPE), self.n_qubits)
        return sequence_unitary(self.step_gates, delta_phi)

    def to_dict(self, noise: NoiseModel = None) -> dict:
        U, t1, t2 = self.parameters
        description = {"variant": self.variant, "parameters": {"U": U, "t1": t1, "t2": t2},
                       "n_steps": self.n_steps, "total_time": self.total_time,
                       "gates": [gate.to_dict() for gate in self.step_gates]}
        if noise is not None:
            description["noise"] = {"std_dev": noise.std_dev, "temporal_mode": noise.temporal_mode,
                                    "seed": noise.seed}
        return description

    def to_json(self, noise: NoiseModel = None) -> str:
        return json.dumps(self.to_dict(noise), indent=2)

    @classmethod
    def from_dict(cls, description: dict) -> "TrotterProgram":
        try:
            p = description["parameters"]
            return build_trotter_program((p["U"], p["t1"], p["t2"]), description["total_time"],
                                         description["n_steps"], description["variant"])
        except KeyError as e:
            raise UsageError("Program description lacks field {}".format(e))


def build_trotter_program(h_params, total_time: float, n_steps: int, variant: str = "cz_chain") -> TrotterProgram:
    gates = build_trotter_step(h_params, total_time / n_steps, variant)
    return TrotterProgram(tuple(gates), n_steps, total_time, variant, tuple(h_params))


def iterate_states(program: TrotterProgram, delta_phi: np.ndarray, states: torch.Tensor) -> Iterator[torch.Tensor]:
    """
    Run the program on a batch of states, yielding the batch after every step.
    :param delta_phi: (batch, n_steps, n_gates) over-rotations
    :param states: (batch, 2^n) initial states
    """
    delta = torch.as_tensor(delta_phi, dtype=torch.float64)
    for m in range(program.n_steps):
        for g, gate in enumerate(program.step_gates):
            states = gate.apply(states, delta[:, m, g])
        yield states


def apply_program(program: TrotterProgram, realization: ErrorRealization, initial_state) -> torch.Tensor:
    """
    Apply every gate as e^{i (angle + delta_phi) A} and record the state after each step.
    :return: (n_steps + 1, 2^n) tensor with the initial state first
    """
    state = torch.as_tensor(initial_state, dtype=DTYPE)
    if state.shape != (2 ** program.n_qubits,):
        raise UsageError("Initial state must have dimension {}, got {}".format(
            2 ** program.n_qubits, tuple(state.shape)))
    norm = float(torch.linalg.vector_norm(state))
    if abs(norm - 1) > NORM_TOLERANCE:
        raise UsageError("Initial state is not normalized (norm {:.12g})".format(norm))
    if realization.delta_phi.shape != (program.n_steps, program.n_gates):
        raise UsageError("Realization shape {} does not match program ({}, {})".format(
            realization.delta_phi.shape, program.n_steps, program.n_gates))
    trajectory = [state]
    for states in iterate_states(program, realization.delta_phi[None], state[None]):
        trajectory.append(states[0])
    return torch.stack(trajectory)
