"""
Observables of occupation-number states.

Qubit q holds mode q + 1; |0> is occupied, and the vacuum is |1...1>.
All occupation observables are diagonal, so they are evaluated from the
basis-state probabilities.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Tuple, Union

import numpy as np
import torch

from fermions import jordan_wigner
from operators import to_dense
from operators.dense import DTYPE
from utils.errors import DomainError, UsageError

# site coordinates r_j per mode for the spread observable
R_VECTORS = {
    "default": (0.0, 1.0, 2.0, 1.0),
    # both spins of a site at the same place
    "compact": (0.0, 1.0, 1.0, 0.0),
}
NORM_TOLERANCE = 1e-10


@dataclass(frozen=True)
class InitialState:
    """
    Occupation-number state c^dagger_{k_last} ... c^dagger_{k_first} |vacuum>,
    modes created in the listed order.
    """
    occupation: Tuple[int, ...]
    n_modes: int = 4

    def __post_init__(self):
        object.__setattr__(self, "occupation", tuple(self.occupation))
        if len(set(self.occupation)) != len(self.occupation):
            raise UsageError("Mode listed twice in occupation {}".format(self.occupation))
        for mode in self.occupation:
            if not 1 <= mode <= self.n_modes:
                raise UsageError("Mode {} outside [1, {}]".format(mode, self.n_modes))

    def vector(self) -> torch.Tensor:
        dim = 2 ** self.n_modes
        state = torch.zeros(dim, dtype=DTYPE)
        state[dim - 1] = 1
        for mode in self.occupation:
            state = to_dense(jordan_wigner(mode, "create", self.n_modes)).matrix @ state
        return state


def check_state(state: torch.Tensor, n_qubits: int) -> torch.Tensor:
    state = torch.as_tensor(state, dtype=DTYPE)
    if state.shape != (2 ** n_qubits,):
        raise UsageError("State must have dimension {}, got {}".format(2 ** n_qubits, tuple(state.shape)))
    norm = float(torch.linalg.vector_norm(state))
    if abs(norm - 1) > NORM_TOLERANCE:
        raise UsageError("State is not normalized (norm {:.12g})".format(norm))
    return state


@lru_cache(maxsize=16)
def occupation_table(n_modes: int) -> np.ndarray:
    """(2^n, n) array, 1 where the mode is occupied in the basis state."""
    indices = np.arange(2 ** n_modes)[:, None]
    shifts = n_modes - 1 - np.arange(n_modes)[None, :]
    return 1.0 - ((indices >> shifts) & 1)


def resolve_r_vector(r_vector: Union[str, Sequence[float]], n_modes: int) -> np.ndarray:
    if isinstance(r_vector, str):
        if r_vector not in R_VECTORS:
            raise UsageError("Unknown r-vector {!r}, expected one of {} or a list".format(
                r_vector, sorted(R_VECTORS)))
        r_vector = R_VECTORS[r_vector]
    r = np.asarray(r_vector, dtype=float)
    if r.shape != (n_modes,):
        raise UsageError("r-vector needs {} entries, got {}".format(n_modes, r.shape))
    return r


def probabilities(states: torch.Tensor) -> np.ndarray:
    return (states.abs() ** 2).numpy()


def spatial_variance_from_probabilities(probs: np.ndarray, r_vector="default") -> np.ndarray:
    """
    sigma^2 = sum_j r_j^2 n~_j - (sum_j r_j n~_j)^2 with n~_j = <n_j> / N, taken
    inside each particle-number sector and averaged with the sector weights.
    The empty sector is left out.
    :param probs: (..., 2^n) basis-state probabilities
    """
    probs = np.asarray(probs, dtype=float)
    n_modes = int(probs.shape[-1]).bit_length() - 1
    r = resolve_r_vector(r_vector, n_modes)
    occupation = occupation_table(n_modes)
    counts = occupation.sum(axis=1)
    weighted = np.zeros(probs.shape[:-1])
    total_weight = np.zeros(probs.shape[:-1])
    for n_particles in range(1, n_modes + 1):
        in_sector = counts == n_particles
        p_sector = probs[..., in_sector].sum(axis=-1)
        mode_density = probs[..., in_sector] @ occupation[in_sector]
        safe = np.where(p_sector > 0, p_sector, 1.0)
        normalized = mode_density / (safe[..., None] * n_particles)
        variance = normalized @ (r ** 2) - (normalized @ r) ** 2
        weighted += p_sector * variance
        total_weight += p_sector
    if np.any(total_weight < 1e-12):
        raise DomainError("Spatial variance undefined for a state without particles")
    return weighted / total_weight


def spatial_variance(state: torch.Tensor, r_vector="default") -> float:
    """Spread of the particle positions for a single state."""
    return float(spatial_variance_from_probabilities(probabilities(torch.as_tensor(state))[None], r_vector)[0])


class ObservableRecorder:
    """Evaluates named observables on a batch of states."""

    KNOWN = ("n1", "sigma2", "N", "energy")

    def __init__(self, n_modes: int, names=("n1", "sigma2", "N"), r_vector="default", hamiltonian=None):
        unknown = set(names) - set(self.KNOWN)
        if unknown:
            raise UsageError("Unknown observables {}, expected a subset of {}".format(sorted(unknown), self.KNOWN))
        if "energy" in names and hamiltonian is None:
            raise UsageError("The energy observable needs a Hamiltonian")
        self.names = tuple(names)
        self.r_vector = resolve_r_vector(r_vector, n_modes)
        self._occupation = occupation_table(n_modes)
        self._hamiltonian = None if hamiltonian is None else to_dense(hamiltonian, n_modes).matrix

    def __call__(self, states: torch.Tensor) -> dict:
        """
        :param states: (batch, 2^n) states
        :return: name -> (batch,) real values
        """
        probs = probabilities(states)
        values = {}
        for name in self.names:
            if name == "n1":
                values[name] = probs @ self._occupation[:, 0]
            elif name == "N":
                values[name] = probs @ self._occupation.sum(axis=1)
            elif name == "sigma2":
                values[name] = spatial_variance_from_probabilities(probs, self.r_vector)
            else:
                values[name] = torch.einsum("bi,ij,bj->b", states.conj(), self._hamiltonian, states).real.numpy()
        return values
