"""
Fidelity of over-rotated gates and the worst-case gate budget.

For a gate e^{i phi A} whose generator has largest and smallest eigenvalues
+1 and -1, an over-rotation delta_phi has minimal fidelity cos(delta_phi),
reached on (|lambda_max> + |lambda_min>)/sqrt(2). Averaged over normally
distributed angles with standard deviation s this is 1 - s^2/2 to leading
order, and the disorder stays below the model energy scale for at most
1/sqrt(2(1 - F)) faulty gates.
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from circuits import Gate
from operators import OperatorSum, hermitian_eigh, to_dense
from utils.errors import UsageError

logger = logging.getLogger(__name__)

UNIT_SPECTRUM_TOLERANCE = 1e-9


@dataclass(frozen=True)
class FidelityReport:
    delta_phi: float
    f_min: float
    bures_angle: float
    averaged: bool = False

    @property
    def percent(self) -> float:
        return 100 * self.f_min


def fidelity_from_overrotation(delta_phi: float) -> FidelityReport:
    """
    >>> round(fidelity_from_overrotation(0.025).percent, 3)
    99.969
    """
    if abs(delta_phi) > math.pi / 2:
        raise UsageError("Over-rotation {} outside [-pi/2, pi/2]".format(delta_phi))
    return FidelityReport(float(delta_phi), math.cos(delta_phi), abs(float(delta_phi)))


def averaged_fidelity(std_dev: float) -> float:
    """Minimal fidelity averaged over angles N(0, std_dev^2), to second order."""
    if std_dev < 0:
        raise UsageError("Standard deviation must be non-negative, got {}".format(std_dev))
    return 1 - std_dev ** 2 / 2


def overrotation_from_fidelity(fidelity: float, averaged: bool = True) -> float:
    """
    Angle scale that gives the fidelity: sqrt(2 (1 - F)) for the average, arccos(F) for a single gate.
    """
    if not 0 < fidelity <= 1:
        raise UsageError("Fidelity must lie in (0, 1], got {}".format(fidelity))
    if averaged:
        return math.sqrt(2 * (1 - fidelity))
    return math.acos(fidelity)


def sampled_average_fidelity(std_dev: float, n_samples: int = 1_000_000, seed: int = 0) -> float:
    """Monte Carlo mean of cos(delta_phi) over normal draws."""
    rng = np.random.default_rng(seed)
    return float(np.mean(np.cos(rng.normal(0.0, std_dev, size=n_samples))))


@dataclass(frozen=True)
class BruteForceFidelity:
    value: float
    analytic: float
    sampled: float
    spans_unit_spectrum: bool


def min_fidelity_bruteforce(gate: Union[Gate, OperatorSum], delta_phi: float, n_samples: int = 10_000,
                            seed: int = 0) -> BruteForceFidelity:
    """
    Minimum of |<psi| e^{i delta_phi A} |psi>| over Haar-random states and over
    (|lambda_max> + |lambda_min>)/sqrt(2).

    Generators whose spectrum does not reach both +1 and -1 are not rescaled;
    their minimum is reported as is and ``spans_unit_spectrum`` is False.
    """
    if isinstance(gate, Gate):
        eigenvalues, _ = gate.spectrum
    else:
        eigenvalues, _ = hermitian_eigh(to_dense(gate).matrix)
    eigenvalues = eigenvalues.numpy()
    phases = np.exp(1j * delta_phi * eigenvalues)
    # only the weights |<lambda_i|psi>|^2 matter, and those of a Haar state
    # come from normalized complex Gaussians in any basis
    rng = np.random.default_rng(seed)
    draws = rng.normal(size=(n_samples, len(eigenvalues))) + 1j * rng.normal(size=(n_samples, len(eigenvalues)))
    weights = np.abs(draws) ** 2
    weights /= weights.sum(axis=1, keepdims=True)
    sampled = float(np.min(np.abs(weights @ phases)))
    analytic = float(abs(phases[0] + phases[-1]) / 2)
    spans = bool(abs(eigenvalues[-1] - 1) < UNIT_SPECTRUM_TOLERANCE
                 and abs(eigenvalues[0] + 1) < UNIT_SPECTRUM_TOLERANCE)
    if not spans:
        logger.info("Generator spectrum [%.4g, %.4g] does not span [-1, 1]", eigenvalues[0], eigenvalues[-1])
    return BruteForceFidelity(min(sampled, analytic), analytic, sampled, spans)


@dataclass(frozen=True)
class GateBudget:
    avg_fidelity: float
    gates_per_step: int
    total_bound: float
    max_steps: Optional[int]

    @property
    def unbounded(self) -> bool:
        return math.isinf(self.total_bound)


def gate_budget(avg_fidelity: float, gates_per_step: int = 1) -> GateBudget:
    """
    Worst-case number of faulty gates M n < 1/sqrt(2 (1 - F)) and steps n.

    >>> round(gate_budget(0.99).total_bound, 2)
    7.07
    >>> gate_budget(0.9999, 7).max_steps
    10
    """
    if not 0 < avg_fidelity <= 1:
        raise UsageError("Average fidelity must lie in (0, 1], got {}".format(avg_fidelity))
    if gates_per_step < 1:
        raise UsageError("Need at least one gate per step, got {}".format(gates_per_step))
    if avg_fidelity == 1:
        return GateBudget(1.0, gates_per_step, math.inf, None)
    bound = 1 / math.sqrt(2 * (1 - avg_fidelity))
    return GateBudget(avg_fidelity, gates_per_step, bound, int(math.floor(bound / gates_per_step)))
