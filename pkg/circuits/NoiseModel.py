import logging
from dataclasses import dataclass

import numpy as np

from utils.errors import UsageError

logger = logging.getLogger(__name__)

TEMPORAL_MODES = ("per_step_iid", "quasi_static")


@dataclass(frozen=True)
class NoiseModel:
    """
    Normally distributed over-rotations with zero mean.

    ``std_dev`` is the standard deviation of the angle in radians. Draws for
    run ``run_id`` come from the stream SeedSequence(seed, spawn_key=(run_id,)),
    filled in (step, gate) order, so a run is reproducible on its own.
    """
    std_dev: float = 0.0
    temporal_mode: str = "per_step_iid"
    seed: int = 0

    def __post_init__(self):
        if self.std_dev < 0:
            raise UsageError("Noise standard deviation must be non-negative, got {}".format(self.std_dev))
        if self.temporal_mode not in TEMPORAL_MODES:
            raise UsageError("Unknown temporal mode {!r}, expected one of {}".format(
                self.temporal_mode, TEMPORAL_MODES))
        if not 0 <= self.seed < 2 ** 64:
            raise UsageError("Seed must be a 64-bit unsigned integer, got {}".format(self.seed))

    def generator(self, run_id: int = 0) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence(self.seed, spawn_key=(run_id,)))


@dataclass(frozen=True, eq=False)
class ErrorRealization:
    """Over-rotation angles delta_phi[step, gate] in radians for one run."""
    delta_phi: np.ndarray
    run_id: int = 0

    def __post_init__(self):
        if self.delta_phi.ndim != 2:
            raise UsageError("Expected a (steps, gates) array, got shape {}".format(self.delta_phi.shape))

    @classmethod
    def zeros(cls, n_steps: int, n_gates: int):
        return cls(np.zeros((n_steps, n_gates)))

    @classmethod
    def constant(cls, n_steps: int, angles):
        """The same angles in every step."""
        angles = np.asarray(angles, dtype=float)
        return cls(np.tile(angles, (n_steps, 1)))

    @property
    def n_steps(self):
        return self.delta_phi.shape[0]

    @property
    def n_gates(self):
        return self.delta_phi.shape[1]

    @property
    def is_quasi_static(self) -> bool:
        return bool(np.all(self.delta_phi == self.delta_phi[:1]))

    def __getitem__(self, index):
        return self.delta_phi[index]

    def step(self, m: int) -> np.ndarray:
        return self.delta_phi[m]


def sample_errors(program, noise: NoiseModel, run_id: int = 0) -> ErrorRealization:
    """
    Draw the over-rotations of one run of ``program``.

    Both temporal modes read the same stream: per_step_iid fills a
    (n_steps, n_gates) block, quasi_static draws the first row and repeats it.
    Gates that are not noisy get zero.
    """
    mask = np.array([gate.noisy for gate in program.step_gates], dtype=float)
    rows = 1 if noise.temporal_mode == "quasi_static" else program.n_steps
    if noise.std_dev == 0:
        draws = np.zeros((rows, program.n_gates))
    else:
        draws = noise.generator(run_id).normal(0.0, noise.std_dev, size=(rows, program.n_gates))
    draws = draws * mask
    if rows == 1:
        draws = np.repeat(draws, program.n_steps, axis=0)
    logger.debug("Sampled %s over-rotations for run %d (std %.3g)", noise.temporal_mode, run_id, noise.std_dev)
    return ErrorRealization(draws, run_id)
