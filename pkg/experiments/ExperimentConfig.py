"""
Experiment configuration.

Files are YAML (JSON loads through the same path). Fields may also be given
as ``field: {value: x}`` and a run manifest is accepted as a config, so a run
can be repeated from its own output directory.
"""
import dataclasses
import json
import logging
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

import yaml

from circuits import TEMPORAL_MODES, VARIANTS
from evolution import BACKENDS, R_VECTORS, ObservableRecorder
from utils.errors import UsageError

logger = logging.getLogger(__name__)

# relative tolerance when checking that total_time / step_size is an integer
STEP_COUNT_TOLERANCE = 1e-9


class RegimeWarning(UserWarning):
    """Over-rotations too large for the first-order disorder picture."""


@dataclass
class ExperimentConfig:
    name: str = "experiment"
    U: float = 1.0
    t1: float = 1.0
    t2: float = 1.0
    variant: str = "cz_chain"
    total_time: float = 1000.0
    step_size: float = 0.05
    noise_std: float = 0.025
    temporal_mode: str = "per_step_iid"
    seed: int = 0
    ensemble_size: int = 1
    initial_state: List[int] = field(default_factory=lambda: [1, 2])
    observables: List[str] = field(default_factory=lambda: ["n1", "sigma2", "N"])
    backends: List[str] = field(default_factory=lambda: list(BACKENDS))
    spectrum_observable: str = "n1"
    r_vector: Union[str, List[float]] = "default"
    window_sigma: Optional[float] = None
    batch_size: int = 25
    output_dir: str = "results/experiment"

    def __post_init__(self):
        self.check()

    @property
    def h_params(self) -> Tuple[float, float, float]:
        return self.U, self.t1, self.t2

    @property
    def n_steps(self) -> int:
        ratio = self.total_time / self.step_size
        n_steps = int(round(ratio))
        if n_steps < 1 or abs(ratio - n_steps) > STEP_COUNT_TOLERANCE * max(1.0, ratio):
            raise UsageError("total_time / step_size = {} / {} is not a positive integer".format(
                self.total_time, self.step_size))
        return n_steps

    def check(self):
        """Field-level validation, raising UsageError naming the field."""
        if self.variant not in VARIANTS:
            raise UsageError("variant: {!r} is not one of {}".format(self.variant, VARIANTS))
        if self.temporal_mode not in TEMPORAL_MODES:
            raise UsageError("temporal_mode: {!r} is not one of {}".format(self.temporal_mode, TEMPORAL_MODES))
        if self.step_size <= 0:
            raise UsageError("step_size: must be positive, got {}".format(self.step_size))
        if self.total_time <= 0:
            raise UsageError("total_time: must be positive, got {}".format(self.total_time))
        if self.noise_std < 0:
            raise UsageError("noise_std: must be non-negative, got {}".format(self.noise_std))
        if self.ensemble_size < 1:
            raise UsageError("ensemble_size: must be at least 1, got {}".format(self.ensemble_size))
        if self.batch_size < 1:
            raise UsageError("batch_size: must be at least 1, got {}".format(self.batch_size))
        unknown = set(self.observables) - set(ObservableRecorder.KNOWN)
        if unknown:
            raise UsageError("observables: unknown {}".format(sorted(unknown)))
        unknown = set(self.backends) - set(BACKENDS)
        if unknown or not self.backends:
            raise UsageError("backends: expected a non-empty subset of {}, got {}".format(BACKENDS, self.backends))
        if self.spectrum_observable not in self.observables:
            raise UsageError("spectrum_observable: {!r} is not recorded".format(self.spectrum_observable))
        if isinstance(self.r_vector, str) and self.r_vector not in R_VECTORS:
            raise UsageError("r_vector: {!r} is not one of {}".format(self.r_vector, sorted(R_VECTORS)))
        if self.window_sigma is not None and self.window_sigma <= 0:
            raise UsageError("window_sigma: must be positive, got {}".format(self.window_sigma))
        self.n_steps

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def replace(self, **overrides) -> "ExperimentConfig":
        """Copy with every override that is not None applied."""
        return dataclasses.replace(self, **{k: v for k, v in overrides.items() if v is not None})

    @classmethod
    def from_dict(cls, values: dict) -> "ExperimentConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise UsageError("Unknown config fields: {}".format(", ".join(sorted(unknown))))
        try:
            return cls(**values)
        except TypeError as e:
            raise UsageError("Invalid config: {}".format(e))


def _unwrap(values: dict) -> dict:
    return {k: v["value"] if isinstance(v, dict) and set(v) == {"value"} else v for k, v in values.items()}


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    with open(path, "r") as f:
        try:
            values = yaml.load(f, Loader=yaml.FullLoader)
        except yaml.YAMLError as e:
            raise UsageError("Cannot parse config {}: {}".format(path, e))
    if not isinstance(values, dict):
        raise UsageError("Config {} does not hold a mapping".format(path))
    # run manifests carry the config under "config"
    if "config" in values and isinstance(values["config"], dict):
        values = values["config"]
    config = ExperimentConfig.from_dict(_unwrap(values))
    logger.debug("Loaded config %s from %s", config.name, path)
    return config


def save_config(config: ExperimentConfig, path):
    with open(path, "w") as f:
        json.dump(config.to_dict(), f, indent=2)
    return Path(path)


def validate(config: ExperimentConfig) -> List[str]:
    """
    Regime diagnostics. A step count that is not an integer is a hard error,
    everything else is reported and returned.
    """
    config.check()
    diagnostics = []
    if config.noise_std > config.step_size:
        message = ("noise_std {} exceeds the step size g tau/n = {}; over-rotations should stay "
                   "below the rotation angles of the Hamiltonian gates".format(config.noise_std, config.step_size))
        warnings.warn(message, RegimeWarning)
        logger.warning(message)
        diagnostics.append(message)
    return diagnostics
