from dataclasses import dataclass
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from evolution import Trajectory
from utils.errors import UsageError
from .spectrum import Spectrum


def mean_and_error(values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Pointwise mean over the first axis and its standard error.
    :param values: (runs, points), real or complex
    """
    values = np.asarray(values)
    mean = values.mean(axis=0)
    if values.shape[0] < 2:
        return mean, np.zeros(mean.shape)
    return mean, values.std(axis=0, ddof=1) / np.sqrt(values.shape[0])


@dataclass(eq=False)
class EnsembleAverage:
    grid: np.ndarray
    mean: Dict[str, np.ndarray]
    standard_error: Dict[str, np.ndarray]
    n_runs: int
    kind: str

    def as_trajectory(self, backend: str = "faulty_circuit", metadata: dict = None) -> Trajectory:
        if self.kind != "trajectory":
            raise UsageError("Average over spectra is not a trajectory")
        meta = {"n_runs": self.n_runs, **(metadata or {})}
        return Trajectory(self.grid, dict(self.mean), backend, meta)

    def as_spectrum(self, window_sigma: float) -> Spectrum:
        if self.kind != "spectrum":
            raise UsageError("Average over trajectories is not a spectrum")
        (name, amplitudes), = self.mean.items()
        return Spectrum(self.grid, amplitudes, window_sigma, name)


def _check_grids(grids):
    reference = grids[0]
    for grid in grids[1:]:
        if grid.shape != reference.shape or not np.allclose(grid, reference, rtol=1e-12, atol=1e-12):
            raise UsageError("Ensemble members live on different grids")
    return reference


def ensemble_average(runs: Sequence[Union[Trajectory, Spectrum]]) -> EnsembleAverage:
    """
    Pointwise mean and standard error over runs of the same kind and grid.
    """
    if not runs:
        raise UsageError("Cannot average an empty ensemble")
    if all(isinstance(r, Trajectory) for r in runs):
        grid = _check_grids([r.times for r in runs])
        names = list(runs[0].observables)
        if any(list(r.observables) != names for r in runs):
            raise UsageError("Ensemble members record different observables")
        stats = {name: mean_and_error(np.stack([r[name] for r in runs])) for name in names}
        kind = "trajectory"
    elif all(isinstance(r, Spectrum) for r in runs):
        grid = _check_grids([r.frequencies for r in runs])
        name = runs[0].observable
        stats = {name: mean_and_error(np.stack([r.amplitudes for r in runs]))}
        kind = "spectrum"
    else:
        raise UsageError("Ensemble must hold only trajectories or only spectra")
    return EnsembleAverage(grid, {k: v[0] for k, v in stats.items()}, {k: v[1] for k, v in stats.items()},
                           len(runs), kind)
