import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional

import numpy as np
import torch

from utils.errors import UsageError

BACKENDS = ("faulty_circuit", "effective_hamiltonian", "ideal_exact")


@dataclass(eq=False)
class Trajectory:
    """
    Observables at the time slices m tau/n, m = 0..n, of one evolution.
    """
    times: np.ndarray
    observables: Dict[str, np.ndarray]
    backend: str
    metadata: dict = field(default_factory=dict)
    states: Optional[torch.Tensor] = None

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        for name, values in self.observables.items():
            values = np.asarray(values)
            if values.shape != self.times.shape:
                raise UsageError("Observable {} has shape {}, expected {}".format(
                    name, values.shape, self.times.shape))
            self.observables[name] = values

    def __len__(self):
        return len(self.times)

    def __getitem__(self, name: str) -> np.ndarray:
        return self.observables[name]

    @property
    def n_steps(self) -> int:
        return len(self.times) - 1

    def to_csv(self, path):
        names = list(self.observables)
        table = np.column_stack([self.times] + [self.observables[n] for n in names])
        np.savetxt(path, table, delimiter=",", header=",".join(["t"] + names), comments="", fmt="%.12e")
        return Path(path)

    def to_dict(self) -> dict:
        return {"backend": self.backend, "metadata": self.metadata, "times": self.times.tolist(),
                "observables": {k: v.tolist() for k, v in self.observables.items()}}

    def to_json(self, path):
        with open(path, "w") as f:
            json.dump(self.to_dict(), f, indent=2)
        return Path(path)
