import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import List, Tuple

import numpy as np
import torch

from circuits import ErrorRealization, TrotterProgram
from operators import OperatorSum, spectral_norm, to_dense
from utils.errors import DomainError, UsageError
from .derivation import error_templates


@dataclass(frozen=True, eq=False)
class DisorderTrace:
    """
    Piecewise-constant disorder: delta H_m = (n/tau) sum_k delta_phi[m, k] T_k
    for step m, where T_k is the template of gate k. The gate of every term
    is kept for provenance.
    """
    templates: Tuple[OperatorSum, ...]
    gate_labels: Tuple[str, ...]
    gate_qubits: Tuple[Tuple[int, ...], ...]
    delta_phi: np.ndarray
    n_over_tau: float

    def __post_init__(self):
        if self.delta_phi.ndim != 2 or self.delta_phi.shape[1] != len(self.templates):
            raise UsageError("Angles of shape {} do not match {} templates".format(
                self.delta_phi.shape, len(self.templates)))
        for k, template in enumerate(self.templates):
            if not template.is_hermitian():
                raise DomainError("Template of gate {} ({}) is not Hermitian".format(k, self.gate_labels[k]))

    def __len__(self):
        return self.delta_phi.shape[0]

    @property
    def n_qubits(self):
        return self.templates[0].n_qubits if self.templates else 4

    def step(self, m: int) -> OperatorSum:
        total = OperatorSum.zero(self.n_qubits)
        for template, delta in zip(self.templates, self.delta_phi[m]):
            if delta != 0:
                total = total + template * (self.n_over_tau * float(delta))
        return total

    @property
    def per_step(self) -> List[OperatorSum]:
        return [self.step(m) for m in range(len(self))]

    def provenance(self, m: int) -> List[dict]:
        """Contribution of every erroneous gate in step m."""
        entries = []
        for k, (template, delta) in enumerate(zip(self.templates, self.delta_phi[m])):
            if delta == 0:
                continue
            entries.append({"gate_index": k, "label": self.gate_labels[k], "qubits": list(self.gate_qubits[k]),
                            "delta_phi": float(delta), "operator": template * (self.n_over_tau * float(delta))})
        return entries

    @cached_property
    def dense_templates(self) -> torch.Tensor:
        """(n_gates, 2^n, 2^n) dense templates."""
        dim = 2 ** self.n_qubits
        if not self.templates:
            return torch.zeros((0, dim, dim), dtype=torch.complex128)
        return torch.stack([to_dense(t).matrix for t in self.templates])

    def dense_steps(self, m: int, delta_phi: np.ndarray = None) -> torch.Tensor:
        """
        Dense delta H_m, optionally for a batch of angle arrays (batch, n_steps, n_gates).
        """
        if delta_phi is None:
            delta_phi = self.delta_phi[None]
        weights = torch.as_tensor(delta_phi[:, m], dtype=torch.complex128) * self.n_over_tau
        return torch.einsum("bk,kij->bij", weights, self.dense_templates)

    def norm_bound(self, m: int) -> float:
        """Triangle inequality bound (n/tau) sum_k |delta_phi_k| ||T_k||."""
        norms = [spectral_norm(t) for t in self.templates]
        return float(self.n_over_tau * np.sum(np.abs(self.delta_phi[m]) * np.asarray(norms)))

    def to_dict(self, steps=None) -> dict:
        steps = range(len(self)) if steps is None else steps
        return {
            "n_over_tau": self.n_over_tau,
            "gates": [{"label": label, "qubits": list(qubits)}
                      for label, qubits in zip(self.gate_labels, self.gate_qubits)],
            "steps": [{"step": m, "terms": [_describe(entry) for entry in self.provenance(m)]} for m in steps],
        }

    def to_json(self, path, steps=None):
        path = Path(path)
        with open(path, "w") as f:
            json.dump(self.to_dict(steps), f, indent=2)
        return path


def _describe(entry: dict) -> dict:
    described = dict(entry)
    described["operator"] = {k: [v.real, v.imag] for k, v in entry["operator"].as_dict().items()}
    return described


def derive_trace(program: TrotterProgram, realization: ErrorRealization) -> DisorderTrace:
    """
    delta H_m for every step of a faulty run, each term attributed to its gate.
    """
    if realization.delta_phi.shape != (program.n_steps, program.n_gates):
        raise UsageError("Realization shape {} does not match program ({}, {})".format(
            realization.delta_phi.shape, program.n_steps, program.n_gates))
    templates = tuple(error_templates(program.step_gates))
    return DisorderTrace(templates,
                         tuple(g.label for g in program.step_gates),
                         tuple(g.qubits for g in program.step_gates),
                         np.asarray(realization.delta_phi, dtype=float),
                         program.n_steps / program.total_time)
