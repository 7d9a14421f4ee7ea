"""
Experiment execution: an ensemble of faulty runs on the configured backends,
the ideal reference, averaged trajectories, spectra and a manifest.

Output directory layout:

    manifest.json      config, seeds and version; loadable as a config
    trajectories.csv   t, then mean and standard error of every backend/observable
    spectrum.csv       omega, then real, imag and abs of every spectrum
    summary.json       peak positions, widths and regime diagnostics
    metrics/           pytorch_lightning CSV logger output
"""
import json
import logging
import multiprocessing as mp
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np
import torch
from pytorch_lightning.loggers import CSVLogger
from tqdm import tqdm

from analysis import Spectrum, averaged_fidelity, gate_budget, mean_and_error, series_spectrum, spectral_difference
from circuits import ErrorRealization, NoiseModel, TrotterProgram, build_trotter_program, sample_errors
from disorder import commutes_with_particle_number, derive_trace, error_templates
from evolution import BACKENDS, InitialState, evolve_effective_batch, evolve_faulty_batch, evolve_ideal
from fermions import build_hubbard_spinflip, realize
from operators import OperatorSum
from utils import __version__
from utils.errors import DomainError
from .ExperimentConfig import ExperimentConfig, validate

logger = logging.getLogger(__name__)

ENSEMBLE_BACKENDS = ("faulty_circuit", "effective_hamiltonian")


@dataclass(eq=False)
class ExperimentResult:
    output_dir: Path
    times: np.ndarray
    mean: Dict[str, Dict[str, np.ndarray]]
    standard_error: Dict[str, Dict[str, np.ndarray]]
    spectra: Dict[str, Spectrum]
    summary: dict


def build_model(config: ExperimentConfig) -> Tuple[TrotterProgram, OperatorSum]:
    program = build_trotter_program(config.h_params, config.total_time, config.n_steps, config.variant)
    return program, realize(build_hubbard_spinflip(*config.h_params))


def simulate_batch(task) -> Tuple[List[int], Dict[str, Dict[str, np.ndarray]]]:
    """
    Faulty and effective evolution of one batch of run ids.
    :param task: (config, run_ids)
    :return: the run ids and backend -> observable -> (batch, n_steps + 1) values
    """
    config, run_ids = task
    program, h = build_model(config)
    noise = NoiseModel(config.noise_std, config.temporal_mode, config.seed)
    delta_phi = np.stack([sample_errors(program, noise, run_id).delta_phi for run_id in run_ids])
    psi0 = InitialState(config.initial_state, program.n_qubits)
    results = {}
    if "faulty_circuit" in config.backends:
        results["faulty_circuit"], _ = evolve_faulty_batch(program, delta_phi, psi0, config.observables,
                                                           config.r_vector, h)
    if "effective_hamiltonian" in config.backends:
        trace = derive_trace(program, ErrorRealization.zeros(program.n_steps, program.n_gates))
        results["effective_hamiltonian"], _ = evolve_effective_batch(h, trace, delta_phi, psi0, config.total_time,
                                                                     config.observables, config.r_vector)
    return list(run_ids), results


def _init_worker():
    # one BLAS thread per process keeps results independent of the worker count
    torch.set_num_threads(1)


def run_ensemble(config: ExperimentConfig, workers: int = 1,
                 progress: bool = True) -> Dict[str, Dict[str, np.ndarray]]:
    """All runs of the ensemble backends, ordered by run id."""
    backends = [b for b in ENSEMBLE_BACKENDS if b in config.backends]
    if not backends:
        return {}
    run_ids = list(range(config.ensemble_size))
    tasks = [(config, run_ids[i:i + config.batch_size]) for i in range(0, len(run_ids), config.batch_size)]
    collected = []
    if workers <= 1 or len(tasks) == 1:
        for task in tqdm(tasks, desc=config.name, disable=not progress):
            collected.append(simulate_batch(task))
    else:
        pool = mp.Pool(min(workers, len(tasks)), initializer=_init_worker)
        for result in tqdm(pool.imap_unordered(simulate_batch, tasks), total=len(tasks), desc=config.name,
                           disable=not progress):
            collected.append(result)
        pool.close()
        pool.join()
    collected.sort(key=lambda item: item[0][0])
    return {backend: {name: np.concatenate([values[backend][name] for _, values in collected])
                      for name in config.observables}
            for backend in backends}


def _final_quarter(values: np.ndarray) -> float:
    return float(np.mean(values[-max(1, len(values) // 4):]))


def _peak(spectrum: Spectrum) -> dict:
    index, omega = spectrum.dominant_peak()
    try:
        width = spectrum.fwhm(index)
    except DomainError as e:
        logger.warning("%s", e)
        width = None
    return {"omega": omega, "magnitude": float(spectrum.magnitude[index]), "fwhm": width}


def summarize(config: ExperimentConfig, program: TrotterProgram, mean, spectra, diagnostics) -> dict:
    noisy_gates = sum(gate.noisy for gate in program.step_gates)
    summary = {
        "name": config.name,
        "variant": config.variant,
        "n_steps": config.n_steps,
        "step_size": config.step_size,
        "noise_std": config.noise_std,
        "n_runs": config.ensemble_size,
        "noisy_gates_per_step": int(noisy_gates),
        "averaged_fidelity": averaged_fidelity(config.noise_std),
        "disorder_conserves_particle_number": all(
            commutes_with_particle_number(t) for t in error_templates(program.step_gates)),
        "diagnostics": diagnostics,
        "backends": {},
    }
    if config.noise_std > 0 and noisy_gates and 0 < summary["averaged_fidelity"] < 1:
        budget = gate_budget(summary["averaged_fidelity"], noisy_gates)
        summary["gate_budget"] = {"total_bound": budget.total_bound, "max_steps": budget.max_steps}
    for backend, values in mean.items():
        entry = {"final_quarter": {name: _final_quarter(v) for name, v in values.items()}}
        if backend in spectra:
            entry["peak"] = _peak(spectra[backend])
        summary["backends"][backend] = entry
    if "difference" in spectra:
        reference = spectra["faulty_circuit"].magnitude.max()
        summary["max_difference_ratio"] = float(spectra["difference"].magnitude.max() / reference) \
            if reference > 0 else None
    return summary


def scalar_metrics(summary: dict) -> Dict[str, float]:
    metrics = {"averaged_fidelity": summary["averaged_fidelity"]}
    for backend, entry in summary["backends"].items():
        for name, value in entry["final_quarter"].items():
            metrics["{}/final_{}".format(backend, name)] = value
        peak = entry.get("peak", {})
        for key in ("omega", "fwhm"):
            if peak.get(key) is not None:
                metrics["{}/peak_{}".format(backend, key)] = peak[key]
    if summary.get("max_difference_ratio") is not None:
        metrics["max_difference_ratio"] = summary["max_difference_ratio"]
    return metrics


def _write_trajectories(path: Path, times, mean, standard_error):
    columns, header = [times], ["t"]
    for backend, values in mean.items():
        for name, series in values.items():
            columns.append(series)
            header.append("{}.{}".format(backend, name))
            if backend in standard_error:
                columns.append(standard_error[backend][name])
                header.append("{}.{}.sem".format(backend, name))
    np.savetxt(path, np.column_stack(columns), delimiter=",", header=",".join(header), comments="", fmt="%.12e")


def _write_spectra(path: Path, spectra: Dict[str, Spectrum]):
    first = next(iter(spectra.values()))
    columns, header = [first.frequencies], ["omega"]
    for key, spectrum in spectra.items():
        columns += [spectrum.amplitudes.real, spectrum.amplitudes.imag, spectrum.magnitude]
        header += ["{}.real".format(key), "{}.imag".format(key), "{}.abs".format(key)]
    np.savetxt(path, np.column_stack(columns), delimiter=",", header=",".join(header), comments="", fmt="%.12e")


def _write_json(path: Path, content: dict):
    with open(path, "w") as f:
        json.dump(content, f, indent=2)


def run_experiment(config: ExperimentConfig, workers: int = 1, pl_logger=None,
                   progress: bool = True) -> ExperimentResult:
    """
    Execute the configured backends and write the run directory.
    :param workers: processes for the ensemble
    :param pl_logger: pytorch_lightning logger for hyperparameters and scalars, CSVLogger in the run directory if None
    """
    diagnostics = validate(config)
    output_dir = Path(config.output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    program, h = build_model(config)
    noise = NoiseModel(config.noise_std, config.temporal_mode, config.seed)
    logger.info("Running %s: %s, %d steps, %d runs, noise std %.4g", config.name, config.variant, config.n_steps,
                config.ensemble_size, config.noise_std)

    per_run = run_ensemble(config, workers, progress)
    mean, standard_error = {}, {}
    for backend in BACKENDS:
        if backend in per_run:
            stats = {name: mean_and_error(values) for name, values in per_run[backend].items()}
            mean[backend] = {name: s[0] for name, s in stats.items()}
            standard_error[backend] = {name: s[1] for name, s in stats.items()}
        elif backend == "ideal_exact" and backend in config.backends:
            ideal = evolve_ideal(h, InitialState(config.initial_state, program.n_qubits), config.total_time,
                                 config.n_steps, config.observables, config.r_vector)
            mean[backend] = ideal.observables

    observable = config.spectrum_observable
    spectra = {backend: series_spectrum(program.times, values[observable], config.window_sigma, observable)
               for backend, values in mean.items()}
    if "faulty_circuit" in spectra and "effective_hamiltonian" in spectra:
        spectra["difference"] = spectral_difference(spectra["faulty_circuit"], spectra["effective_hamiltonian"])
    summary = summarize(config, program, mean, spectra, diagnostics)

    manifest = {"config": config.to_dict(), "seed": config.seed, "run_ids": [0, config.ensemble_size],
                "version": __version__, "program": program.to_dict(noise)}
    _write_json(output_dir / "manifest.json", manifest)
    _write_trajectories(output_dir / "trajectories.csv", program.times, mean, standard_error)
    _write_spectra(output_dir / "spectrum.csv", spectra)
    _write_json(output_dir / "summary.json", summary)

    if pl_logger is None:
        pl_logger = CSVLogger(save_dir=str(output_dir), name="metrics", version=0)
    pl_logger.log_hyperparams(config.to_dict())
    pl_logger.log_metrics(scalar_metrics(summary), step=0)
    pl_logger.save()
    pl_logger.finalize("success")
    logger.info("Wrote %s", output_dir)
    return ExperimentResult(output_dir, program.times, mean, standard_error, spectra, summary)
