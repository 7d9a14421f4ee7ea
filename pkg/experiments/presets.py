"""
One-command reproductions of the standard experiments.

fig4  single faulty run against the effective Hamiltonian and the ideal model
fig6  ensemble-averaged spectra for four over-rotation strengths
fig8  spread of a single particle under quasi-static errors for every variant
"""
import json
import logging
from pathlib import Path
from typing import Callable, List, Mapping, Sequence, Union

from circuits import VARIANTS
from evolution import BACKENDS
from utils.errors import UsageError
from .ExperimentConfig import ExperimentConfig
from .runner import ExperimentResult, run_experiment

logger = logging.getLogger(__name__)


def fig4_configs(output_dir, step_size: float = 0.05, total_time: float = 1000.0, relative_std: float = 0.5,
                 seed: int = 0) -> List[ExperimentConfig]:
    return [ExperimentConfig(name="fig4", total_time=total_time, step_size=step_size,
                             noise_std=relative_std * step_size, seed=seed, ensemble_size=1,
                             initial_state=[1, 2], backends=list(BACKENDS),
                             output_dir=str(Path(output_dir) / "fig4"))]


def fig6_configs(output_dir, step_size: float = 0.05, total_time: float = 1000.0,
                 relative_stds: Sequence[float] = (0.1, 0.25, 0.5, 1.0), ensemble_size: int = 200,
                 seed: int = 0) -> List[ExperimentConfig]:
    return [ExperimentConfig(name="fig6_std{:g}".format(relative), total_time=total_time, step_size=step_size,
                             noise_std=relative * step_size, seed=seed, ensemble_size=ensemble_size,
                             initial_state=[1, 2], backends=["faulty_circuit", "ideal_exact"],
                             output_dir=str(Path(output_dir) / "fig6" / "std_{:g}".format(relative)))
            for relative in relative_stds]


# weak for the N-conserving variants, strong for cnot_chain
FIG8_RELATIVE_STD = {"cz_chain": 0.1, "iswap_chain": 0.1, "cnot_chain": 2.0}


def fig8_configs(output_dir, step_sizes: Sequence[float] = (0.05, 0.2),
                 relative_std: Union[float, Mapping[str, float]] = None, total_time: float = 400.0,
                 ensemble_size: int = 200, variants: Sequence[str] = VARIANTS,
                 seed: int = 0) -> List[ExperimentConfig]:
    """
    Both knobs are free: the step sizes and the noise standard deviation relative to them.
    :param relative_std: one value for every variant or a mapping variant -> value,
        FIG8_RELATIVE_STD when None
    """
    if relative_std is None:
        relative_std = FIG8_RELATIVE_STD
    if not isinstance(relative_std, Mapping):
        relative_std = {variant: relative_std for variant in variants}
    missing = [variant for variant in variants if variant not in relative_std]
    if missing:
        raise UsageError("No relative noise strength for {}".format(missing))
    return [ExperimentConfig(name="fig8_{}_step{:g}".format(variant, step), variant=variant,
                             total_time=total_time, step_size=step, noise_std=relative_std[variant] * step,
                             temporal_mode="quasi_static", seed=seed, ensemble_size=ensemble_size,
                             initial_state=[1], observables=["sigma2", "N", "n1"], spectrum_observable="sigma2",
                             backends=["faulty_circuit", "ideal_exact"],
                             output_dir=str(Path(output_dir) / "fig8" / "{}_step_{:g}".format(variant, step)))
            for variant in variants for step in step_sizes]


PRESETS = {"fig4": fig4_configs, "fig6": fig6_configs, "fig8": fig8_configs}


def preset_configs(name: str, output_dir, **knobs) -> List[ExperimentConfig]:
    if name not in PRESETS:
        raise UsageError("Unknown preset {!r}, expected one of {}".format(name, sorted(PRESETS)))
    try:
        return PRESETS[name](output_dir, **knobs)
    except TypeError as e:
        raise UsageError("Invalid option for preset {}: {}".format(name, e))


def _preset_summary(name: str, results: List[ExperimentResult]) -> dict:
    runs = []
    for result in results:
        summary = result.summary
        entry = {"name": summary["name"], "variant": summary["variant"], "step_size": summary["step_size"],
                 "noise_std": summary["noise_std"],
                 "disorder_conserves_particle_number": summary["disorder_conserves_particle_number"]}
        for backend, values in summary["backends"].items():
            entry[backend] = values
        if "max_difference_ratio" in summary:
            entry["max_difference_ratio"] = summary["max_difference_ratio"]
        runs.append(entry)
    return {"preset": name, "runs": runs}


def run_preset(name: str, output_dir, workers: int = 1, make_logger: Callable = None, progress: bool = True,
               **knobs) -> List[ExperimentResult]:
    """
    Run every experiment of a preset and write ``<output_dir>/<name>/preset.json``.
    :param make_logger: config -> pytorch_lightning logger, None for the default CSV logger
    """
    configs = preset_configs(name, output_dir, **knobs)
    results = []
    for config in configs:
        pl_logger = make_logger(config) if make_logger is not None else None
        results.append(run_experiment(config, workers, pl_logger, progress))
    path = Path(output_dir) / name / "preset.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(_preset_summary(name, results), f, indent=2)
    logger.info("Preset %s finished, %d experiments", name, len(results))
    return results
