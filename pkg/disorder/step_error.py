import logging
from typing import Dict, Sequence

import numpy as np

from circuits import ErrorRealization, NoiseModel, TrotterProgram, build_trotter_program, sample_errors
from fermions import build_hubbard_spinflip, realize
from operators import OperatorSum, exp_hermitian, phase_distance, to_dense
from .DisorderTrace import DisorderTrace, derive_trace

logger = logging.getLogger(__name__)


def step_error(program: TrotterProgram, trace: DisorderTrace, h: OperatorSum, m: int,
               realization: ErrorRealization) -> float:
    """
    Phase-insensitive distance between faulty step m and e^{-i (H + delta H_m) tau/n}.
    """
    faulty = program.step_unitary(realization.step(m))
    generator = to_dense(h).matrix + trace.dense_steps(m)[0]
    effective = exp_hermitian(generator, -program.step_duration)
    return phase_distance(faulty, effective)


def fit_step_error_scaling(h_params=(1.0, 1.0, 1.0), variant: str = "cz_chain",
                           step_sizes: Sequence[float] = (0.1, 0.05, 0.025), relative_std: float = 0.5,
                           n_realizations: int = 20, seed: int = 0) -> Dict[str, np.ndarray]:
    """
    Worst single-step error over realizations at each step size g tau/n.

    Realization r uses the same standard normal draws at every step size, only
    scaled by the standard deviation relative_std * g tau/n, so successive
    errors differ only through the step size.
    :return: dict with step_sizes, errors and the reduction ratios per halving
    """
    h = realize(build_hubbard_spinflip(*h_params))
    errors = []
    for size in step_sizes:
        program = build_trotter_program(h_params, size, 1, variant)
        noise = NoiseModel(relative_std * size, "per_step_iid", seed)
        worst = 0.0
        for run_id in range(n_realizations):
            realization = sample_errors(program, noise, run_id)
            trace = derive_trace(program, realization)
            worst = max(worst, step_error(program, trace, h, 0, realization))
        logger.info("%s step error at g tau/n = %.4g: %.3e", variant, size, worst)
        errors.append(worst)
    errors = np.asarray(errors)
    return {"step_sizes": np.asarray(step_sizes), "errors": errors, "ratios": errors[:-1] / errors[1:]}
