"""
Command line front end.

    python simulate.py simulate --config configs/example.yaml --ensemble_size 20
    python simulate.py budget --fidelity 0.99 0.9999 --gates_per_step 7
    python simulate.py validate --config configs/example.yaml
    python simulate.py preset fig6 --output_dir results

Exit codes: 0 success, 1 usage or config error, 2 runtime error.
"""
import logging
import sys
from argparse import ArgumentParser, ArgumentDefaultsHelpFormatter, ArgumentTypeError

import wandb
from pytorch_lightning.loggers import WandbLogger

from analysis import gate_budget, overrotation_from_fidelity
from circuits import TEMPORAL_MODES, VARIANTS
from evolution import BACKENDS, R_VECTORS
from experiments import ExperimentConfig, PRESETS, load_config, run_experiment, run_preset, validate
from utils import default_workers, setup_logging, str2bool
from utils.errors import DomainError, NumericalError, UsageError

logger = logging.getLogger("simulate")

EXIT_OK, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2
CONFIG_FIELDS = ("name", "U", "t1", "t2", "variant", "total_time", "step_size", "noise_std", "temporal_mode", "seed",
                 "ensemble_size", "initial_state", "observables", "backends", "spectrum_observable", "r_vector",
                 "window_sigma", "batch_size", "output_dir")


class UsageArgumentParser(ArgumentParser):
    """Turns argparse errors into UsageError so every usage problem exits the same way."""

    def error(self, message):
        raise UsageError(message)


def r_vector_arg(value: str):
    if value in R_VECTORS:
        return value
    try:
        return [float(v) for v in value.split(",")]
    except ValueError:
        raise ArgumentTypeError("Expected one of {} or comma separated numbers".format(sorted(R_VECTORS)))


def add_run_args(parser):
    parser.add_argument('--workers', type=int, default=None,
                        help="Processes for ensembles. Defaults to TROTTERDISORDER_WORKERS or the CPU count.")
    parser.add_argument('--log_level', default="INFO", type=str)
    parser.add_argument('--progress', type=str2bool, nargs='?', const=True, default=True,
                        help="Show progress bars.")
    # Logging related parameters
    parser.add_argument('--wandb_enable', type=str2bool, nargs='?', const=True, default=False)
    parser.add_argument('--wandb_api_key', type=str, default=None)
    parser.add_argument('--wandb_project', type=str)
    parser.add_argument('--wandb_entity', type=str)
    return parser


def add_config_args(parser):
    parser.add_argument('--config', type=str, default=None,
                        help="YAML or JSON config file, or the manifest.json of an earlier run.")
    group = parser.add_argument_group("config overrides")
    group.add_argument('--name', type=str)
    group.add_argument('--U', type=float, help="On-site interaction in units of g")
    group.add_argument('--t1', type=float, help="Inter-site hopping on modes (1,2) and (3,4) in units of g")
    group.add_argument('--t2', type=float, help="On-site spin flip on modes (2,3) and (1,4) in units of g")
    group.add_argument('--variant', choices=VARIANTS)
    group.add_argument('--total_time', type=float, help="tau in units of 1/g")
    group.add_argument('--step_size', type=float, help="g tau / n")
    group.add_argument('--noise_std', type=float, help="Standard deviation of the over-rotations in radians")
    group.add_argument('--temporal_mode', choices=TEMPORAL_MODES)
    group.add_argument('--seed', type=int)
    group.add_argument('--ensemble_size', type=int)
    group.add_argument('--initial_state', type=int, nargs='+', help="Modes to create from the vacuum, in order")
    group.add_argument('--observables', type=str, nargs='+')
    group.add_argument('--backends', choices=BACKENDS, nargs='+')
    group.add_argument('--spectrum_observable', type=str)
    group.add_argument('--r_vector', type=r_vector_arg)
    group.add_argument('--window_sigma', type=float)
    group.add_argument('--batch_size', type=int, help="Runs per worker task")
    group.add_argument('--output_dir', type=str)
    return parser


def get_args(argv=None):
    """
    Setup all arguments and parse them from commandline.
    :return: The ArgParser args object with everything parsed.
    """
    parser = UsageArgumentParser(description="Trotterized Hubbard simulation with coherent gate errors",
                                 formatter_class=ArgumentDefaultsHelpFormatter)
    commands = parser.add_subparsers(dest="command")
    commands.required = True

    simulate = commands.add_parser("simulate", help="Run one experiment",
                                   formatter_class=ArgumentDefaultsHelpFormatter)
    add_run_args(add_config_args(simulate))

    validate_parser = commands.add_parser("validate", help="Check a config and report regime diagnostics",
                                          formatter_class=ArgumentDefaultsHelpFormatter)
    add_config_args(validate_parser)
    validate_parser.add_argument('--log_level', default="INFO", type=str)

    budget = commands.add_parser("budget", help="Worst-case gate budget for an average fidelity",
                                 formatter_class=ArgumentDefaultsHelpFormatter)
    budget.add_argument('--fidelity', type=float, nargs='+', required=True)
    budget.add_argument('--gates_per_step', type=int, default=1)
    budget.add_argument('--log_level', default="INFO", type=str)

    preset = commands.add_parser("preset", help="Reproduce a standard experiment",
                                 formatter_class=ArgumentDefaultsHelpFormatter)
    preset.add_argument('preset', choices=sorted(PRESETS))
    preset.add_argument('--output_dir', type=str, default="results")
    preset.add_argument('--ensemble_size', type=int, default=None)
    preset.add_argument('--step_sizes', type=float, nargs='+', default=None, help="g tau / n values")
    preset.add_argument('--relative_std', type=float, nargs='+', default=None,
                        help="Over-rotation standard deviation in units of g tau / n, per-variant defaults for fig8")
    preset.add_argument('--total_time', type=float, default=None)
    preset.add_argument('--seed', type=int, default=None)
    add_run_args(preset)
    return parser.parse_args(argv)


def config_from_args(args) -> ExperimentConfig:
    config = load_config(args.config) if args.config else ExperimentConfig()
    return config.replace(**{key: getattr(args, key) for key in CONFIG_FIELDS})


def wandb_logger_factory(args):
    if not args.wandb_enable:
        return None
    if not args.wandb_api_key:
        raise UsageError("No WandB API key given: set --wandb_api_key")
    if not args.wandb_project or not args.wandb_entity:
        raise UsageError("No WandB project or WandB entity specified.")
    wandb.login(key=args.wandb_api_key)

    def make_logger(config):
        return WandbLogger(name=config.name, project=args.wandb_project, entity=args.wandb_entity)
    return make_logger


def _single(values, option):
    if len(values) != 1:
        raise UsageError("{} takes a single value for this preset".format(option))
    return values[0]


def preset_knobs(args) -> dict:
    knobs = {key: getattr(args, key) for key in ("ensemble_size", "total_time", "seed")
             if getattr(args, key) is not None}
    if args.step_sizes is not None:
        if args.preset == "fig8":
            knobs["step_sizes"] = tuple(args.step_sizes)
        else:
            knobs["step_size"] = _single(args.step_sizes, "--step_sizes")
    if args.relative_std is not None:
        if args.preset == "fig6":
            knobs["relative_stds"] = tuple(args.relative_std)
        else:
            knobs["relative_std"] = _single(args.relative_std, "--relative_std")
    return knobs


def run_simulate(args) -> int:
    config = config_from_args(args)
    make_logger = wandb_logger_factory(args)
    result = run_experiment(config, args.workers or default_workers(),
                            make_logger(config) if make_logger else None, args.progress)
    print("Results written to {}".format(result.output_dir))
    return EXIT_OK


def run_validate(args) -> int:
    config = config_from_args(args)
    diagnostics = validate(config)
    print("{}: {} steps of g tau/n = {}".format(config.name, config.n_steps, config.step_size))
    for line in diagnostics:
        print("WARNING: {}".format(line))
    if not diagnostics:
        print("OK")
    return EXIT_OK


def run_budget(args) -> int:
    print("{:>12} {:>10} {:>12} {:>10} {:>10}".format("fidelity", "std", "bound Mn", "M", "max n"))
    for fidelity in args.fidelity:
        budget = gate_budget(fidelity, args.gates_per_step)
        if budget.unbounded:
            print("{:>12.6f} {:>10.4g} {:>12} {:>10d} {:>10}".format(fidelity, 0.0, "inf", budget.gates_per_step,
                                                                     "inf"))
            continue
        print("{:>12.6f} {:>10.4g} {:>12.2f} {:>10d} {:>10d}".format(
            fidelity, overrotation_from_fidelity(fidelity), budget.total_bound, budget.gates_per_step,
            budget.max_steps))
    return EXIT_OK


def run_preset_command(args) -> int:
    knobs = preset_knobs(args)
    results = run_preset(args.preset, args.output_dir, args.workers or default_workers(),
                         wandb_logger_factory(args), args.progress, **knobs)
    for result in results:
        print("Results written to {}".format(result.output_dir))
    return EXIT_OK


COMMANDS = {"simulate": run_simulate, "validate": run_validate, "budget": run_budget, "preset": run_preset_command}


def cli(argv=None) -> int:
    setup_logging()
    try:
        args = get_args(argv)
        try:
            logging.getLogger().setLevel(args.log_level.upper())
        except ValueError:
            raise UsageError("Unknown log level {!r}".format(args.log_level))
        return COMMANDS[args.command](args)
    except UsageError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except (DomainError, NumericalError, OSError) as e:
        logger.error("%s", e)
        return EXIT_RUNTIME


if __name__ == '__main__':
    sys.exit(cli())
