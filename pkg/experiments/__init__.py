from .ExperimentConfig import ExperimentConfig, RegimeWarning, load_config, save_config, validate
from .runner import ExperimentResult, run_ensemble, run_experiment, simulate_batch, summarize
from .presets import FIG8_RELATIVE_STD, PRESETS, fig4_configs, fig6_configs, fig8_configs, preset_configs, run_preset
