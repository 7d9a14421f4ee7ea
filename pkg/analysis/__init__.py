from .spectrum import (Spectrum, series_spectrum, spectral_difference, window_fwhm, windowed_spectrum,
                       DEFAULT_WINDOW_FRACTION, MIN_SLICES)
from .ensemble import EnsembleAverage, ensemble_average, mean_and_error
from .fidelity import (BruteForceFidelity, FidelityReport, GateBudget, averaged_fidelity, fidelity_from_overrotation,
                       gate_budget, min_fidelity_bruteforce, overrotation_from_fidelity, sampled_average_fidelity)
