from .Trajectory import Trajectory, BACKENDS
from .observables import (InitialState, ObservableRecorder, R_VECTORS, check_state, occupation_table,
                          resolve_r_vector, spatial_variance, spatial_variance_from_probabilities)
from .backends import (DEFAULT_OBSERVABLES, evolve_effective, evolve_effective_batch, evolve_faulty,
                       evolve_faulty_batch, evolve_ideal, initial_vector)
