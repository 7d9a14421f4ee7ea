from .derivation import derive_case1, derive_case2, derive_contributions, error_templates
from .DisorderTrace import DisorderTrace, derive_trace
from .classification import DisorderClassification, classify, commutes_with_particle_number
from .templates import hubbard_cz_chain_templates
from .step_error import step_error, fit_step_error_scaling
