"""Computable entanglement conversion witnesses built from the negativity."""

from .exceptions import (EntwitError, InvalidDimsError, InvalidParamError, NotAStateError,
                         NotHermitianError, NotPureError, PPTInputError, StateSpecError,
                         WitnessConfigError)
from .linalg import BipartiteState, HermitianOperator, negative_part, partial_transpose, positive_part
from .measures import (concurrence, entanglement_of_formation, majorization_convertible,
                       negativity, negativity_profile, rho_tilde)
from .states import (isotropic, named_sigma_phi01, parse_state_spec, pure_schmidt, rho_q, werner)
from .support import h_generalized_werner, h_isotropic, h_werner
from .witnesses import (LocalUnitarySearchConfig, WitnessReport, witness_gamma, witness_iso_prime,
                        witness_lu_min, witness_N, witness_two_qubit, witness_wer_prime)

__version__ = "0.1.0"
