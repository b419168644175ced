"""Sharp constants and numerical checks for weighted Rellich, Hardy-Rellich
and Schmincke-type inequalities with power weights |x|^gamma."""

__version__ = "0.1.0"

from .constants import (Params, hardy_constant, hardy_rellich_alpha, hardy_rellich_constant,
                        rellich_constant, schmincke_range)
from .errors import (ConvergenceError, DegenerateInputError, DomainError, NumericalError,
                     UnsupportedCaseError)
from .functionals import assemble, mode_integrals, sharpness_sweep, verify
from .oracle import OracleGrid, oracle
from .profiles import ModeFunction, MultiModeFunction, random_profile, smooth_bump
from .spectra import eigenvalue, log_refinement_weight, multiplicity

__all__ = [
    "Params", "hardy_constant", "hardy_rellich_alpha", "hardy_rellich_constant", "rellich_constant",
    "schmincke_range", "ConvergenceError", "DegenerateInputError", "DomainError", "NumericalError",
    "UnsupportedCaseError", "assemble", "mode_integrals", "sharpness_sweep", "verify", "OracleGrid",
    "oracle", "ModeFunction", "MultiModeFunction", "random_profile", "smooth_bump", "eigenvalue",
    "log_refinement_weight", "multiplicity",
]
