"""pertlab: anharmonic-oscillator perturbation energies three ways.

An exact rational-arithmetic recursion provides ground truth; a parametric
divergent-ratio method and its ghost-state regularization are evaluated
numerically against it at finite cutoffs.
"""

from .basis import E0, X_MAX, dawson, ghost_chi0, mixed_state, psi0, wronskian
from .errors import (ConfigError, CutoffTooLargeError, NumericalError,
                     ParityError, PertlabError, ToleranceError)
from .ghost import (ExtrapolationResult, SigmaSweepRow, dominant_term_split,
                    ghost_energy, ghost_energy_extrapolated,
                    ibp_identity_check, sigma_extrapolate)
from .quad import (DEFAULT_CONFIG, NestedIntegralResult, QuadConfig, nested_J,
                   nested_J_grid, weighted_integral)
from .sc import (ScSweepRow, divergence_diagnostics, psi_n_closed_form,
                 psi_n_shoot, sc_energy, universal_F)
from .series import (PerturbationSeries, RationalPoly, build_series,
                     effective_perturbation, gaussian_moment, solve_order)

__version__ = "0.1.0"

__all__ = [
    "E0", "X_MAX", "dawson", "ghost_chi0", "mixed_state", "psi0", "wronskian",
    "ConfigError", "CutoffTooLargeError", "NumericalError", "ParityError",
    "PertlabError", "ToleranceError",
    "ExtrapolationResult", "SigmaSweepRow", "dominant_term_split",
    "ghost_energy", "ghost_energy_extrapolated", "ibp_identity_check",
    "sigma_extrapolate",
    "DEFAULT_CONFIG", "NestedIntegralResult", "QuadConfig", "nested_J",
    "nested_J_grid", "weighted_integral",
    "ScSweepRow", "divergence_diagnostics", "psi_n_closed_form",
    "psi_n_shoot", "sc_energy", "universal_F",
    "PerturbationSeries", "RationalPoly", "build_series",
    "effective_perturbation", "gaussian_moment", "solve_order",
    "__version__",
]
