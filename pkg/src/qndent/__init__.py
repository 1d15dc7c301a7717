"""Two-qubit QND dephasing in a squeezed thermal bath and entanglement diagnostics."""

__version__ = "0.1.0"

from .bath import (BathParams, QuadratureError, integrate_bath, kernel_C, kernel_S,
                   ohmic_spectral_density, thermal_factor, thermal_weight)
from .dynamics import (QubitGeometry, Regime, TransferArray, build_transfer_array,
                       decoherence_exponents, evolve, extract_symmetry_coeffs)
from .closed_forms import build_transfer_array_specialized, element_class_exponents
from .states import (bell_state, concurrence, fidelity, initial_equal_superposition,
                     projector, pure_concurrence, purity, spectral_decompose, validate,
                     werner_state)
from .pdf import (convexity_bound_check, nested_weights, pdf_features, pdf_full,
                  pdf_projection, sample_haar_in_subspace, weights_vs_temperature)
from .repeater import (distillable, fidelity_trajectory, iterate_purification,
                       NotDistillableError, purify_step)
from .effective import bell_spectral_analysis, effective_hamiltonian
from .config import ConfigError, ExperimentConfig, load_config, validate_config
