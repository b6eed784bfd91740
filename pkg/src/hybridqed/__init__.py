"""Cavity QED of a whispering-gallery microcavity loaded with a metal nanosphere."""

__version__ = "0.1.0"

from .errors import ConfigError, DomainError, NoResonanceError, NumericalError, SingularityError
from .materials import (DrudeMetal, Medium, beta_coefficient, drude_permittivity,
                        lspr_frequency, polarizability)
from .cavity import CavityConfig, EmitterConfig, g_bare, gamma_s, kappa_0, kappa_1
from .hybrid import (HybridParams, NanoGeometry, cooperativity, derive_params, field_profile,
                     g_hybrid, kappa_R, kappa_m, mixing_strength_h, mode_volume_hybrid)
from .config_io import (RunReport, SystemConfig, default_config, derive_all, dump_config,
                        load_config, load_config_file)
from .spectra import (LinearSystemModel, SpectrumTrace, dynamical_matrix_eigenvalues,
                      steady_state_transmission, sweep_spectrum, transmission)
from .sweeps import (SweepResult, SweepSpec, optimize_detuning, regime_curves,
                     sweep_detuning, sweep_rm_d)
from .dynamics import (DickeState, TwistingModel, chi_rate, collective_rotation,
                       evolve_twisting, noon_protocol, optimal_squeezing, squeezing_parameter)
