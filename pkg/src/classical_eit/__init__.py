"""Classical analog of electromagnetically induced transparency.

Two coupled damped oscillators (or two RLC meshes sharing a capacitor):
closed-form spectra, an RK4 time-domain oracle, and extraction of the
transparency dip and the normal-mode doublet.
"""

from .config import PRESETS, Preset, dump_config, get_preset, parse_config
from .errors import (
    ConfigSyntaxError,
    ContractError,
    DivergenceError,
    EITError,
    IntegrationConfigError,
    MappingDomainError,
    NonDegenerateError,
    NotSteadyError,
    OverdampedModeError,
    ParameterDomainError,
    SingularityError,
    UnknownKeyError,
    WindowTooShortError,
    WrappedPhaseError,
)
from .model import (
    CircuitParams,
    DerivedFrequencies,
    MechanicalParams,
    NormalModes,
    circuit_to_mech,
    derive_frequencies,
    mech_to_circuit,
    normal_modes,
)
from .response import (
    circuit_power,
    circuit_power_closed,
    circuit_power_open,
    probe_amplitude,
    probe_power,
)
from .spectrum import (
    FrequencyGrid,
    Observable,
    SpectralFeatures,
    Spectrum,
    analyze,
    dispersion_slope,
    find_extrema,
    phase_features,
    sweep,
)
from .timedomain import (
    IntegrationConfig,
    OscState,
    Trajectory,
    demodulated_response,
    integrate,
    steady_state_amplitude,
)

__version__ = "0.1.0"
