"""Radiative friction on a rotating polarizable particle in blackbody radiation."""

from ._core import (
    ForceResult,
    InvalidParameter,
    NumericalFailure,
    PolarizabilityModel,
    QuadratureConfig,
    SolverConfig,
    UnsupportedEvaluation,
    __version__,
    acceleration_threshold,
    acceleration_window,
    evolve,
    fig2_curves,
    force_comoving,
    force_comoving_from_lab,
    force_lab,
    force_mkrtchian,
    force_nonrel,
    force_unit,
    heating_rate_lab,
    reduced_chi,
    resonance_force_exact,
    resonance_force_quadratic,
    rotation_correction_G,
    validate_dipole_conditions,
)

__all__ = [
    "ForceResult",
    "InvalidParameter",
    "NumericalFailure",
    "PolarizabilityModel",
    "QuadratureConfig",
    "SolverConfig",
    "UnsupportedEvaluation",
    "__version__",
    "acceleration_threshold",
    "acceleration_window",
    "evolve",
    "fig2_curves",
    "force_comoving",
    "force_comoving_from_lab",
    "force_lab",
    "force_mkrtchian",
    "force_nonrel",
    "force_unit",
    "heating_rate_lab",
    "reduced_chi",
    "resonance_force_exact",
    "resonance_force_quadratic",
    "rotation_correction_G",
    "validate_dipole_conditions",
]
