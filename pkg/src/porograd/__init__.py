"""Equilibrium mechanics of fluid-saturated porous solids with gradient energy.

The package evaluates the constitutive theory of a saturated solid-fluid
mixture (partial and thermodynamic pressures, generalized pressure
partition, exchange forces), the second-gradient stress tensors and
boundary actions produced by a solid density-gradient energy, and solves
the one-dimensional pressure-driven fluid-penetration problem on a half
space, reporting the static permeability of the matrix (attenuation
length) and of its boundary (density drop).
"""

from .constitutive import (
    ConstitutiveModel,
    MaterialModel,
    MixtureState,
    ReferenceState,
)
from .errors import (
    BranchingSolutionError,
    ConfigError,
    DegenerateMaterialError,
    InterfaceOverloadError,
    PorogradError,
    QuadratureError,
    SaturationInfeasibleError,
    SingularCompressibilityError,
    SolverError,
    UnphysicalStateError,
)
from .halfspace import (
    ClosedFormSolution,
    HalfspaceProblem,
    ProblemSpec,
    Profile,
    ValidationReport,
    attenuation_length,
    boundary_amplitude,
    boundary_density_drop,
    saturation_stiffness,
)
from .hyperstress import (
    FieldPoint,
    InterfaceParams,
    applied_tractions,
    boundary_residuals_1d,
    double_stress_tensor,
    gradient_energy_stress,
    hyperstress_bracket_1d,
    normal_double_force,
    solid_gradient_stress,
    summed_first_integral_residual,
)

__all__ = [
    "ConstitutiveModel",
    "MaterialModel",
    "MixtureState",
    "ReferenceState",
    "FieldPoint",
    "InterfaceParams",
    "applied_tractions",
    "boundary_residuals_1d",
    "double_stress_tensor",
    "gradient_energy_stress",
    "hyperstress_bracket_1d",
    "normal_double_force",
    "solid_gradient_stress",
    "summed_first_integral_residual",
    "ClosedFormSolution",
    "HalfspaceProblem",
    "ProblemSpec",
    "Profile",
    "ValidationReport",
    "attenuation_length",
    "boundary_amplitude",
    "boundary_density_drop",
    "saturation_stiffness",
    "PorogradError",
    "DegenerateMaterialError",
    "UnphysicalStateError",
    "SaturationInfeasibleError",
    "SingularCompressibilityError",
    "BranchingSolutionError",
    "InterfaceOverloadError",
    "QuadratureError",
    "SolverError",
    "ConfigError",
]

__version__ = "0.1.0"
