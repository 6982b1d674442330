"""Exception types raised by the porograd library.

Physical-state violations and solver failures are reported through typed
errors so callers can distinguish "bad input" from "no solution exists in
this regime". States are rejected, never clamped.
"""

from __future__ import annotations


class PorogradError(Exception):
    """Base class for all library errors."""


class DegenerateMaterialError(PorogradError):
    """A compressibility law produced a nonpositive true density."""


class UnphysicalStateError(PorogradError):
    """Densities or volume fractions left their admissible range."""


class SaturationInfeasibleError(PorogradError):
    """No fluid density saturates the pore space for the given solid density."""


class SingularCompressibilityError(PorogradError):
    """A compressibility correction factor vanished; pressures are undefined."""


class BranchingSolutionError(PorogradError):
    """The restoring stiffness along saturation is nonpositive.

    The decaying boundary-layer branch does not exist; the equilibrium
    family branches instead. The offending stiffness is carried so callers
    can report it.
    """

    def __init__(self, stiffness: float, message: str | None = None):
        self.stiffness = stiffness
        if message is None:
            message = (
                f"restoring stiffness along saturation is {stiffness:g} <= 0; "
                "no decaying boundary layer exists (branching regime)"
            )
        super().__init__(message)


class InterfaceOverloadError(PorogradError):
    """The applied double force is too large for a real boundary amplitude."""


class QuadratureError(PorogradError):
    """Adaptive quadrature failed to converge to the requested tolerance."""


class SolverError(PorogradError):
    """Newton iteration failed; carries the last scaled residual norm."""

    def __init__(self, residual_norm: float, iterations: int, message: str | None = None):
        self.residual_norm = residual_norm
        self.iterations = iterations
        if message is None:
            message = (
                f"Newton solver failed after {iterations} iterations; "
                f"last scaled residual norm {residual_norm:.3e}"
            )
        super().__init__(message)


class ConfigError(PorogradError):
    """Scenario configuration is invalid; carries the offending field."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")
