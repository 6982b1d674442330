"""One-dimensional pressure-driven fluid-penetration equilibrium on x >= 0.

A homogeneous saturated matrix occupies the half line; at x = 0 it touches
its saturating fluid held at the incumbent pressure p_i, which also exerts
a contact double force d_coeff * p_i on the solid. Far from the boundary
the matrix is in contact with an impervious solid, so the fields approach
a uniform state.

Eliminating the fluid density through saturation and the saturation
pressure through the two first integrals of the equilibrium equations
reduces the problem to a single second-order ODE for the solid density,

    lambda_s * rho_s'' = G(rho_s, c) + g1,

where G integrates the density derivative of the reduced force balance F
and (c, g1) are integration constants fixed by the boundary data. With
density-preserving constituents G is exactly
L * ln(rho_s / rho_s0), whose linearization produces an exponential
boundary layer: attenuation length x0 = sqrt(rho_s0 lambda_s / L) (the
static permeability of the matrix) and boundary density drop
delta_rho_s = d_coeff p_i / rho_s0 * sqrt(rho_s0 / (lambda_s L)) (the
static permeability of the matrix boundary).

The stiffness L is the curvature of the stored energy along the only
density direction compatible with saturation, scaled by rho_s0:

    L = rho_s0 * (eps_ss - 2 r eps_sf + r^2 eps_ff),   r = rhat_f0/rhat_s0.

It is positive for every strictly stable energy; L <= 0 signals the
branching regime and is reported as a typed error.

Two solvers are provided. ``closed_form_profile`` evaluates the exponential
solution (density-preserving constituents only). ``solve_compressible``
discretizes the ODE with second-order finite differences and damped Newton
iteration, closing the far field with a decay-consistent Robin condition,
and works for compressible constituents as well.

Residual diagnostics are evaluated in the linearization-consistent form
of the equilibrium system: the constitutive model is a quadratic expansion
about the reference, and the exponential profile solves exactly the
equations linearized in the density deviations. Checking it against the
raw nonlinear forms would only measure the O(delta^2) truncation of the
constitutive expansion itself, so the validator linearizes the gradient
stress bracket (lambda_s rho_s0 rho_s'') and the restoring term
consistently, while saturation and the fluid first integral are checked
in full nonlinear form (they hold exactly). All reported residuals are
dimensionless.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate
from scipy.sparse import lil_matrix
from scipy.sparse.linalg import spsolve

from .constitutive import ConstitutiveModel, MaterialModel, MixtureState, ReferenceState
from .errors import (
    BranchingSolutionError,
    InterfaceOverloadError,
    QuadratureError,
    SolverError,
    UnphysicalStateError,
)
from .hyperstress import InterfaceParams, hyperstress_bracket_1d

# one-sided boundary stencils (third order for first, second+ for second
# derivatives); interior stencils are the usual central differences
_D1_EDGE = np.array([-11.0, 18.0, -9.0, 2.0]) / 6.0
_D2_EDGE = np.array([35.0, -104.0, 114.0, -56.0, 11.0]) / 12.0

_GAUSS_ORDER = 48
_gauss_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gauss(n: int = _GAUSS_ORDER) -> tuple[np.ndarray, np.ndarray]:
    if n not in _gauss_cache:
        _gauss_cache[n] = leggauss(n)
    return _gauss_cache[n]


def derivative_arrays(y: np.ndarray, h: float) -> tuple[np.ndarray, np.ndarray]:
    """First and second derivative arrays of a gridded field.

    Central differences inside, one-sided stencils at the two boundary
    nodes (third-order for both derivatives).
    """
    y = np.asarray(y, dtype=float)
    d1 = np.empty_like(y)
    d2 = np.empty_like(y)
    d1[1:-1] = (y[2:] - y[:-2]) / (2.0 * h)
    d2[1:-1] = (y[2:] - 2.0 * y[1:-1] + y[:-2]) / h**2
    d1[0] = np.dot(_D1_EDGE, y[:4]) / h
    d1[-1] = -np.dot(_D1_EDGE, y[-1:-5:-1]) / h
    d2[0] = np.dot(_D2_EDGE, y[:5]) / h**2
    d2[-1] = np.dot(_D2_EDGE, y[-1:-6:-1]) / h**2
    return d1, d2


# ---------------------------------------------------------------------------
# material-level quantities
# ---------------------------------------------------------------------------


def saturation_stiffness(material: MaterialModel, reference: ReferenceState) -> float:
    """Restoring stiffness L along the saturation direction [J/kg].

    rho_s0 times the energy-Hessian quadratic form along the direction
    (1, -rhat_f0/rhat_s0), the only density perturbation compatible with
    saturation of density-preserving constituents. Positive iff that
    direction is strictly stable; L <= 0 raises BranchingSolutionError.
    """
    if material.c_s != 0.0 or material.c_f != 0.0:
        raise ValueError("saturation_stiffness requires density-preserving constituents")
    r = reference.rhat_f0 / reference.rhat_s0
    stiffness = reference.rho_s0 * (
        material.eps_ss - 2.0 * r * material.eps_sf + r**2 * material.eps_ff
    )
    if stiffness <= 0.0:
        raise BranchingSolutionError(stiffness)
    return stiffness


def attenuation_length(material: MaterialModel, reference: ReferenceState) -> float:
    """Static permeability x0 = sqrt(rho_s0 lambda_s / L) [m].

    Zero when lambda_s = 0: without gradient energy the solid density
    carries no boundary layer at all.
    """
    stiffness = saturation_stiffness(material, reference)
    return float(np.sqrt(reference.rho_s0 * material.lambda_s / stiffness))


def boundary_density_drop(
    material: MaterialModel, reference: ReferenceState, interface: InterfaceParams
) -> float:
    """Boundary static permeability: drop of rho_s at the loaded face [kg/m^3].

    delta_rho_s = d_coeff p_i / rho_s0 * sqrt(rho_s0 / (lambda_s L)),
    linear in both the double-force coefficient and the incumbent pressure.
    """
    stiffness = saturation_stiffness(material, reference)
    drive = interface.d_coeff * interface.p_i
    if drive == 0.0:
        return 0.0
    if material.lambda_s == 0.0:
        raise UnphysicalStateError(
            "a double force cannot be supported without gradient energy (lambda_s = 0)"
        )
    return float(
        drive / reference.rho_s0
        * np.sqrt(reference.rho_s0 / (material.lambda_s * stiffness))
    )


def boundary_amplitude(
    material: MaterialModel,
    reference: ReferenceState,
    interface: InterfaceParams,
    exact: bool = True,
) -> float:
    """Amplitude C2 of the decaying exponential, rho_s(0) = rho_s0 + C2.

    The flux condition at the face gives C2 (rho_s0 + C2) = -delta_rho_s
    rho_s0; ``exact`` selects the root of that quadratic closest to zero
    (stable form), otherwise the linearized value -delta_rho_s. No real
    root exists when the drive exceeds rho_s0/4, reported as an
    interface-overload error.
    """
    drop = boundary_density_drop(material, reference, interface)
    if not exact:
        return -drop
    q = drop / reference.rho_s0
    disc = 1.0 - 4.0 * q
    if disc < 0.0:
        raise InterfaceOverloadError(
            f"double-force drive needs delta_rho_s/rho_s0 = {q:g} <= 0.25 "
            "for a real boundary amplitude"
        )
    return float(-2.0 * drop / (1.0 + np.sqrt(disc)))


# ---------------------------------------------------------------------------
# problem containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ProblemSpec:
    """Full description of one half-space penetration problem.

    ``x_max`` defaults to ten attenuation lengths, putting the exponential
    tail below 5e-5 of the boundary amplitude at the truncation point.
    """

    material: MaterialModel
    reference: ReferenceState
    interface: InterfaceParams
    x_max: Optional[float] = None
    n_nodes: int = 2000
    newton_tol: float = 1e-9
    newton_max_iter: int = 25

    def __post_init__(self):
        if self.x_max is not None and not self.x_max > 0.0:
            raise UnphysicalStateError("x_max must be positive")
        if self.n_nodes < 16:
            raise UnphysicalStateError("n_nodes must be at least 16")
        if not self.newton_tol > 0.0:
            raise UnphysicalStateError("newton_tol must be positive")
        if self.newton_max_iter < 1:
            raise UnphysicalStateError("newton_max_iter must be at least 1")


@dataclass(frozen=True)
class ClosedFormSolution:
    """Scalars of the exponential boundary layer."""

    stiffness: float          # restoring stiffness L [J/kg]
    x0: float                 # attenuation length [m]
    delta_rho_s: float        # linearized boundary drop [kg/m^3]
    c2: float                 # boundary amplitude [kg/m^3]
    offset: float = 0.0       # far-field density offset, zero for a decaying layer


@dataclass
class ValidationReport:
    """Dimensionless residual maxima of one profile.

    ``saturation_abs`` is in kg/m^3 (constraint residual divided by the
    solid true density); every other entry is relative to its natural
    scale (the incumbent pressure and its derived scales). Far-side
    boundary residuals are evaluated on the profile's far-field limit
    state; the approach to that limit is governed by the exponential tail
    and is checked separately.
    """

    saturation_abs: float
    saturation: float
    fluid_integral_spread: float
    summed_integral: float
    ode: float
    normal_form: float
    bc_face: tuple[float, float, float]
    bc_far: tuple[float, float, float]

    def worst(self) -> float:
        return max(
            abs(v)
            for v in (
                self.saturation,
                self.fluid_integral_spread,
                self.summed_integral,
                self.ode,
                self.normal_form,
                *self.bc_face,
                *self.bc_far,
            )
        )

    def as_dict(self) -> dict[str, float]:
        out = {
            "saturation_abs": self.saturation_abs,
            "saturation": self.saturation,
            "fluid_integral_spread": self.fluid_integral_spread,
            "summed_integral": self.summed_integral,
            "ode": self.ode,
            "normal_form": self.normal_form,
        }
        for side, trio in (("face", self.bc_face), ("far", self.bc_far)):
            for name, value in zip(("solid", "fluid", "flux"), trio):
                out[f"bc_{side}_{name}"] = value
        return out

    def lines(self) -> list[str]:
        return [f"{key} = {value:.17g}" for key, value in self.as_dict().items()]


@dataclass
class Profile:
    """Discretized equilibrium fields over the half line.

    Arrays share the grid ``x``; ``d1rho_s``/``d2rho_s`` are the solid
    density derivatives (analytic for the closed form, the solver's finite
    differences otherwise), used by the validator so that residuals test
    the solution, not a resampling. ``far_*`` is the limit state the
    profile decays to; ``c_const`` and ``g1`` are the integration constants
    of the reduced ODE.
    """

    x: np.ndarray
    rho_s: np.ndarray
    rho_f: np.ndarray
    v_s: np.ndarray
    v_f: np.ndarray
    p: np.ndarray
    P_s: np.ndarray
    P_f: np.ndarray
    d1rho_s: np.ndarray
    d2rho_s: np.ndarray
    c_const: float
    g1: float
    far_rho_s: float
    far_rho_f: float
    far_p: float
    track: str
    has_boundary_layer: bool = True
    newton_iterations: int = 0
    closed_form: Optional[ClosedFormSolution] = None
    diagnostics: Optional[ValidationReport] = None


# ---------------------------------------------------------------------------
# the problem driver
# ---------------------------------------------------------------------------


class HalfspaceProblem:
    """Evaluates and solves one half-space penetration problem."""

    def __init__(self, spec: ProblemSpec):
        self.spec = spec
        self.model = ConstitutiveModel(spec.reference, spec.material)
        self.interface = spec.interface
        ref, mat = spec.reference, spec.material
        self._kappa0 = 1.0 - ref.v_s0**2 * mat.c_s - ref.v_f0**2 * mat.c_f
        if self._kappa0 <= 0.0:
            raise UnphysicalStateError(
                "reference compressibility sum 1 - sum v_a0^2 c_a must stay positive"
            )
        #: pressure carried by the uniform reference state under load p_i
        self.p_far_ref = spec.interface.p_i / self._kappa0

    # -- saturation elimination (vectorized) -----------------------------------
    #
    # The solver works throughout in deviations w = rho_s - rho_s0. Boundary
    # layers can be ten orders of magnitude smaller than the densities, so
    # forming rho_s0 + w and subtracting again would quantize the signal to
    # the ulp of the reference density; every cancellation below is done in
    # closed form instead.

    def _saturated_deviation(self, w):
        """Fluid-density deviation delta_f saturating the pores at solid deviation w.

        Closed-form root of the saturation constraint under the linear
        true-density laws, arranged so the result scales with w (the
        reference-saturation identity cancels exactly).
        """
        ref, mat = self.spec.reference, self.spec.material
        w = np.asarray(w, dtype=float)
        gap0 = ref.rhat_s0 - ref.rho_s0
        gap = gap0 + (mat.c_s - 1.0) * w
        rhat_s = ref.rhat_s0 + mat.c_s * w
        if np.any(rhat_s <= 0.0) or np.any(gap <= 0.0):
            raise UnphysicalStateError(
                "solid density leaves no pore space; saturation impossible"
            )
        sat0 = ref.rhat_f0 * gap0 - ref.rho_f0 * ref.rhat_s0
        den = rhat_s - mat.c_f * gap
        delta_f = (sat0 + w * (ref.rhat_f0 * (mat.c_s - 1.0) - ref.rho_f0 * mat.c_s)) / den
        if np.any(ref.rho_f0 + delta_f <= 0.0):
            raise UnphysicalStateError("saturating fluid density became nonpositive")
        return delta_f if delta_f.ndim else float(delta_f)

    def saturated_fluid_density(self, rho_s):
        """Fluid density saturating the pores, for scalars or arrays."""
        ref = self.spec.reference
        rho_s = np.asarray(rho_s, dtype=float)
        out = ref.rho_f0 + self._saturated_deviation(rho_s - ref.rho_s0)
        return out if np.ndim(out) else float(out)

    # -- reduced force balance and its integral --------------------------------

    def normal_form_rhs(self, rho_s, rho_f, c: float):
        """Reduced right-hand side F(rho_s, rho_f, c) of the normal-form ODE [Pa].

        Sum of thermodynamic pressures plus the saturation-pressure term
        with the fluid first integral substituted, minus the incumbent
        pressure; the gradient stress bracket of an equilibrium profile
        equals this pointwise.
        """
        model, mat = self.model, self.spec.material
        state = MixtureState(rho_s, rho_f, 0.0)
        p_s, p_f = model.thermodynamic_pressures(state)
        v_s = model.volume_fraction("s", rho_s)
        v_f = model.volume_fraction("f", rho_f)
        beta_f = 1.0 - v_f * mat.c_f
        if np.any(np.asarray(beta_f) == 0.0):
            raise UnphysicalStateError("fluid compressibility factor vanished")
        kappa = 1.0 - v_s**2 * mat.c_s - v_f**2 * mat.c_f
        rhat_f = model.true_density("f", rho_f)
        eps_f = model.energy_slope_f(state)
        return p_s + p_f + (kappa / beta_f) * (c - eps_f) * rhat_f - self.interface.p_i

    def _df_ds(self, w, c: float):
        """d/ds of F(s, rho_f_sat(s), c) along saturation, analytic [J/kg].

        ``w`` is the solid-density deviation s - rho_s0.
        """
        ref, mat = self.spec.reference, self.spec.material
        w = np.asarray(w, dtype=float)
        delta_f = self._saturated_deviation(w)
        rhat_s = ref.rhat_s0 + mat.c_s * w
        rhat_f = ref.rhat_f0 + mat.c_f * delta_f
        v_s = (ref.rho_s0 + w) / rhat_s
        v_f = (ref.rho_f0 + delta_f) / rhat_f
        beta_s = 1.0 - v_s * mat.c_s
        beta_f = 1.0 - v_f * mat.c_f
        big_r = (rhat_f / rhat_s) * (beta_s / beta_f)  # -d rho_f / d rho_s
        m = self.model
        eps_f = mat.eps_sf * w + mat.eps_ff * delta_f
        d_eps_f = mat.eps_sf - mat.eps_ff * big_r
        d_psum = (m.a_ss + m.a_fs) - (m.a_sf + m.a_ff) * big_r
        d_rhat_f = -mat.c_f * big_r
        d_v_s = beta_s / rhat_s
        d_v_f = -big_r * beta_f / rhat_f
        d_beta_f = -mat.c_f * d_v_f
        kappa = 1.0 - v_s**2 * mat.c_s - v_f**2 * mat.c_f
        d_kappa = -2.0 * v_s * mat.c_s * d_v_s - 2.0 * v_f * mat.c_f * d_v_f
        phi = kappa / beta_f
        d_phi = d_kappa / beta_f - kappa * d_beta_f / beta_f**2
        return (
            d_psum
            + d_phi * (c - eps_f) * rhat_f
            - phi * d_eps_f * rhat_f
            + phi * (c - eps_f) * d_rhat_f
        )

    def linearized_stiffness(self, c: float) -> float:
        """Slope of the reduced force balance at the reference state [J/kg]."""
        return float(self._df_ds(0.0, c))

    def restoring_term(self, rho_s: float, c: float) -> float:
        """Restoring term G(rho_s, c) of the reduced ODE [J/kg].

        Adaptive (Gauss-Kronrod) quadrature of (1/s) dF/ds from the
        reference density, so G(rho_s0, c) = 0; the antiderivative constant
        is absorbed into g1. For density-preserving constituents this is
        exactly L ln(rho_s / rho_s0).
        """
        ref = self.spec.reference
        w_up = rho_s - ref.rho_s0
        if w_up == 0.0:
            return 0.0

        def integrand(t):
            # unit-interval substitution keeps the adaptive rule well scaled
            # even for densities a hair away from the reference
            w = w_up * t
            return w_up * self._df_ds(w, c) / (ref.rho_s0 + w)

        with warnings.catch_warnings():
            warnings.simplefilter("error", integrate.IntegrationWarning)
            try:
                value, abserr = integrate.quad(
                    integrand, 0.0, 1.0, epsabs=0.0, epsrel=1e-10, limit=200
                )
            except integrate.IntegrationWarning as exc:
                raise QuadratureError(
                    f"restoring-term quadrature failed at rho_s = {rho_s:g}: {exc}"
                ) from exc
        floor = 1e-14 * (abs(value) + self.interface.p_i / ref.rho_s0 + 1.0)
        if abserr > max(1e-9 * abs(value), floor):
            raise QuadratureError(
                f"restoring-term quadrature error {abserr:g} exceeds tolerance "
                f"at rho_s = {rho_s:g} (value {value:g})"
            )
        return float(value)

    def _restoring_batch(self, w: np.ndarray, c: float) -> np.ndarray:
        """Fixed-order Gauss-Legendre evaluation of G at many solid deviations.

        Matches ``restoring_term`` to near machine precision on the narrow
        density ranges of a boundary layer (regression-tested); used inside
        the Newton loop where per-node adaptive calls would dominate.
        """
        ref = self.spec.reference
        w = np.asarray(w, dtype=float)
        nodes, wts = _gauss()
        half = 0.5 * w
        w_nodes = half[:, None] * (1.0 + nodes[None, :])
        vals = self._df_ds(w_nodes.ravel(), c).reshape(w_nodes.shape)
        vals = vals / (ref.rho_s0 + w_nodes)
        return (vals @ wts) * half

    def _restoring_slope(self, w, c: float):
        """dG/d rho_s = (1/rho_s) dF/ds at solid deviation w, analytic."""
        return self._df_ds(w, c) / (
            self.spec.reference.rho_s0 + np.asarray(w, dtype=float)
        )

    def _orbit_energy(self, w0: float, w_star: float, c: float, g1: float) -> float:
        """Integral of (G + g1) between the far-field and face deviations [Pa].

        First integral of the reduced ODE: (lambda_s/2) u'(0)^2 equals this
        quantity for the orbit that comes to rest at the far field, giving
        a stencil-free face derivative. Uses integration by parts so only
        the analytic slope of F needs quadrature.
        """
        g_pair = self._restoring_batch(np.array([w0, w_star]), c)
        nodes, wts = _gauss()
        half = 0.5 * (w0 - w_star)
        mid = 0.5 * (w0 + w_star)
        w_nodes = mid + half * nodes
        integrand = w_nodes * self._df_ds(w_nodes, c) / (
            self.spec.reference.rho_s0 + w_nodes
        )
        tail = float(np.dot(integrand, wts) * half)
        return (
            w0 * float(g_pair[0]) - w_star * float(g_pair[1]) - tail
            + g1 * (w0 - w_star)
        )

    # -- closed-form scalars ----------------------------------------------------

    def saturation_stiffness(self) -> float:
        return saturation_stiffness(self.spec.material, self.spec.reference)

    def attenuation_length(self) -> float:
        return attenuation_length(self.spec.material, self.spec.reference)

    def boundary_density_drop(self) -> float:
        return boundary_density_drop(self.spec.material, self.spec.reference, self.interface)

    def boundary_amplitude(self, exact: bool = True) -> float:
        return boundary_amplitude(
            self.spec.material, self.spec.reference, self.interface, exact=exact
        )

    def _x_scale(self) -> float:
        """Length scale for grids and residual scaling."""
        mat = self.spec.material
        if mat.lambda_s > 0.0:
            stiffness = self.linearized_stiffness(self.p_far_ref / self.spec.reference.rhat_f0)
            if stiffness > 0.0:
                return float(np.sqrt(self.spec.reference.rho_s0 * mat.lambda_s / stiffness))
        return self.spec.x_max / 10.0 if self.spec.x_max else 1.0

    def _grid_for(self, x0: float) -> tuple[np.ndarray, float]:
        x_max = self.spec.x_max
        if x_max is None:
            x_max = 10.0 * x0 if x0 > 0.0 else 1.0
        x = np.linspace(0.0, x_max, self.spec.n_nodes)
        return x, x[1] - x[0]

    def _grid(self) -> tuple[np.ndarray, float]:
        return self._grid_for(self._x_scale())

    # -- closed form -------------------------------------------------------------

    def closed_form_profile(self, amplitude: str = "exact") -> Profile:
        """Exponential boundary-layer profile for density-preserving constituents.

        ``amplitude`` selects the boundary amplitude: ``"exact"`` (root of
        the face flux condition, the default) or ``"linearized"``
        (-delta_rho_s). Pressure is reconstructed from the summed first
        integral with the linearization-consistent gradient-stress bracket,
        which the exponential solves exactly.
        """
        mat, ref = self.spec.material, self.spec.reference
        if mat.c_s != 0.0 or mat.c_f != 0.0:
            raise ValueError("closed_form_profile requires density-preserving constituents")
        if amplitude not in ("exact", "linearized"):
            raise ValueError("amplitude must be 'exact' or 'linearized'")
        p_i = self.interface.p_i
        c_const = p_i / ref.rhat_f0

        if mat.lambda_s == 0.0:
            if self.interface.d_coeff * p_i != 0.0:
                raise UnphysicalStateError(
                    "a double force cannot be supported without gradient energy"
                )
            stiffness = self.saturation_stiffness()
            solution = ClosedFormSolution(stiffness, 0.0, 0.0, 0.0)
            return self._uniform_profile(c_const, solution, track="closed-form")

        return self._closed_form_with_stiffness(
            self.saturation_stiffness(), amplitude, c_const
        )

    def _closed_form_with_stiffness(
        self, stiffness: float, amplitude: str, c_const: float
    ) -> Profile:
        """Exponential profile built from a given restoring stiffness.

        Split out so the effect of a mis-derived stiffness on the residual
        diagnostics can be demonstrated directly.
        """
        mat, ref = self.spec.material, self.spec.reference
        p_i = self.interface.p_i
        if stiffness <= 0.0:
            raise BranchingSolutionError(stiffness)
        x0 = float(np.sqrt(ref.rho_s0 * mat.lambda_s / stiffness))
        drive = self.interface.d_coeff * p_i
        drop = float(
            drive / ref.rho_s0 * np.sqrt(ref.rho_s0 / (mat.lambda_s * stiffness))
        )
        if amplitude == "linearized":
            c2 = -drop
        else:
            q = drop / ref.rho_s0
            disc = 1.0 - 4.0 * q
            if disc < 0.0:
                raise InterfaceOverloadError(
                    f"double-force drive needs delta_rho_s/rho_s0 = {q:g} <= 0.25"
                )
            c2 = float(-2.0 * drop / (1.0 + np.sqrt(disc)))
        x, _ = self._grid_for(x0)
        u = c2 * np.exp(-x / x0)
        d1 = -u / x0
        d2 = u / x0**2

        rho_s = ref.rho_s0 + u
        r_hat = ref.rhat_f0 / ref.rhat_s0
        rho_f = ref.rho_f0 - r_hat * u
        m = self.model
        df = rho_f - ref.rho_f0
        P_s = m.a_ss * u + m.a_sf * df
        P_f = m.a_fs * u + m.a_ff * df
        p = p_i - (P_s + P_f) + mat.lambda_s * ref.rho_s0 * d2
        profile = Profile(
            x=x,
            rho_s=rho_s,
            rho_f=rho_f,
            v_s=rho_s / ref.rhat_s0,
            v_f=rho_f / ref.rhat_f0,
            p=p,
            P_s=P_s,
            P_f=P_f,
            d1rho_s=d1,
            d2rho_s=d2,
            c_const=c_const,
            g1=0.0,
            far_rho_s=ref.rho_s0,
            far_rho_f=ref.rho_f0,
            far_p=p_i,
            track="closed-form",
            has_boundary_layer=(c2 != 0.0),
            closed_form=ClosedFormSolution(stiffness, x0, drop, c2),
        )
        profile.diagnostics = self.validate_profile(profile)
        return profile

    def _uniform_profile(
        self, c_const: float, solution: Optional[ClosedFormSolution], track: str,
        rho_s_value: Optional[float] = None, iterations: int = 0,
    ) -> Profile:
        """Profile with spatially constant fields (no boundary layer)."""
        ref = self.spec.reference
        x, _ = self._grid()
        rho_s0 = ref.rho_s0 if rho_s_value is None else rho_s_value
        rho_f0 = float(self.saturated_fluid_density(rho_s0))
        m = self.model
        state = MixtureState(rho_s0, rho_f0, 0.0)
        p_s, p_f = m.thermodynamic_pressures(state)
        kappa = (
            1.0
            - m.volume_fraction("s", rho_s0) ** 2 * self.spec.material.c_s
            - m.volume_fraction("f", rho_f0) ** 2 * self.spec.material.c_f
        )
        p_val = (self.interface.p_i - p_s - p_f) / kappa
        ones = np.ones_like(x)
        profile = Profile(
            x=x,
            rho_s=rho_s0 * ones,
            rho_f=rho_f0 * ones,
            v_s=m.volume_fraction("s", rho_s0) * ones,
            v_f=m.volume_fraction("f", rho_f0) * ones,
            p=p_val * ones,
            P_s=p_s * ones,
            P_f=p_f * ones,
            d1rho_s=np.zeros_like(x),
            d2rho_s=np.zeros_like(x),
            c_const=c_const,
            g1=-self.restoring_term(rho_s0, c_const),
            far_rho_s=rho_s0,
            far_rho_f=rho_f0,
            far_p=p_val,
            track=track,
            has_boundary_layer=False,
            newton_iterations=iterations,
            closed_form=solution,
        )
        profile.diagnostics = self.validate_profile(profile)
        return profile

    # -- finite-difference Newton solver ------------------------------------------

    def solve_compressible(self) -> Profile:
        """Finite-difference Newton solution of the reduced boundary-value problem.

        Unknowns are the nodal deviations of rho_s from reference plus the
        far-field offset and the two integration constants (c, g1).
        Equations: the interior ODE with second-order central differences;
        the face flux (double force) condition through the ODE's first
        integral (stencil-free, so no dispersion bias enters the layer
        amplitude); the fluid traction condition at the face with the
        pressure eliminated through the summed first integral; a
        decay-consistent Robin condition at the truncation point; the ODE
        fixed-point condition at the far-field density; and the
        consistency of c with the fluid first integral evaluated at the
        far field. Newton starts from the incompressible closed-form
        profile built with the same stiffnesses and damps by step halving
        (up to 30 times) on residual increase.
        """
        spec = self.spec
        mat, ref = spec.material, spec.reference
        p_i = self.interface.p_i
        d_drive = self.interface.d_coeff * p_i

        if mat.lambda_s == 0.0:
            if d_drive != 0.0:
                raise UnphysicalStateError(
                    "a double force cannot be supported without gradient energy"
                )
            return self._solve_uniform()

        c0 = self.p_far_ref * (1.0 - ref.v_f0 * mat.c_f) / ref.rhat_f0
        stiff0 = self.linearized_stiffness(c0)
        if stiff0 <= 0.0:
            raise BranchingSolutionError(stiff0)
        x0_est = float(np.sqrt(ref.rho_s0 * mat.lambda_s / stiff0))

        x, h = self._grid()
        # initial guess: the incompressible closed form with the same stiffnesses
        drop_est = (
            d_drive / ref.rho_s0 * np.sqrt(ref.rho_s0 / (mat.lambda_s * stiff0))
            if d_drive != 0.0
            else 0.0
        )
        u = -drop_est * np.exp(-x / x0_est)
        z = np.concatenate([u, [0.0, c0, 0.0]])

        scales = self._solver_scales(x0_est, drop_est, stiff0)
        residual = self._residual_builder(x, h, scales)

        r = residual(z)
        norm = float(np.max(np.abs(r)))
        iterations = 0
        while norm > spec.newton_tol and iterations < spec.newton_max_iter:
            jac = self._jacobian(z, x, h, scales, residual, r)
            delta = spsolve(jac.tocsr(), r)
            if not np.all(np.isfinite(delta)):
                raise SolverError(norm, iterations, "Newton step is not finite")
            step = 1.0
            for _ in range(31):
                z_try = z - step * delta
                try:
                    r_try = residual(z_try)
                    norm_try = float(np.max(np.abs(r_try)))
                except UnphysicalStateError:
                    norm_try = np.inf
                if norm_try < norm:
                    break
                step *= 0.5
            else:
                raise SolverError(norm, iterations)
            z, r, norm = z_try, r_try, norm_try
            iterations += 1
        if norm > spec.newton_tol:
            raise SolverError(norm, iterations)

        return self._profile_from_solution(z, x, h, iterations)

    def _solve_uniform(self) -> Profile:
        """Classical limit lambda_s = 0: the only solution is uniform."""
        ref = self.spec.reference
        w = 0.0
        iterations = 0
        # scalar Newton on the fluid traction condition at the face
        for _ in range(self.spec.newton_max_iter + 1):
            res = self._uniform_face_residual(w)
            if abs(res) <= self.spec.newton_tol * max(self.interface.p_i, 1.0):
                break
            step = 1e-7 * ref.rho_s0
            slope = (self._uniform_face_residual(w + step) - res) / step
            w -= res / slope
            iterations += 1
        else:
            raise SolverError(abs(res), iterations, "uniform-state Newton failed")
        c_const = self._far_integral(w)
        return self._uniform_profile(
            c_const, None, track="compressible",
            rho_s_value=ref.rho_s0 + w, iterations=iterations,
        )

    def _deviation_state(self, w):
        """Deviation-exact pointwise quantities at solid deviation w.

        Returns (delta_f, v_s, v_f, beta_f, kappa, rhat_f, P_s, P_f, eps_f);
        every entry is built from exact deviations so the result is
        meaningful even when |w| is ten orders below the densities.
        """
        ref, mat = self.spec.reference, self.spec.material
        m = self.model
        delta_f = self._saturated_deviation(w)
        rhat_s = ref.rhat_s0 + mat.c_s * np.asarray(w, dtype=float)
        rhat_f = ref.rhat_f0 + mat.c_f * delta_f
        v_s = (ref.rho_s0 + np.asarray(w, dtype=float)) / rhat_s
        v_f = (ref.rho_f0 + delta_f) / rhat_f
        beta_f = 1.0 - v_f * mat.c_f
        kappa = 1.0 - v_s**2 * mat.c_s - v_f**2 * mat.c_f
        P_s = m.a_ss * np.asarray(w, dtype=float) + m.a_sf * delta_f
        P_f = m.a_fs * np.asarray(w, dtype=float) + m.a_ff * delta_f
        eps_f = mat.eps_sf * np.asarray(w, dtype=float) + mat.eps_ff * delta_f
        return delta_f, v_s, v_f, beta_f, kappa, rhat_f, P_s, P_f, eps_f

    def _uniform_face_residual(self, w: float) -> float:
        """Fluid traction condition on a uniform state at solid deviation w."""
        p_i = self.interface.p_i
        _, _, v_f, beta_f, kappa, _, P_s, P_f, _ = self._deviation_state(w)
        p_dev = (p_i * (1.0 - kappa) - P_s - P_f) / kappa
        return float(P_f + v_f * beta_f * p_dev - p_i * v_f**2 * self.spec.material.c_f)

    def _far_integral(self, w: float) -> float:
        """Fluid first integral at the far-field state with p from the summed integral."""
        p_i = self.interface.p_i
        _, _, v_f, beta_f, kappa, rhat_f, P_s, P_f, eps_f = self._deviation_state(w)
        p_val = p_i + (p_i * (1.0 - kappa) - P_s - P_f) / kappa
        return float(eps_f + (p_val / rhat_f) * beta_f)

    # residual assembly ---------------------------------------------------------

    def _solver_scales(self, x0_est: float, drop_est: float, stiff0: float) -> dict[str, float]:
        """Per-block residual scales, relative to the problem's own drive.

        With a double-force drive the pressure-like residual signal is of
        order stiffness * drop; without one (pure compression under p_i)
        it is of order p_i. Scaling this way makes the dimensionless
        Newton tolerance act relative to the solution amplitude, so tiny
        boundary layers are resolved as accurately as large ones.
        """
        ref = self.spec.reference
        p_i = self.interface.p_i
        drive = abs(self.interface.d_coeff) * p_i
        drop_est = abs(drop_est)
        p_norm = stiff0 * drop_est if drop_est > 0.0 else max(p_i, 1.0)
        flux_den = drive if drive > 0.0 else p_norm * max(x0_est, 1e-12)
        u_scale = max(drop_est, p_norm / stiff0)
        return {
            "interior": ref.rho_s0 / p_norm,
            "flux": 1.0 / flux_den,
            "bc2": 1.0 / p_norm,
            "robin": x0_est / u_scale,
            "fp": ref.rho_s0 / p_norm,
            "c": ref.rhat_f0 / p_norm,
            "u_scale": u_scale,
        }

    def _residual_builder(self, x, h, scales):
        spec = self.spec
        mat, ref = spec.material, spec.reference
        lam = mat.lambda_s
        p_i = self.interface.p_i
        d_drive = self.interface.d_coeff * p_i
        n = x.size
        m = self.model

        def residual(z: np.ndarray) -> np.ndarray:
            u = z[:n]
            u_star, c, g1 = z[n], z[n + 1], z[n + 2]
            rho = ref.rho_s0 + u
            rho_star = ref.rho_s0 + u_star
            if np.any(rho <= 0.0) or rho_star <= 0.0:
                raise UnphysicalStateError("solid density left the positive range")
            r = np.empty(n + 3)
            g_nodes = self._restoring_batch(u, c)
            # interior ODE
            lap = (u[:-2] - 2.0 * u[1:-1] + u[2:]) / h**2
            r[1:n - 1] = (lam * lap - g_nodes[1:n - 1] - g1) * scales["interior"]
            # face flux (double force) condition via the orbit energy: the
            # first integral of the ODE supplies the face derivative without
            # a one-sided stencil, so no dispersion bias enters the amplitude
            if d_drive == 0.0:
                # zero flux: the only orbit at rest at the face is uniform
                d1_0 = 0.0
                r[0] = (u[0] - u_star) / scales["u_scale"]
            else:
                psi = self._orbit_energy(u[0], u_star, c, g1)
                if psi < 0.0:
                    raise UnphysicalStateError("face orbit energy became negative")
                d1_0 = np.sign(u_star - u[0]) * np.sqrt(2.0 * psi / lam)
                r[0] = (lam * rho[0] * d1_0 - d_drive) * scales["flux"]
            # decay-consistent Robin closure at the truncation point
            slope_star = self._restoring_slope(u_star, c)
            kappa_decay = np.sqrt(max(slope_star, 0.0) / lam)
            d1_x = -np.dot(_D1_EDGE, u[-1:-5:-1]) / h
            r[n - 1] = (d1_x + kappa_decay * (u[n - 1] - u_star)) * scales["robin"]
            # fluid traction at the face, pressure from the summed integral
            r[n] = self._face_fluid_residual(
                u[0], u_star, c, g1, float(g_nodes[0]), d1_0
            ) * scales["bc2"]
            # far-field fixed point of the ODE
            r[n + 1] = (float(self._restoring_batch(np.array([u_star]), c)[0]) + g1) * scales["fp"]
            # consistency of c with the fluid first integral at the far field
            r[n + 2] = (c - self._far_integral(u_star)) * scales["c"]
            return r

        return residual

    def _face_fluid_residual(
        self, w0: float, u_star: float, c: float, g1: float,
        g_face: float, d1_face: float,
    ) -> float:
        """Fluid traction condition at x = 0 with p eliminated pointwise.

        Written in the deviation form P_f + v_f beta_f (p - p_i)
        - p_i v_f^2 c_f so no large quantities cancel. The gradient-stress
        bracket enters through the ODE identity rho_s (G + g1) for its
        second-derivative part and the orbit-energy face derivative for
        the squared-slope part, keeping the face closure stencil-free.
        """
        mat, ref = self.spec.material, self.spec.reference
        p_i = self.interface.p_i
        _, _, v_f, beta_f, kappa, _, P_s, P_f, _ = self._deviation_state(w0)
        bracket = (ref.rho_s0 + w0) * (g_face + g1) - 0.5 * mat.lambda_s * d1_face**2
        p_dev = (p_i * (1.0 - kappa) - P_s - P_f + bracket) / kappa
        return float(P_f + v_f * beta_f * p_dev - p_i * v_f**2 * mat.c_f)

    def _jacobian(self, z, x, h, scales, residual, r0) -> lil_matrix:
        """Sparse Jacobian: analytic tridiagonal core, local differences elsewhere."""
        spec = self.spec
        mat, ref = spec.material, spec.reference
        lam = mat.lambda_s
        n = x.size
        u = z[:n]
        u_star, c, g1 = z[n], z[n + 1], z[n + 2]
        rho = ref.rho_s0 + u
        jac = lil_matrix((n + 3, n + 3))

        # interior rows: analytic
        slope = self._restoring_slope(u, c)
        si = scales["interior"]
        for i in range(1, n - 1):
            jac[i, i - 1] = lam / h**2 * si
            jac[i, i + 1] = lam / h**2 * si
            jac[i, i] = (-2.0 * lam / h**2 - slope[i]) * si
            jac[i, n + 2] = -si
        # dG/dc column by one batched finite difference
        dc = 1e-6 * max(abs(c), self.interface.p_i / ref.rhat_f0, 1.0)
        g_base = self._restoring_batch(u, c)
        g_pert = self._restoring_batch(u, c + dc)
        dg_dc = (g_pert - g_base) / dc
        for i in range(1, n - 1):
            jac[i, n + 1] = -dg_dc[i] * si

        # face rows: the flux and fluid-traction closures are stencil-free
        # functions of (u_0, u_star, c, g1); differentiate them locally
        d_drive = self.interface.d_coeff * self.interface.p_i
        u_scale = scales["u_scale"]

        def face_pair(w0, us, cc, gg):
            g_face = float(self._restoring_batch(np.array([w0]), cc)[0])
            if d_drive == 0.0:
                d1_0 = 0.0
                flux = (w0 - us) / u_scale
            else:
                psi = self._orbit_energy(w0, us, cc, gg)
                d1_0 = np.sign(us - w0) * np.sqrt(2.0 * max(psi, 0.0) / lam)
                flux = (lam * (ref.rho_s0 + w0) * d1_0 - d_drive) * scales["flux"]
            bc2 = self._face_fluid_residual(w0, us, cc, gg, g_face, d1_0) * scales["bc2"]
            return flux, bc2

        dw = 1e-6 * u_scale
        p_norm = ref.rho_s0 / scales["interior"]
        dg = 1e-6 * max(abs(g1), p_norm / ref.rho_s0, 1e-12)
        base_flux, base_bc2 = face_pair(u[0], u_star, c, g1)
        for col, args, step in (
            (0, (u[0] + dw, u_star, c, g1), dw),
            (n, (u[0], u_star + dw, c, g1), dw),
            (n + 1, (u[0], u_star, c + dc, g1), dc),
            (n + 2, (u[0], u_star, c, g1 + dg), dg),
        ):
            fx, b2 = face_pair(*args)
            jac[0, col] = (fx - base_flux) / step
            jac[n, col] = (b2 - base_bc2) / step

        # Robin row
        sr = scales["robin"]
        slope_star = self._restoring_slope(u_star, c)
        kappa_decay = float(np.sqrt(max(slope_star, 0.0) / lam))
        for k in range(4):
            jac[n - 1, n - 1 - k] = -_D1_EDGE[k] / h * sr
        jac[n - 1, n - 1] += kappa_decay * sr

        def robin_val(us, cc):
            sl = self._restoring_slope(us, cc)
            kd = np.sqrt(max(sl, 0.0) / lam)
            d1_x = -np.dot(_D1_EDGE, u[-1:-5:-1]) / h
            return (d1_x + kd * (u[n - 1] - us)) * sr

        dus = dw
        jac[n - 1, n] = (robin_val(u_star + dus, c) - robin_val(u_star, c)) / dus
        jac[n - 1, n + 1] = (robin_val(u_star, c + dc) - robin_val(u_star, c)) / dc

        # fixed-point row
        sp = scales["fp"]
        jac[n + 1, n] = self._restoring_slope(u_star, c) * sp
        g_star = float(self._restoring_batch(np.array([u_star]), c)[0])
        g_star_dc = float(self._restoring_batch(np.array([u_star]), c + dc)[0])
        jac[n + 1, n + 1] = (g_star_dc - g_star) / dc * sp
        jac[n + 1, n + 2] = sp

        # c-consistency row
        sc = scales["c"]
        jac[n + 2, n + 1] = sc
        far0 = self._far_integral(u_star)
        jac[n + 2, n] = -(self._far_integral(u_star + dus) - far0) / dus * sc
        return jac

    def _profile_from_solution(self, z, x, h, iterations) -> Profile:
        ref, mat = self.spec.reference, self.spec.material
        p_i = self.interface.p_i
        n = x.size
        u = z[:n]
        u_star, c, g1 = z[n], z[n + 1], z[n + 2]
        d1, _ = derivative_arrays(u, h)
        # the ODE identity supplies a smoother second derivative than a
        # boundary stencil and is what the solve actually enforced
        d2 = (self._restoring_batch(u, c) + g1) / mat.lambda_s
        delta_f, v_s, v_f, _, kappa, _, P_s, P_f, _ = self._deviation_state(u)
        rho_s = ref.rho_s0 + u
        rho_f = ref.rho_f0 + delta_f
        bracket = hyperstress_bracket_1d(rho_s, d1, d2, mat.lambda_s)
        p = p_i + (p_i * (1.0 - kappa) - P_s - P_f + bracket) / kappa

        rho_star = float(ref.rho_s0 + u_star)
        df_star, _, _, _, kappa_star, _, ps_star, pf_star, _ = self._deviation_state(
            float(u_star)
        )
        rho_f_star = float(ref.rho_f0 + df_star)
        p_star = p_i + (p_i * (1.0 - kappa_star) - ps_star - pf_star) / kappa_star

        profile = Profile(
            x=x,
            rho_s=rho_s,
            rho_f=rho_f,
            v_s=v_s,
            v_f=v_f,
            p=p,
            P_s=P_s,
            P_f=P_f,
            d1rho_s=d1,
            d2rho_s=d2,
            c_const=float(c),
            g1=float(g1),
            far_rho_s=rho_star,
            far_rho_f=rho_f_star,
            far_p=float(p_star),
            track="compressible",
            has_boundary_layer=(self.interface.d_coeff * self.interface.p_i != 0.0),
            newton_iterations=iterations,
        )
        profile.diagnostics = self.validate_profile(profile)
        return profile

    # -- validation ---------------------------------------------------------------

    def validate_profile(self, profile: Profile) -> ValidationReport:
        """Residual maxima of a profile against the equilibrium system.

        Reports, all dimensionless: the saturation constraint; the spread
        of the fluid first integral; the summed first integral and the
        normal-form balance (with the linearization-consistent gradient
        bracket); the reduced ODE against the restoring term linearized at
        reference; and the three boundary conditions at the face and at
        the far-field limit state. Never raises on a bad profile; large
        numbers are the report.
        """
        spec = self.spec
        mat, ref = spec.material, spec.reference
        m = self.model
        p_i = self.interface.p_i
        p_scale = max(p_i, 1.0)

        rho_s, rho_f, p = profile.rho_s, profile.rho_f, profile.p
        d1, d2 = profile.d1rho_s, profile.d2rho_s
        du_s = rho_s - ref.rho_s0
        du_f = rho_f - ref.rho_f0

        # saturation, cleared of denominators then scaled back to density units
        rhat_s = m.true_density("s", rho_s)
        rhat_f = m.true_density("f", rho_f)
        sat = np.abs(rho_s * rhat_f + rho_f * rhat_s - rhat_f * rhat_s) / rhat_s
        saturation_abs = float(np.max(sat))

        # fluid first integral (exact form) along the profile
        state = MixtureState(rho_s, rho_f, p)
        v_f = rho_f / rhat_f
        integral = m.energy_slope_f(state) + (p / rhat_f) * (1.0 - v_f * mat.c_f)
        mean = float(np.mean(integral))
        denom = max(abs(mean), p_scale / ref.rhat_f0)
        spread = float(np.max(integral) - np.min(integral)) / denom

        # linearization-consistent summed first integral
        P_s, P_f = profile.P_s, profile.P_f
        beta_s0 = 1.0 - ref.v_s0 * mat.c_s
        beta_f0 = 1.0 - ref.v_f0 * mat.c_f
        dv_s = beta_s0 * du_s / ref.rhat_s0
        dv_f = beta_f0 * du_f / ref.rhat_f0
        dp = p - self.p_far_ref
        bracket_lin = mat.lambda_s * ref.rho_s0 * d2
        summed = (
            self._kappa0 * dp
            - 2.0 * self.p_far_ref * (mat.c_s * ref.v_s0 * dv_s + mat.c_f * ref.v_f0 * dv_f)
            + P_s + P_f - bracket_lin
        )
        summed_rel = float(np.max(np.abs(summed))) / p_scale

        # reduced ODE with the restoring term linearized at reference
        stiff = self.linearized_stiffness(profile.c_const)
        ode = mat.lambda_s * d2 - stiff * du_s / ref.rho_s0 - profile.g1
        ode_rel = float(np.max(np.abs(ode))) * ref.rho_s0 / p_scale

        # normal-form balance: linearized bracket against the exact F
        f_vals = self.normal_form_rhs(rho_s, rho_f, profile.c_const)
        normal = mat.lambda_s * ref.rho_s0 * d2 - f_vals
        normal_rel = float(np.max(np.abs(normal))) / p_scale

        x0 = profile.closed_form.x0 if profile.closed_form else self._x_scale()
        flux_scale = max(abs(self.interface.d_coeff) * p_i, p_scale * max(x0, 1e-12))

        bc_face = self._bc_residuals_lin(
            rho_s[0], rho_f[0], p[0], d1[0], d2[0],
            flux_target=self.interface.d_coeff * p_i,
        )
        bc_far = self._bc_residuals_lin(
            profile.far_rho_s, profile.far_rho_f, profile.far_p, 0.0, 0.0,
            flux_target=0.0,
        )
        bc_face = (bc_face[0] / p_scale, bc_face[1] / p_scale, bc_face[2] / flux_scale)
        bc_far = (bc_far[0] / p_scale, bc_far[1] / p_scale, bc_far[2] / flux_scale)

        return ValidationReport(
            saturation_abs=saturation_abs,
            saturation=saturation_abs / ref.rhat_f0,
            fluid_integral_spread=spread,
            summed_integral=summed_rel,
            ode=ode_rel,
            normal_form=normal_rel,
            bc_face=bc_face,
            bc_far=bc_far,
        )

    def _bc_residuals_lin(
        self, rho_s, rho_f, p, d1, d2, flux_target: float
    ) -> tuple[float, float, float]:
        """Boundary residual triple, linearization-consistent forms.

        The solid and fluid traction conditions are expanded to first
        order about the reference state at the far-field pressure; the
        flux (double force) condition is kept exact since an equilibrium
        profile satisfies it exactly.
        """
        mat, ref = self.spec.material, self.spec.reference
        m = self.model
        p_i = self.interface.p_i
        du_s = rho_s - ref.rho_s0
        du_f = rho_f - ref.rho_f0
        dp = p - self.p_far_ref
        state = MixtureState(rho_s, rho_f, p)
        P_s, P_f = m.thermodynamic_pressures(state)
        beta_s0 = 1.0 - ref.v_s0 * mat.c_s
        beta_f0 = 1.0 - ref.v_f0 * mat.c_f
        bracket_lin = mat.lambda_s * ref.rho_s0 * d2

        # solid: -(P_s + p v_s beta_s) + bracket + v_s p_i, linearized
        t_s0 = ref.v_s0 * (beta_s0 * self.p_far_ref - p_i)
        dts_drho = (beta_s0 / ref.rhat_s0) * (beta_s0 * self.p_far_ref - p_i) \
            - ref.v_s0 * mat.c_s * beta_s0 / ref.rhat_s0 * self.p_far_ref
        r1 = -P_s - (t_s0 + dts_drho * du_s + ref.v_s0 * beta_s0 * dp) + bracket_lin
        # fluid: P_f + p v_f beta_f - v_f p_i, linearized
        t_f0 = ref.v_f0 * (beta_f0 * self.p_far_ref - p_i)
        dtf_drho = (beta_f0 / ref.rhat_f0) * (beta_f0 * self.p_far_ref - p_i) \
            - ref.v_f0 * mat.c_f * beta_f0 / ref.rhat_f0 * self.p_far_ref
        r2 = P_f + t_f0 + dtf_drho * du_f + ref.v_f0 * beta_f0 * dp
        # flux: exact
        r3 = mat.lambda_s * rho_s * d1 - flux_target
        return float(r1), float(r2), float(r3)
