"""Pointwise constitutive theory of a saturated two-constituent mixture.

A solid matrix (``"s"``) and a pore fluid (``"f"``) are described by their
apparent densities rho_a (mass of constituent per mixture volume). Each
constituent has a true density rhat_a (mass per volume of the constituent
itself), related through the volume fraction v_a = rho_a / rhat_a.
Saturation means the fluid fills the entire pore space, v_s + v_f = 1, and
is enforced by a pressure-like Lagrange multiplier p.

The stored energy is quadratic about a saturated, stress-free reference
state, and true densities respond linearly to apparent densities. From
these two laws the module evaluates thermodynamic (effective) pressures,
partial pressures including the compressibility (Biot-type) correction,
the volume-exchange force coefficient between the constituents, and the
first integral of the summed equilibrium equations.

Units are SI throughout: densities kg/m^3, pressures Pa, energy curvatures
eps_ab in Pa*m^6/kg^2 (energy per unit mixture volume, per density pair).

All operations are pure functions of immutable inputs and accept numpy
arrays in place of scalars wherever the physics is pointwise.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .errors import (
    DegenerateMaterialError,
    SaturationInfeasibleError,
    SingularCompressibilityError,
    UnphysicalStateError,
)

Constituent = Literal["s", "f"]
ArrayLike = Union[float, np.ndarray]

#: Relative tolerance on the reference saturation identity.
SATURATION_RTOL = 1e-12


@dataclass(frozen=True)
class ReferenceState:
    """Saturated, stress-free reference configuration.

    Attributes
    ----------
    rho_s0, rho_f0 : float
        Apparent densities of solid and fluid [kg/m^3].
    rhat_s0, rhat_f0 : float
        True densities of solid and fluid [kg/m^3].

    The four densities must satisfy the saturation identity
    ``rho_s0*rhat_f0 + rho_f0*rhat_s0 == rhat_f0*rhat_s0`` (equivalent to
    v_s0 + v_f0 == 1) to within a relative tolerance of 1e-12.
    """

    rho_s0: float
    rho_f0: float
    rhat_s0: float
    rhat_f0: float

    def __post_init__(self):
        for name in ("rho_s0", "rho_f0", "rhat_s0", "rhat_f0"):
            if not getattr(self, name) > 0.0:
                raise UnphysicalStateError(f"{name} must be strictly positive")
        lhs = self.rho_s0 * self.rhat_f0 + self.rho_f0 * self.rhat_s0
        rhs = self.rhat_f0 * self.rhat_s0
        if abs(lhs - rhs) > SATURATION_RTOL * abs(rhs):
            raise UnphysicalStateError(
                "reference state is not saturated: "
                f"rho_s0*rhat_f0 + rho_f0*rhat_s0 = {lhs:.17g} != {rhs:.17g}"
            )
        for name, frac in (("v_s0", self.v_s0), ("v_f0", self.v_f0)):
            if not 0.0 < frac < 1.0:
                raise UnphysicalStateError(f"{name} = {frac:g} is outside (0, 1)")

    @classmethod
    def saturated(cls, v_s0: float, rhat_s0: float, rhat_f0: float) -> "ReferenceState":
        """Build a reference state from the solid volume fraction and true densities."""
        if not 0.0 < v_s0 < 1.0:
            raise UnphysicalStateError(f"v_s0 = {v_s0:g} is outside (0, 1)")
        return cls(
            rho_s0=v_s0 * rhat_s0,
            rho_f0=(1.0 - v_s0) * rhat_f0,
            rhat_s0=rhat_s0,
            rhat_f0=rhat_f0,
        )

    @property
    def v_s0(self) -> float:
        return self.rho_s0 / self.rhat_s0

    @property
    def v_f0(self) -> float:
        return self.rho_f0 / self.rhat_f0

    @property
    def rho0(self) -> float:
        """Mixture density at reference [kg/m^3]."""
        return self.rho_s0 + self.rho_f0

    def xi0(self, a: Constituent) -> float:
        """Reference mass fraction of constituent ``a``."""
        return self.ref_rho(a) / self.rho0

    def ref_rho(self, a: Constituent) -> float:
        return self.rho_s0 if a == "s" else self.rho_f0

    def ref_rhat(self, a: Constituent) -> float:
        return self.rhat_s0 if a == "s" else self.rhat_f0


@dataclass(frozen=True)
class MaterialModel:
    """Quadratic stored energy plus linear compressibility laws.

    Attributes
    ----------
    eps_ss, eps_ff, eps_sf : float
        Second derivatives of the stored energy density with respect to the
        apparent densities, evaluated at reference [Pa*m^6/kg^2]. The
        constant and linear terms of the energy vanish by the stress-free
        choice of reference.
    c_s, c_f : float
        Slopes d(rhat_a)/d(rho_a) of the true-density laws, dimensionless,
        >= 0. Zero means a true density-preserving constituent.
    lambda_s : float
        Gradient-energy coefficient of the solid [Pa*m^8/kg^2], >= 0. The
        energy carries lambda_s/2 * |grad rho_s|^2; zero recovers the
        classical (first-gradient) theory.

    A model whose energy Hessian is indefinite is accepted with a warning
    (the branching regime can then be explored) and reports
    ``is_stable == False``.
    """

    eps_ss: float
    eps_ff: float
    eps_sf: float = 0.0
    c_s: float = 0.0
    c_f: float = 0.0
    lambda_s: float = 0.0

    def __post_init__(self):
        if self.c_s < 0.0 or self.c_f < 0.0:
            raise UnphysicalStateError("compressibility slopes c_s, c_f must be >= 0")
        if self.lambda_s < 0.0:
            raise UnphysicalStateError("gradient-energy coefficient lambda_s must be >= 0")
        if not self.is_stable:
            warnings.warn(
                "energy Hessian is not positive semidefinite; "
                "the decaying boundary-layer branch may not exist",
                stacklevel=2,
            )

    @property
    def is_stable(self) -> bool:
        """Whether the energy Hessian [eps_ss, eps_sf; eps_sf, eps_ff] is PSD."""
        return (
            self.eps_ss >= 0.0
            and self.eps_ff >= 0.0
            and self.eps_ss * self.eps_ff >= self.eps_sf**2
        )

    def c(self, a: Constituent) -> float:
        return self.c_s if a == "s" else self.c_f


@dataclass(frozen=True)
class MixtureState:
    """Pointwise state: apparent densities and saturation pressure.

    ``p`` is the Lagrange multiplier of the saturation constraint; it may
    be of either sign.
    """

    rho_s: ArrayLike
    rho_f: ArrayLike
    p: ArrayLike = 0.0

    def rho(self, a: Constituent) -> ArrayLike:
        return self.rho_s if a == "s" else self.rho_f


class ConstitutiveModel:
    """Binds a reference state to a material model and evaluates the theory.

    The stiffness coefficients ``A[a][b] = rho_a0 * eps_ab`` relate the
    thermodynamic pressures to density deviations; the single mixed energy
    derivative guarantees the cross-consistency
    ``A_sf * rho_f0 == A_fs * rho_s0`` identically.
    """

    def __init__(self, reference: ReferenceState, material: MaterialModel):
        self.reference = reference
        self.material = material
        ref, mat = reference, material
        self.a_ss = ref.rho_s0 * mat.eps_ss
        self.a_sf = ref.rho_s0 * mat.eps_sf
        self.a_fs = ref.rho_f0 * mat.eps_sf
        self.a_ff = ref.rho_f0 * mat.eps_ff

    # -- densities, fractions, compressibility --------------------------------

    def true_density(self, a: Constituent, rho_a: ArrayLike) -> ArrayLike:
        """True density rhat_a of constituent ``a`` at apparent density rho_a."""
        if np.any(np.asarray(rho_a) <= 0.0):
            raise UnphysicalStateError(f"rho_{a} must be strictly positive")
        ref, mat = self.reference, self.material
        rhat = ref.ref_rhat(a) + mat.c(a) * (rho_a - ref.ref_rho(a))
        if np.any(np.asarray(rhat) <= 0.0):
            raise DegenerateMaterialError(
                f"true density of '{a}' became nonpositive at rho_{a} = {rho_a}"
            )
        return rhat

    def volume_fraction(self, a: Constituent, rho_a: ArrayLike) -> ArrayLike:
        """Volume fraction v_a = rho_a / rhat_a(rho_a); must lie strictly in (0, 1)."""
        v = rho_a / self.true_density(a, rho_a)
        if np.any(np.asarray(v) <= 0.0) or np.any(np.asarray(v) >= 1.0):
            raise UnphysicalStateError(
                f"volume fraction v_{a} = {v} is outside the open interval (0, 1)"
            )
        return v

    def biot_factor(self, a: Constituent, rho_a: ArrayLike) -> ArrayLike:
        """Compressibility correction 1 - v_a * c_a on the distributed pressure.

        Equals 1 for a true density-preserving constituent and stays in
        (0, 1] whenever 0 <= c_a <= 1.
        """
        return 1.0 - self.volume_fraction(a, rho_a) * self.material.c(a)

    # -- saturation ------------------------------------------------------------

    def saturation_residual(self, rho_s: ArrayLike, rho_f: ArrayLike) -> ArrayLike:
        """Residual of the saturation constraint, zero iff v_s + v_f = 1.

        Returns ``rho_s*rhat_f + rho_f*rhat_s - rhat_f*rhat_s`` [kg^2/m^6],
        the constraint cleared of denominators.
        """
        rhat_s = self.true_density("s", rho_s)
        rhat_f = self.true_density("f", rho_f)
        return rho_s * rhat_f + rho_f * rhat_s - rhat_f * rhat_s

    def saturated_fluid_density(
        self, rho_s: float, tol: float = 1e-14, max_iter: int = 60
    ) -> float:
        """Fluid apparent density that saturates the pores at the given rho_s.

        Uses the closed-form root when the fluid is true density-preserving
        and a scalar Newton iteration otherwise; the returned density is
        verified to give volume fractions inside (0, 1).
        """
        ref, mat = self.reference, self.material
        rhat_s = self.true_density("s", rho_s)
        v_s = rho_s / rhat_s
        if not 0.0 < v_s < 1.0:
            raise SaturationInfeasibleError(
                f"solid volume fraction v_s = {v_s:g} leaves no pore space to saturate"
            )
        pore = 1.0 - v_s
        if mat.c_f == 0.0:
            rho_f = ref.rhat_f0 * pore
        else:
            rho_f = ref.rhat_f0 * pore  # density-preserving guess
            scale = ref.rhat_f0 * rhat_s
            for _ in range(max_iter):
                r = self.saturation_residual(rho_s, rho_f)
                if abs(r) <= tol * scale:
                    break
                drhat_f = mat.c_f
                dr = rho_s * drhat_f + rhat_s - drhat_f * rhat_s
                if dr == 0.0:
                    raise SaturationInfeasibleError(
                        "saturation residual has vanishing slope; no isolated root"
                    )
                rho_f = rho_f - r / dr
                if rho_f <= 0.0:
                    raise SaturationInfeasibleError(
                        f"saturation root left the physical range at rho_s = {rho_s:g}"
                    )
            else:
                raise SaturationInfeasibleError(
                    f"saturation Newton did not converge at rho_s = {rho_s:g}"
                )
        if rho_f <= 0.0:
            raise SaturationInfeasibleError(
                f"no positive fluid density saturates rho_s = {rho_s:g}"
            )
        self.volume_fraction("f", rho_f)  # raises if outside (0, 1)
        return float(rho_f)

    # -- pressures and exchange -------------------------------------------------

    def thermodynamic_pressures(self, state: MixtureState) -> tuple[ArrayLike, ArrayLike]:
        """Effective (thermodynamic) pressures (P_s, P_f) of the two constituents.

        Linear in the density deviations: P_a = sum_b A_ab (rho_b - rho_b0).
        Both vanish at the reference state.
        """
        ds = state.rho_s - self.reference.rho_s0
        df = state.rho_f - self.reference.rho_f0
        return self.a_ss * ds + self.a_sf * df, self.a_fs * ds + self.a_ff * df

    def partial_pressure(self, a: Constituent, state: MixtureState) -> ArrayLike:
        """Partial pressure p_a = P_a + p * v_a * (1 - v_a c_a).

        The saturation pressure is distributed through the volume fraction
        weighted by the Biot-type compressibility factor; the classical
        rule p_a = p*v_a is recovered for density-preserving constituents
        with vanishing stored energy.
        """
        p_s, p_f = self.thermodynamic_pressures(state)
        eff = p_s if a == "s" else p_f
        rho_a = state.rho(a)
        v_a = self.volume_fraction(a, rho_a)
        return eff + state.p * v_a * (1.0 - v_a * self.material.c(a))

    def exchange_coefficient(self, state: MixtureState) -> ArrayLike:
        """Coefficient M of the volume-exchange force m_a = M * grad(v_a).

        M = p + sum_b (P_b / v_b) (1 - xi_b) / (1 - v_b c_b), with xi_b the
        mixture mass fractions. Reduces to the saturation pressure p when
        the stored energy vanishes.
        """
        p_s, p_f = self.thermodynamic_pressures(state)
        rho = state.rho_s + state.rho_f
        m = state.p
        for a, eff in (("s", p_s), ("f", p_f)):
            rho_a = state.rho(a)
            v_a = self.volume_fraction(a, rho_a)
            beta = 1.0 - v_a * self.material.c(a)
            if np.any(np.asarray(beta) == 0.0):
                raise SingularCompressibilityError(
                    f"compressibility factor of '{a}' vanished; exchange force undefined"
                )
            xi_a = rho_a / rho
            m = m + (eff / v_a) * (1.0 - xi_a) / beta
        return m

    def exchange_forces(
        self, state: MixtureState, grad_v_s: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray]:
        """Exchange volume forces (m_s, m_f) for a given solid-fraction gradient.

        Saturation ties the fraction gradients together, grad v_f = -grad v_s,
        so the pair is antisymmetric by construction.
        """
        m = self.exchange_coefficient(state)
        grad_v_s = np.asarray(grad_v_s, dtype=float)
        m_s = m * grad_v_s
        return m_s, -m_s

    def exchange_coefficient_linearization(self) -> tuple[float, tuple[float, float]]:
        """Constants (M_0, (M_s, M_f)) of M = p + M_0 + sum_b M_b (rho_b - rho_b0).

        First-order expansion of the constitutive part of the exchange
        coefficient about the reference state. Because the thermodynamic
        pressures vanish at reference, only their slopes survive:
        M_0 = 0 and M_b = sum_a w_a A_ab with
        w_a = (1 - xi_a0) / (v_a0 (1 - v_a0 c_a)).
        """
        ref, mat = self.reference, self.material
        w = {}
        for a in ("s", "f"):
            v0 = ref.v_s0 if a == "s" else ref.v_f0
            beta0 = 1.0 - v0 * mat.c(a)
            if beta0 == 0.0:
                raise SingularCompressibilityError(
                    f"reference compressibility factor of '{a}' vanished"
                )
            w[a] = (1.0 - ref.xi0(a)) / (v0 * beta0)
        m_s = w["s"] * self.a_ss + w["f"] * self.a_fs
        m_f = w["s"] * self.a_sf + w["f"] * self.a_ff
        return 0.0, (m_s, m_f)

    def mixture_first_integral(self, state: MixtureState, potential: ArrayLike = 0.0) -> ArrayLike:
        """First integral k of the summed equilibrium equations.

        k = p (1 - sum_a v_a^2 c_a) + sum_a P_a + potential. ``potential``
        is the body-force potential; along a boundary-layer profile the
        (sign-reversed) solid gradient-energy stress plays the same role.
        Constant in space for every equilibrium configuration.
        """
        p_s, p_f = self.thermodynamic_pressures(state)
        v_s = self.volume_fraction("s", state.rho_s)
        v_f = self.volume_fraction("f", state.rho_f)
        factor = 1.0 - v_s**2 * self.material.c_s - v_f**2 * self.material.c_f
        return state.p * factor + p_s + p_f + potential

    # -- convenience -----------------------------------------------------------

    def stiffness(self, a: Constituent, b: Constituent) -> float:
        """Stiffness coefficient A_ab = rho_a0 * eps_ab [Pa*m^3/kg]."""
        return {("s", "s"): self.a_ss, ("s", "f"): self.a_sf,
                ("f", "s"): self.a_fs, ("f", "f"): self.a_ff}[(a, b)]

    def energy_slope_f(self, state: MixtureState) -> ArrayLike:
        """Derivative of the stored energy with respect to the fluid density."""
        ds = state.rho_s - self.reference.rho_s0
        df = state.rho_f - self.reference.rho_f0
        return self.material.eps_sf * ds + self.material.eps_ff * df
