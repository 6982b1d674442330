"""Second-gradient (density-gradient) quantities and boundary conditions.

The stored energy depends on the solid density gradient through
lambda_s/2 * |grad rho_s|^2. That dependence produces, pointwise,

* a second-order tensor multiplying the velocity gradient of each
  constituent (``gradient_energy_stress``),
* a third-order double-stress tensor multiplying the second velocity
  gradient (``double_stress_tensor``), and
* the combined solid gradient stress whose divergence augments the solid
  momentum balance (``solid_gradient_stress``).

Only the solid carries gradient energy here, so every fluid-indexed tensor
vanishes identically and the fluid balance stays first-gradient.

At a boundary loaded by a fluid at incumbent pressure ``p_i`` the surface
actions are a traction pair that partitions p_i between the constituents
and a double force conjugate to the normal derivative of the solid
density. The scalar double-force bookkeeping is fixed as follows: the
authoritative one-dimensional flux condition is

    lambda_s * rho_s * drho_s/dx = D_coeff * p_i      (at x = 0),

while the normal double force obtained by contracting the double-stress
tensor is half of that bracket, (lambda_s/2) * rho_s * drho_s/dn, because
the energy carries lambda_s/2. A regression test pins this convention.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constitutive import ConstitutiveModel, Constituent, MixtureState
from .errors import UnphysicalStateError


@dataclass(frozen=True)
class FieldPoint:
    """Densities and solid-density derivatives at one spatial point.

    ``grad_rho_s``/``grad_rho_f`` are 3-vectors [kg/m^4]; in one dimension
    only the x components are nonzero. ``lap_rho_s`` is the solid density
    Laplacian [kg/m^5].
    """

    rho_s: float
    rho_f: float
    grad_rho_s: np.ndarray
    grad_rho_f: np.ndarray
    lap_rho_s: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "grad_rho_s", np.asarray(self.grad_rho_s, dtype=float))
        object.__setattr__(self, "grad_rho_f", np.asarray(self.grad_rho_f, dtype=float))
        if self.rho_s <= 0.0 or self.rho_f <= 0.0:
            raise UnphysicalStateError("densities at a field point must be positive")
        if not (
            np.all(np.isfinite(self.grad_rho_s))
            and np.all(np.isfinite(self.grad_rho_f))
            and np.isfinite(self.lap_rho_s)
        ):
            raise UnphysicalStateError("density derivatives must be finite")

    @classmethod
    def one_d(
        cls, rho_s: float, rho_f: float, d_rho_s: float = 0.0,
        d2_rho_s: float = 0.0, d_rho_f: float = 0.0,
    ) -> "FieldPoint":
        """Point on a one-dimensional profile (x derivatives only)."""
        return cls(
            rho_s=rho_s,
            rho_f=rho_f,
            grad_rho_s=np.array([d_rho_s, 0.0, 0.0]),
            grad_rho_f=np.array([d_rho_f, 0.0, 0.0]),
            lap_rho_s=d2_rho_s,
        )


@dataclass(frozen=True)
class InterfaceParams:
    """Constitutive description of the loaded boundary.

    p_i : incumbent fluid pressure [Pa], >= 0.
    d_coeff : double-force coefficient [m]; the applied double force is
        d_coeff * p_i.
    alpha, l : traction-partition parameters; the solid receives
        alpha * v_s^l * p_i and the fluid the complement.
    """

    p_i: float
    d_coeff: float = 0.0
    alpha: float = 1.0
    l: float = 1.0

    def __post_init__(self):
        if self.p_i < 0.0:
            raise UnphysicalStateError("incumbent pressure p_i must be >= 0")

    def solid_share(self, v_s: float) -> float:
        share = self.alpha * v_s**self.l
        if not 0.0 <= share <= 1.0:
            raise UnphysicalStateError(
                f"traction partition alpha*v_s^l = {share:g} is outside [0, 1]"
            )
        return share


def gradient_energy_stress(
    b: Constituent, point: FieldPoint, material
) -> np.ndarray:
    """Second-order tensor of constituent ``b`` sourced by gradient energy.

    For the solid: (lambda_s/2) (grad rho_s x grad rho_s + |grad rho_s|^2 I).
    Zero for the fluid, which carries no gradient energy.
    """
    if b == "f" or material.lambda_s == 0.0:
        return np.zeros((3, 3))
    g = point.grad_rho_s
    return 0.5 * material.lambda_s * (np.outer(g, g) + np.dot(g, g) * np.eye(3))


def double_stress_tensor(b: Constituent, point: FieldPoint, material) -> np.ndarray:
    """Third-order double stress of constituent ``b``, C_ijk = (lambda_s/2) rho_s d_ij g_k.

    Zero for the fluid. Contracting with the boundary normal over the last
    index gives the double-force tensor; its normal scalar is
    (lambda_s/2) * rho_s * d(rho_s)/dn.
    """
    if b == "f" or material.lambda_s == 0.0:
        return np.zeros((3, 3, 3))
    return (
        0.5 * material.lambda_s * point.rho_s
        * np.einsum("ij,k->ijk", np.eye(3), point.grad_rho_s)
    )


def normal_double_force(point: FieldPoint, material, n: np.ndarray) -> float:
    """Normal scalar of the solid double stress contracted with ``n`` twice."""
    c = double_stress_tensor("s", point, material)
    n = np.asarray(n, dtype=float)
    return float(np.einsum("i,ijk,j,k->", n, c, n, n) / np.dot(n, n))


def solid_gradient_stress(point: FieldPoint, lambda_s: float) -> np.ndarray:
    """Gradient stress of the solid whose divergence enters its momentum balance.

    (lambda_s rho_s lap(rho_s) + lambda_s/2 |grad rho_s|^2) I
    - lambda_s grad rho_s x grad rho_s.

    Its xx component on a one-dimensional profile is
    lambda_s rho_s rho_s'' - (lambda_s/2) rho_s'^2.
    """
    g = point.grad_rho_s
    iso = lambda_s * point.rho_s * point.lap_rho_s + 0.5 * lambda_s * np.dot(g, g)
    return iso * np.eye(3) - lambda_s * np.outer(g, g)


def hyperstress_bracket_1d(
    rho_s: float, d_rho_s: float, d2_rho_s: float, lambda_s: float
) -> float:
    """xx component of the solid gradient stress on a 1-D profile."""
    return lambda_s * rho_s * d2_rho_s - 0.5 * lambda_s * d_rho_s**2


def applied_tractions(
    v_s_boundary: float, params: InterfaceParams, n: np.ndarray = (1.0, 0.0, 0.0)
) -> tuple[np.ndarray, np.ndarray]:
    """Boundary tractions (t_s, t_f) along the normal ``n``.

    The incumbent pressure is split as t_s = alpha v_s^l p_i n with the
    fluid taking the complement, so t_s + t_f = p_i n exactly.
    """
    if not 0.0 < v_s_boundary < 1.0:
        raise UnphysicalStateError("boundary solid fraction must be in (0, 1)")
    n = np.asarray(n, dtype=float)
    share = params.solid_share(v_s_boundary)
    t_s = share * params.p_i * n
    return t_s, params.p_i * n - t_s


def boundary_residuals_1d(
    model: ConstitutiveModel,
    point: FieldPoint,
    p: float,
    params: InterfaceParams,
    at_infinity: bool = False,
) -> tuple[float, float, float]:
    """Residuals of the three 1-D boundary conditions at the loaded face or far field.

    Formulated for the full traction transfer alpha = 1, l = 1 (the split
    tractions enter as v_a * p_i). Returns the residuals of

    1. solid balance: -[P_s + p v_s (1 - v_s c_s)] + bracket + v_s p_i,
    2. fluid balance:   P_f + p v_f (1 - v_f c_f) - v_f p_i,
    3. double force:    lambda_s rho_s rho_s' - D p_i  (0 at the far field),

    where ``bracket`` is the solid gradient stress xx component. All three
    vanish for an exact equilibrium solution.
    """
    if params.alpha != 1.0 or params.l != 1.0:
        raise ValueError("boundary residuals are formulated for alpha = 1, l = 1")
    lam = model.material.lambda_s
    state = MixtureState(point.rho_s, point.rho_f, p)
    p_s, p_f = model.thermodynamic_pressures(state)
    v_s = model.volume_fraction("s", point.rho_s)
    v_f = model.volume_fraction("f", point.rho_f)
    beta_s = 1.0 - v_s * model.material.c_s
    beta_f = 1.0 - v_f * model.material.c_f
    bracket = hyperstress_bracket_1d(
        point.rho_s, point.grad_rho_s[0], point.lap_rho_s, lam
    )
    r1 = -(p_s + p * v_s * beta_s) + bracket + v_s * params.p_i
    r2 = p_f + p * v_f * beta_f - v_f * params.p_i
    flux_target = 0.0 if at_infinity else params.d_coeff * params.p_i
    r3 = lam * point.rho_s * point.grad_rho_s[0] - flux_target
    return float(r1), float(r2), float(r3)


def summed_first_integral_residual(
    model: ConstitutiveModel, point: FieldPoint, p: float, p_i: float
) -> float:
    """Residual of the summed equilibrium first integral at one point.

    p (1 - sum_a v_a^2 c_a) + sum_a P_a - bracket - p_i, which vanishes
    along any equilibrium profile whose far field carries pressure p_i.
    """
    state = MixtureState(point.rho_s, point.rho_f, p)
    p_s, p_f = model.thermodynamic_pressures(state)
    v_s = model.volume_fraction("s", point.rho_s)
    v_f = model.volume_fraction("f", point.rho_f)
    factor = 1.0 - v_s**2 * model.material.c_s - v_f**2 * model.material.c_f
    bracket = hyperstress_bracket_1d(
        point.rho_s, point.grad_rho_s[0], point.lap_rho_s, model.material.lambda_s
    )
    return float(p * factor + p_s + p_f - bracket - p_i)
