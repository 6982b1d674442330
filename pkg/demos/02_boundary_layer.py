"""The equilibrium boundary layer of a pressurized saturated matrix.

A half space of saturated porous solid touches its own pore fluid held at
1 MPa. The fluid transmits a contact double force to the solid skeleton,
and with gradient energy in the model the solid density develops an
exponential boundary layer instead of staying uniform: the static
(equilibrium) analog of permeability. Two scalars summarize it:

* the attenuation length x0 - how deep the disturbance penetrates,
* the boundary density drop delta_rho_s - how strongly the face responds.
"""

import numpy as np

from porograd import InterfaceParams, MaterialModel, ProblemSpec, ReferenceState
from porograd.halfspace import HalfspaceProblem

reference = ReferenceState(rho_s0=1944.0, rho_f0=120.0, rhat_s0=2160.0, rhat_f0=1200.0)
material = MaterialModel(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0, lambda_s=370.0)
interface = InterfaceParams(p_i=1.0e6, d_coeff=2.79212)

problem = HalfspaceProblem(
    ProblemSpec(material=material, reference=reference, interface=interface)
)
profile = problem.closed_form_profile()
layer = profile.closed_form

print("boundary-layer scalars")
print(f"  restoring stiffness  L   = {layer.stiffness:,.0f} J/kg")
print(f"  attenuation length   x0  = {layer.x0:.4f} m   (static permeability)")
print(f"  boundary drop  delta_rho = {layer.delta_rho_s:.4f} kg/m^3 "
      f"({layer.delta_rho_s / reference.rho_s0:.1e} of rho_s0)")
print(f"  face amplitude       C2  = {layer.c2:.6f} kg/m^3")
print()

print("profile (every 250th node)")
print(f"{'x [m]':>8} {'rho_s':>12} {'rho_f':>10} {'v_s':>8} {'p [kPa]':>10}")
for i in range(0, profile.x.size, 250):
    print(f"{profile.x[i]:8.3f} {profile.rho_s[i]:12.4f} {profile.rho_f[i]:10.4f} "
          f"{profile.v_s[i]:8.5f} {profile.p[i] / 1e3:10.2f}")
print()

# the saturation pressure is NOT constant inside the layer even though the
# fluid is everywhere in equilibrium; it recovers p_i only in the far field
print(f"saturation pressure at the face : {profile.p[0] / 1e3:10.2f} kPa")
print(f"saturation pressure at depth    : {profile.p[-1] / 1e3:10.2f} kPa (incumbent 1000)")
print()

report = profile.diagnostics
print("equilibrium residuals (dimensionless)")
for line in report.lines():
    print("  " + line)
print(f"worst: {report.worst():.3e}")

# the two amplitude choices differ at second order in the drive
exact = problem.closed_form_profile(amplitude="exact")
linearized = problem.closed_form_profile(amplitude="linearized")
gap = abs(exact.rho_s[0] - linearized.rho_s[0])
print()
print(f"exact vs linearized face amplitude: {gap:.2e} kg/m^3 "
      f"({gap / layer.delta_rho_s:.2e} of the drop)")
