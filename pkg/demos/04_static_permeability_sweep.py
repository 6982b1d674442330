"""Static permeability scaling: x0 grows with the square root of lambda_s.

The attenuation length x0 = sqrt(rho_s0 * lambda_s / L) measures how much
saturating fluid penetrates the matrix at equilibrium; the boundary drop
delta_rho_s is linear in both the double-force coefficient and the
incumbent pressure. Both follow from the closed form, so the sweep rows
are cheap and exact.
"""

import numpy as np

from porograd import (
    InterfaceParams,
    MaterialModel,
    ReferenceState,
    attenuation_length,
    boundary_density_drop,
)

reference = ReferenceState(rho_s0=1944.0, rho_f0=120.0, rhat_s0=2160.0, rhat_f0=1200.0)
base = dict(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0)
interface = InterfaceParams(p_i=1.0e6, d_coeff=2.79212)

print("gradient-energy sweep (square-root law)")
print(f"{'lambda_s':>10} {'x0 [m]':>10} {'x0 / sqrt(lambda_s)':>20}")
for lambda_s in (92.5, 370.0, 1480.0, 5920.0):
    material = MaterialModel(lambda_s=lambda_s, **base)
    x0 = attenuation_length(material, reference)
    print(f"{lambda_s:10.1f} {x0:10.4f} {x0 / np.sqrt(lambda_s):20.6f}")
print()

print("incumbent-pressure sweep (linear law)")
material = MaterialModel(lambda_s=370.0, **base)
print(f"{'p_i [MPa]':>10} {'drop [kg/m^3]':>14} {'drop / p_i':>14}")
for p_i in (0.25e6, 0.5e6, 1.0e6, 2.0e6):
    iface = InterfaceParams(p_i=p_i, d_coeff=interface.d_coeff)
    drop = boundary_density_drop(material, reference, iface)
    print(f"{p_i / 1e6:10.2f} {drop:14.6f} {drop / p_i:14.3e}")
print()

print("without gradient energy there is no boundary layer at all:")
classical = MaterialModel(lambda_s=0.0, **base)
print(f"  lambda_s = 0  ->  x0 = {attenuation_length(classical, reference)} m")
