"""How the saturation pressure splits between solid and fluid.

The classical rule assigns each constituent the share v_a * p of the
porewater pressure. That rule is exact only when both constituents keep
their true density and the mixture stores no energy. With stored energy
or compressibility the partition picks up effective-pressure terms and a
Biot-type correction, and the exchange force coefficient departs from p.
"""

import numpy as np

from porograd import ConstitutiveModel, MaterialModel, MixtureState, ReferenceState

reference = ReferenceState(rho_s0=1944.0, rho_f0=120.0, rhat_s0=2160.0, rhat_f0=1200.0)
p = 1.0e6  # saturation pressure [Pa]

print("reference state: v_s0 = %.3f, v_f0 = %.3f" % (reference.v_s0, reference.v_f0))
print()

# 1. density-preserving constituents, zero stored energy: the classical rule
plain = ConstitutiveModel(reference, MaterialModel(eps_ss=0.0, eps_ff=0.0))
state = MixtureState(rho_s=1930.0, rho_f=plain.saturated_fluid_density(1930.0), p=p)
v_s = plain.volume_fraction("s", state.rho_s)
v_f = plain.volume_fraction("f", state.rho_f)
print("classical limit (no energy, no compressibility):")
print(f"  p_s = {plain.partial_pressure('s', state):,.1f} Pa  vs  v_s*p = {v_s * p:,.1f} Pa")
print(f"  p_f = {plain.partial_pressure('f', state):,.1f} Pa  vs  v_f*p = {v_f * p:,.1f} Pa")
print(f"  exchange coefficient M = {plain.exchange_coefficient(state):,.1f} Pa  (= p)")
print()

# 2. stored energy: effective pressures appear in BOTH constituents
stiff = ConstitutiveModel(
    reference, MaterialModel(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0)
)
state = MixtureState(rho_s=1930.0, rho_f=stiff.saturated_fluid_density(1930.0), p=p)
P_s, P_f = stiff.thermodynamic_pressures(state)
print("with stored energy (solid density 14 kg/m^3 below reference):")
print(f"  effective pressures: P_s = {P_s:,.1f} Pa, P_f = {P_f:,.1f} Pa")
print(f"  p_s = {stiff.partial_pressure('s', state):,.1f} Pa  (classical {v_s * p:,.1f})")
print(f"  p_f = {stiff.partial_pressure('f', state):,.1f} Pa  (classical {v_f * p:,.1f})")
print(f"  exchange coefficient M = {stiff.exchange_coefficient(state):,.1f} Pa  (p = {p:,.1f})")
print()

# 3. compressibility: the Biot-type factor discounts the distributed share
soft = ConstitutiveModel(
    reference,
    MaterialModel(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0, c_s=0.3, c_f=0.1),
)
rho_f = soft.saturated_fluid_density(1930.0)
state = MixtureState(rho_s=1930.0, rho_f=rho_f, p=p)
for a in ("s", "f"):
    factor = soft.biot_factor(a, state.rho(a))
    print(f"compressibility correction 1 - v_{a} c_{a} = {factor:.4f}")
print(f"  p_s = {soft.partial_pressure('s', state):,.1f} Pa")
print(f"  p_f = {soft.partial_pressure('f', state):,.1f} Pa")
print()

# the partition always satisfies the summed identity
total = soft.partial_pressure("s", state) + soft.partial_pressure("f", state)
P_s, P_f = soft.thermodynamic_pressures(state)
v_s = soft.volume_fraction("s", state.rho_s)
v_f = soft.volume_fraction("f", state.rho_f)
identity = P_s + P_f + p * (1.0 - v_s**2 * 0.3 - v_f**2 * 0.1)
print(f"sum identity check: {total:,.4f} Pa == {identity:,.4f} Pa "
      f"(difference {abs(total - identity):.2e})")

# linearized exchange coefficient about the reference
m0, (m_s, m_f) = soft.exchange_coefficient_linearization()
print(f"exchange linearization: M = p + {m0:g} + {m_s:,.1f}*drho_s + {m_f:,.1f}*drho_f")
