"""Shared fixtures: a salt-brine-like mixture at 90 % solid fraction."""

import numpy as np
import pytest

from porograd import (
    ConstitutiveModel,
    InterfaceParams,
    MaterialModel,
    ProblemSpec,
    ReferenceState,
)
from porograd.halfspace import HalfspaceProblem


@pytest.fixture(scope="session")
def reference():
    return ReferenceState(rho_s0=1944.0, rho_f0=120.0, rhat_s0=2160.0, rhat_f0=1200.0)


@pytest.fixture(scope="session")
def stiff_material():
    """Solid-dominated stiffnesses with moderate fluid coupling."""
    return MaterialModel(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0, lambda_s=370.0)


@pytest.fixture(scope="session")
def plain_material():
    """Zero stored energy, density-preserving constituents."""
    return MaterialModel(eps_ss=0.0, eps_ff=0.0, eps_sf=0.0)


@pytest.fixture(scope="session")
def model(reference, stiff_material):
    return ConstitutiveModel(reference, stiff_material)


@pytest.fixture(scope="session")
def plain_model(reference, plain_material):
    return ConstitutiveModel(reference, plain_material)


def interface_for_drop(material, reference, drop_ratio, p_i=1e6):
    """Interface whose double force produces delta_rho_s = drop_ratio * rho_s0."""
    stiffness = reference.rho_s0 * (
        material.eps_ss
        - 2.0 * (reference.rhat_f0 / reference.rhat_s0) * material.eps_sf
        + (reference.rhat_f0 / reference.rhat_s0) ** 2 * material.eps_ff
    )
    d_coeff = (
        drop_ratio * reference.rho_s0 * reference.rho_s0 / p_i
        * np.sqrt(material.lambda_s * stiffness / reference.rho_s0)
    )
    return InterfaceParams(p_i=p_i, d_coeff=float(d_coeff))


@pytest.fixture()
def problem_small_drive(reference, stiff_material):
    """Half-space problem with a boundary drop of 1e-8 of rho_s0."""
    iface = interface_for_drop(stiff_material, reference, 1e-8)
    spec = ProblemSpec(material=stiff_material, reference=reference, interface=iface)
    return HalfspaceProblem(spec)


@pytest.fixture()
def problem_full_drive(reference, stiff_material):
    """Half-space problem with a boundary drop of 1e-3 of rho_s0."""
    iface = interface_for_drop(stiff_material, reference, 1e-3)
    spec = ProblemSpec(material=stiff_material, reference=reference, interface=iface)
    return HalfspaceProblem(spec)


def random_saturated_states(model, rng, count, spread=0.03, p_low=1e4, p_high=1e7):
    """Random saturated (rho_s, rho_f, p) triples around the reference."""
    ref = model.reference
    states = []
    for _ in range(count):
        rho_s = ref.rho_s0 * (1.0 + spread * (2.0 * rng.random() - 1.0))
        rho_f = model.saturated_fluid_density(rho_s)
        p = p_low + (p_high - p_low) * rng.random()
        states.append((rho_s, rho_f, p))
    return states
