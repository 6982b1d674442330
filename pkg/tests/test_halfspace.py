"""Boundary-layer scalars, closed form, finite-difference solver, validation."""

import numpy as np
import pytest

from porograd import (
    BranchingSolutionError,
    InterfaceOverloadError,
    InterfaceParams,
    MaterialModel,
    ProblemSpec,
    SolverError,
    UnphysicalStateError,
    attenuation_length,
    boundary_amplitude,
    boundary_density_drop,
    saturation_stiffness,
)
from porograd.halfspace import HalfspaceProblem, derivative_arrays

from conftest import interface_for_drop


def _problem(material, reference, interface, **kwargs):
    return HalfspaceProblem(
        ProblemSpec(material=material, reference=reference, interface=interface, **kwargs)
    )


# -- restoring stiffness -------------------------------------------------------


def test_stiffness_solid_only_term(reference):
    mat = MaterialModel(eps_ss=1000.0 / 1944.0, eps_ff=0.0, eps_sf=0.0)
    assert saturation_stiffness(mat, reference) == pytest.approx(1000.0)


def test_stiffness_zero_energy_is_branching(reference):
    mat = MaterialModel(eps_ss=0.0, eps_ff=0.0, eps_sf=0.0)
    with pytest.raises(BranchingSolutionError) as excinfo:
        saturation_stiffness(mat, reference)
    assert excinfo.value.stiffness == 0.0


def test_stiffness_negative_direction_is_branching(reference):
    with pytest.warns(UserWarning):
        mat = MaterialModel(eps_ss=10.0, eps_ff=10.0, eps_sf=60.0)
    with pytest.raises(BranchingSolutionError):
        saturation_stiffness(mat, reference)


def test_stiffness_requires_density_preserving(reference):
    mat = MaterialModel(eps_ss=1.0, eps_ff=1.0, c_s=0.1)
    with pytest.raises(ValueError):
        saturation_stiffness(mat, reference)


def test_stiffness_equals_coefficient_form(reference, stiff_material, model):
    # independent route: assemble the four stiffness coefficients and
    # eliminate the fluid density through saturation
    ratio_true = reference.rhat_f0 / reference.rhat_s0
    pore_factor = 1.0 - reference.rhat_f0 / reference.rho_f0
    expected = (
        model.a_ss + model.a_fs * pore_factor
        - ratio_true * (model.a_sf + model.a_ff * pore_factor)
    )
    assert saturation_stiffness(stiff_material, reference) == pytest.approx(
        expected, rel=1e-14
    )


def test_stiffness_matches_slope_of_force_balance(reference, stiff_material):
    iface = InterfaceParams(p_i=1e6, d_coeff=0.0)
    prob = _problem(stiff_material, reference, iface, x_max=1.0)
    c0 = 1e6 / reference.rhat_f0
    # finite difference of F along the saturated path
    step = 1e-4
    f_plus = prob.normal_form_rhs(
        1944.0 + step, prob.saturated_fluid_density(1944.0 + step), c0
    )
    f_minus = prob.normal_form_rhs(
        1944.0 - step, prob.saturated_fluid_density(1944.0 - step), c0
    )
    fd = (f_plus - f_minus) / (2.0 * step)
    assert fd == pytest.approx(saturation_stiffness(stiff_material, reference), rel=1e-9)


# -- attenuation length and boundary drop ----------------------------------------


def test_attenuation_length_unit_case(reference):
    # lambda_s chosen so rho_s0 * lambda_s equals the stiffness
    mat = MaterialModel(eps_ss=1000.0 / 1944.0, eps_ff=0.0, eps_sf=0.0,
                        lambda_s=1000.0 / 1944.0)
    assert attenuation_length(mat, reference) == pytest.approx(1.0)


def test_attenuation_length_square_root_scaling(reference, stiff_material):
    quad = MaterialModel(
        eps_ss=stiff_material.eps_ss, eps_ff=stiff_material.eps_ff,
        eps_sf=stiff_material.eps_sf, lambda_s=4.0 * stiff_material.lambda_s,
    )
    assert attenuation_length(quad, reference) == 2.0 * attenuation_length(
        stiff_material, reference
    )


def test_attenuation_length_classical_limit(reference):
    mat = MaterialModel(eps_ss=1.0, eps_ff=0.0, eps_sf=0.0, lambda_s=0.0)
    assert attenuation_length(mat, reference) == 0.0


def test_boundary_drop_zero_without_double_force(reference, stiff_material):
    iface = InterfaceParams(p_i=1e6, d_coeff=0.0)
    assert boundary_density_drop(stiff_material, reference, iface) == 0.0


def test_boundary_drop_linear_in_load(reference, stiff_material):
    i1 = InterfaceParams(p_i=1e6, d_coeff=2.0)
    i2 = InterfaceParams(p_i=2e6, d_coeff=2.0)
    assert boundary_density_drop(stiff_material, reference, i2) == 2.0 * (
        boundary_density_drop(stiff_material, reference, i1)
    )


def test_boundary_drop_equals_profile_face_drop(problem_full_drive):
    profile = problem_full_drive.closed_form_profile(amplitude="linearized")
    drop = problem_full_drive.boundary_density_drop()
    assert 1944.0 - profile.rho_s[0] == pytest.approx(drop, rel=1e-14)


# -- boundary amplitude ------------------------------------------------------------


def test_amplitude_zero_without_drive(reference, stiff_material):
    iface = InterfaceParams(p_i=1e6, d_coeff=0.0)
    assert boundary_amplitude(stiff_material, reference, iface, exact=True) == 0.0
    assert boundary_amplitude(stiff_material, reference, iface, exact=False) == 0.0


def test_amplitude_linearized_formula(reference, stiff_material):
    iface = interface_for_drop(stiff_material, reference, 1e-3)
    lin = boundary_amplitude(stiff_material, reference, iface, exact=False)
    assert lin == -boundary_density_drop(stiff_material, reference, iface)


def test_amplitude_exact_vs_linearized_quadratic_gap(reference, stiff_material):
    gaps = []
    for ratio in (1e-3, 5e-4):
        iface = interface_for_drop(stiff_material, reference, ratio)
        exact = boundary_amplitude(stiff_material, reference, iface, exact=True)
        lin = boundary_amplitude(stiff_material, reference, iface, exact=False)
        gaps.append(abs(exact - lin))
    # halving the drive quarters the gap
    assert gaps[0] / gaps[1] == pytest.approx(4.0, rel=0.05)


def test_amplitude_overload_error(reference, stiff_material):
    iface = interface_for_drop(stiff_material, reference, 0.3)
    with pytest.raises(InterfaceOverloadError):
        boundary_amplitude(stiff_material, reference, iface, exact=True)


# -- closed-form profile -------------------------------------------------------------


def test_closed_form_uniform_without_drive(reference, stiff_material):
    prob = _problem(stiff_material, reference, InterfaceParams(p_i=1e6, d_coeff=0.0))
    profile = prob.closed_form_profile()
    assert np.ptp(profile.rho_s) == 0.0
    assert np.all(profile.p == 1e6)
    assert not profile.has_boundary_layer


def test_closed_form_exponential_tail(problem_full_drive):
    profile = problem_full_drive.closed_form_profile(amplitude="linearized")
    sol = profile.closed_form
    x_end = profile.x[-1]
    expected = sol.delta_rho_s * np.exp(-x_end / sol.x0)
    assert abs(profile.rho_s[-1] - 1944.0) == pytest.approx(expected, rel=1e-12)


def test_closed_form_residuals_at_full_drive(problem_full_drive):
    report = problem_full_drive.closed_form_profile().diagnostics
    assert report.worst() <= 1e-8
    assert report.saturation_abs <= 1e-10 * 1200.0


def test_closed_form_monotone_decaying_branch(problem_full_drive):
    profile = problem_full_drive.closed_form_profile()
    assert np.all(np.diff(profile.rho_s) > 0.0)  # rises back toward reference


def test_closed_form_far_field_recovery(problem_full_drive):
    profile = problem_full_drive.closed_form_profile()
    sol = profile.closed_form
    # cushion by the density ulp: the deviation is recovered by subtraction
    band = abs(sol.c2) * np.exp(-profile.x[-1] / sol.x0) + 1e-12 * 1944.0
    assert abs(profile.rho_s[-1] - 1944.0) <= band
    assert abs(profile.rho_f[-1] - 120.0) <= band
    assert abs(profile.p[-1] - 1e6) <= 2.0 * sol.stiffness * band


def test_closed_form_requires_density_preserving(reference):
    mat = MaterialModel(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0,
                        c_s=1e-3, lambda_s=370.0)
    prob = _problem(mat, reference, InterfaceParams(p_i=1e6, d_coeff=0.0))
    with pytest.raises(ValueError, match="density-preserving"):
        prob.closed_form_profile()


def test_profile_saturation_residual_bound(problem_full_drive, model):
    profile = problem_full_drive.closed_form_profile()
    res = np.abs(model.saturation_residual(profile.rho_s, profile.rho_f))
    assert np.max(res) / 2160.0 <= 1e-10 * 1200.0


# -- reduced force balance and restoring term -------------------------------------------


def test_force_balance_affine_in_constant(reference):
    mat = MaterialModel(eps_ss=0.0, eps_ff=0.0, eps_sf=0.0, lambda_s=1.0)
    iface = InterfaceParams(p_i=1e6, d_coeff=0.0)
    prob = _problem(mat, reference, iface, x_max=1.0)
    for c in (0.0, 100.0, -55.0):
        f = prob.normal_form_rhs(1944.0, 120.0, c)
        assert f == pytest.approx(c * 1200.0 - 1e6)


def test_force_balance_at_reference_with_zero_constant(problem_full_drive):
    f = problem_full_drive.normal_form_rhs(1944.0, 120.0, 0.0)
    assert f == pytest.approx(-1e6)


def test_restoring_term_zero_at_reference(problem_full_drive):
    assert problem_full_drive.restoring_term(1944.0, 833.0) == 0.0


def test_restoring_term_is_logarithmic_when_density_preserving(problem_full_drive):
    prob = problem_full_drive
    stiffness = prob.saturation_stiffness()
    c0 = 1e6 / 1200.0
    for w in (-2.0, -0.5, 1.0):
        expected = stiffness * np.log1p(w / 1944.0)
        assert prob.restoring_term(1944.0 + w, c0) == pytest.approx(expected, rel=1e-10)


def test_restoring_slope_matches_finite_difference(reference):
    mat = MaterialModel(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0,
                        c_s=0.2, c_f=0.05, lambda_s=370.0)
    prob = _problem(mat, reference, InterfaceParams(p_i=1e6, d_coeff=0.0), x_max=1.0)
    c0 = 900.0
    rng = np.random.default_rng(2)
    for _ in range(10):
        w = float(rng.uniform(-3.0, 3.0))
        step = 1e-3
        fd = (
            prob.restoring_term(1944.0 + w + step, c0)
            - prob.restoring_term(1944.0 + w - step, c0)
        ) / (2.0 * step)
        analytic = float(prob._restoring_slope(w, c0))
        assert fd == pytest.approx(analytic, rel=1e-6)


def test_restoring_batch_matches_adaptive_quadrature(reference):
    mat = MaterialModel(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0,
                        c_s=0.2, c_f=0.05, lambda_s=370.0)
    prob = _problem(mat, reference, InterfaceParams(p_i=1e6, d_coeff=0.0), x_max=1.0)
    c0 = 900.0
    # the public entry takes an absolute density whose representation fixes
    # the deviation; hand the batch exactly that deviation
    deviations = np.array([(1944.0 + w) - 1944.0 for w in (-2.5, -1.0, -1e-4, 1e-4, 0.7, 2.0)])
    batch = prob._restoring_batch(deviations, c0)
    for wi, gi in zip(deviations, batch):
        assert gi == pytest.approx(prob.restoring_term(1944.0 + wi, c0), rel=1e-12, abs=1e-15)


# -- finite-difference solver -----------------------------------------------------------


def test_solver_matches_closed_form(problem_small_drive):
    prob = problem_small_drive
    cf = prob.closed_form_profile()
    num = prob.solve_compressible()
    drop = cf.closed_form.delta_rho_s
    assert num.newton_iterations <= 10
    assert np.max(np.abs(num.rho_s - cf.rho_s)) <= 1e-6 * drop
    assert np.max(np.abs(num.p - cf.p)) <= 1e-6 * prob.interface.p_i


def test_solver_second_order_convergence(reference, stiff_material):
    iface = interface_for_drop(stiff_material, reference, 1e-8)
    errors = {}
    for n in (1000, 2000):
        prob = _problem(stiff_material, reference, iface, n_nodes=n)
        cf = prob.closed_form_profile()
        num = prob.solve_compressible()
        errors[n] = np.max(np.abs(num.rho_s - cf.rho_s))
    assert 3.5 <= errors[1000] / errors[2000] <= 4.5


def test_solver_uniform_when_unloaded(reference, stiff_material):
    prob = _problem(stiff_material, reference, InterfaceParams(p_i=1e6, d_coeff=0.0))
    num = prob.solve_compressible()
    assert num.newton_iterations <= 1
    assert np.ptp(num.rho_s) == 0.0
    assert np.max(np.abs(num.rho_s - 1944.0)) == 0.0


def test_solver_uniform_compressed_state(reference):
    # without a double force but with compressibility the uniform state is
    # the load-compressed one, shared by the full solver and its face logic
    mat = MaterialModel(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0,
                        c_s=1e-3, lambda_s=370.0)
    prob = _problem(mat, reference, InterfaceParams(p_i=1e6, d_coeff=0.0))
    num = prob.solve_compressible()
    assert np.ptp(num.rho_s) <= 1e-12 * 1944.0
    assert num.rho_s[0] > 1944.0  # compressed by the incumbent pressure
    assert not num.has_boundary_layer
    assert num.diagnostics.worst() <= 1e-8


def test_solver_first_order_in_compressibility(reference, stiff_material):
    iface = interface_for_drop(stiff_material, reference, 1e-6)
    base = _problem(stiff_material, reference, iface, n_nodes=800).solve_compressible()
    diffs = {}
    for c_s in (1e-3, 5e-4):
        mat = MaterialModel(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0,
                            c_s=c_s, lambda_s=370.0)
        num = _problem(mat, reference, iface, n_nodes=800).solve_compressible()
        diffs[c_s] = np.max(np.abs(num.rho_s - base.rho_s))
    assert diffs[1e-3] / diffs[5e-4] == pytest.approx(2.0, rel=0.05)


def test_solver_fluid_integral_constant_compressible(reference):
    mat = MaterialModel(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0,
                        c_s=1e-3, lambda_s=370.0)
    iface = interface_for_drop(
        MaterialModel(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0, lambda_s=370.0),
        reference, 1e-6,
    )
    num = _problem(mat, reference, iface).solve_compressible()
    assert num.diagnostics.fluid_integral_spread <= 1e-6


def test_solver_branching_material(reference):
    mat = MaterialModel(eps_ss=0.0, eps_ff=0.0, eps_sf=0.0, lambda_s=370.0)
    prob = _problem(mat, reference, InterfaceParams(p_i=1e6, d_coeff=1.0), x_max=1.0)
    with pytest.raises(BranchingSolutionError):
        prob.solve_compressible()


def test_solver_reports_failure_with_unreachable_tolerance(reference, stiff_material):
    iface = interface_for_drop(stiff_material, reference, 1e-3)
    prob = _problem(stiff_material, reference, iface, n_nodes=200,
                    newton_tol=1e-17, newton_max_iter=4)
    with pytest.raises(SolverError) as excinfo:
        prob.solve_compressible()
    assert excinfo.value.residual_norm > 0.0
    assert excinfo.value.iterations >= 1


def test_solver_rejects_double_force_in_classical_limit(reference):
    mat = MaterialModel(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0, lambda_s=0.0)
    prob = _problem(mat, reference, InterfaceParams(p_i=1e6, d_coeff=1.0), x_max=1.0)
    with pytest.raises(UnphysicalStateError):
        prob.solve_compressible()


def test_solver_classical_limit_is_uniform(reference):
    mat = MaterialModel(eps_ss=1500.0, eps_ff=1000.0, eps_sf=300.0, lambda_s=0.0)
    prob = _problem(mat, reference, InterfaceParams(p_i=1e6, d_coeff=0.0), x_max=1.0)
    num = prob.solve_compressible()
    assert np.ptp(num.rho_s) == 0.0
    assert not num.has_boundary_layer


# -- validation report ---------------------------------------------------------------------


def test_validation_uniform_reference_is_clean(reference, stiff_material):
    prob = _problem(stiff_material, reference, InterfaceParams(p_i=1e6, d_coeff=0.0))
    report = prob.validate_profile(prob.closed_form_profile())
    assert report.worst() == 0.0


def test_validation_report_is_serializable(problem_full_drive):
    report = problem_full_drive.closed_form_profile().diagnostics
    data = report.as_dict()
    assert set(data) >= {
        "saturation", "fluid_integral_spread", "summed_integral", "ode",
        "normal_form", "bc_face_flux", "bc_far_fluid",
    }
    assert all(isinstance(v, float) for v in data.values())
    assert len(report.lines()) == len(data)


def test_derivative_arrays_second_order():
    def worst(n):
        x = np.linspace(0.0, 1.0, n)
        y = np.exp(-3.0 * x)
        d1, d2 = derivative_arrays(y, x[1] - x[0])
        return max(
            float(np.max(np.abs(d1 + 3.0 * y))),
            float(np.max(np.abs(d2 - 9.0 * y))) / 3.0,
        )

    assert worst(200) / worst(400) >= 3.5


def test_problem_spec_validation(reference, stiff_material):
    iface = InterfaceParams(p_i=1e6, d_coeff=0.0)
    with pytest.raises(UnphysicalStateError):
        ProblemSpec(material=stiff_material, reference=reference, interface=iface,
                    n_nodes=8)
    with pytest.raises(UnphysicalStateError):
        ProblemSpec(material=stiff_material, reference=reference, interface=iface,
                    x_max=-1.0)
    with pytest.raises(UnphysicalStateError):
        ProblemSpec(material=stiff_material, reference=reference, interface=iface,
                    newton_tol=0.0)
