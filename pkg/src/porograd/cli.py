"""Batch front end: scenario configs in, CSV profiles and reports out.

Subcommands
-----------
solve        solve one scenario and write the profile CSV plus a summary
sweep        rerun a scenario over a list of parameter values, one table row each
validate     run the invariant suite against a scenario; exit 0 iff all pass
closed-form  print the boundary-layer scalars (L, x0, delta_rho_s, C2) only

Configs are TOML (or JSON) files with [reference], [material], [interface],
[solver] and optional [output] and [sweep] blocks; ``--override key=value``
patches individual entries. All quantities are SI. Exit codes: 0 success,
1 validation-suite failure, 2 config error, 3 solver error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from typing import Any

import numpy as np

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .constitutive import ConstitutiveModel, MaterialModel, MixtureState, ReferenceState
from .errors import ConfigError, PorogradError, UnphysicalStateError
from .halfspace import (
    HalfspaceProblem,
    ProblemSpec,
    attenuation_length,
    boundary_amplitude,
    boundary_density_drop,
    saturation_stiffness,
)
from .hyperstress import InterfaceParams

PROFILE_COLUMNS = ("x", "rho_s", "rho_f", "v_s", "p", "P_s", "P_f")
SWEEP_PARAMETERS = ("lambda_s", "p_i", "D_coeff", "c_s", "c_f")

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CONFIG = 2
EXIT_SOLVER = 3


def _fmt(value: float) -> str:
    return f"{value:.17g}"


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------


def load_config(path: str) -> dict:
    """Read a TOML or JSON scenario file into a plain dict."""
    try:
        with open(path, "rb") as fh:
            if path.endswith(".json"):
                return json.load(fh)
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError("config", f"file not found: {path}")
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as exc:
        raise ConfigError("config", f"cannot parse {path}: {exc}")


def apply_overrides(config: dict, overrides: list[str]) -> dict:
    """Patch ``section.key=value`` entries into the config dict."""
    for item in overrides:
        if "=" not in item:
            raise ConfigError("override", f"expected key=value, got {item!r}")
        key, raw = item.split("=", 1)
        parts = key.strip().split(".")
        if len(parts) != 2:
            raise ConfigError("override", f"expected section.key, got {key!r}")
        section, field = parts
        try:
            value: Any = json.loads(raw)
        except json.JSONDecodeError:
            value = raw
        config.setdefault(section, {})[field] = value
    return config


def _require(block: dict, section: str, field: str) -> float:
    if field not in block:
        raise ConfigError(f"{section}.{field}", "missing required field")
    value = block[field]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{section}.{field}", f"expected a number, got {value!r}")
    return float(value)


def _optional(block: dict, section: str, field: str, default):
    if field not in block:
        return default
    value = block[field]
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"{section}.{field}", f"expected a number, got {value!r}")
    return float(value)


def build_problem_spec(config: dict) -> ProblemSpec:
    """Validate a config dict and build the problem description.

    Domain-level violations (negative densities, unstable inputs, a
    non-saturated reference) are reported as field-level config errors.
    """
    for section in ("reference", "material", "interface"):
        if section not in config:
            raise ConfigError(section, "missing required block")
    ref_block = config["reference"]
    mat_block = config["material"]
    int_block = config["interface"]
    sol_block = config.get("solver", {})
    try:
        reference = ReferenceState(
            rho_s0=_require(ref_block, "reference", "rho_s0"),
            rho_f0=_require(ref_block, "reference", "rho_f0"),
            rhat_s0=_require(ref_block, "reference", "rhat_s0"),
            rhat_f0=_require(ref_block, "reference", "rhat_f0"),
        )
    except UnphysicalStateError as exc:
        raise ConfigError("reference", str(exc))
    try:
        material = MaterialModel(
            eps_ss=_require(mat_block, "material", "eps_ss"),
            eps_ff=_require(mat_block, "material", "eps_ff"),
            eps_sf=_optional(mat_block, "material", "eps_sf", 0.0),
            c_s=_optional(mat_block, "material", "c_s", 0.0),
            c_f=_optional(mat_block, "material", "c_f", 0.0),
            lambda_s=_optional(mat_block, "material", "lambda_s", 0.0),
        )
    except UnphysicalStateError as exc:
        raise ConfigError("material", str(exc))
    try:
        interface = InterfaceParams(
            p_i=_require(int_block, "interface", "p_i"),
            d_coeff=_optional(int_block, "interface", "D_coeff", 0.0),
            alpha=_optional(int_block, "interface", "alpha", 1.0),
            l=_optional(int_block, "interface", "l", 1.0),
        )
    except UnphysicalStateError as exc:
        raise ConfigError("interface", str(exc))
    x_max = _optional(sol_block, "solver", "X", None)
    try:
        return ProblemSpec(
            material=material,
            reference=reference,
            interface=interface,
            x_max=x_max,
            n_nodes=int(_optional(sol_block, "solver", "N", 2000)),
            newton_tol=_optional(sol_block, "solver", "newton_tol", 1e-9),
            newton_max_iter=int(_optional(sol_block, "solver", "newton_max_iter", 25)),
        )
    except UnphysicalStateError as exc:
        raise ConfigError("solver", str(exc))


# ---------------------------------------------------------------------------
# output files
# ---------------------------------------------------------------------------


def _atomic_write(path: str, text: str) -> None:
    """Write via a temporary file and rename, so readers never see partials."""
    directory = os.path.dirname(path) or "."
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp_", text=True)
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_profile_csv(path: str, profile) -> None:
    """Deterministic CSV: header row, comma delimiter, 17 significant digits."""
    fields = {
        "x": profile.x,
        "rho_s": profile.rho_s,
        "rho_f": profile.rho_f,
        "v_s": profile.v_s,
        "p": profile.p,
        "P_s": profile.P_s,
        "P_f": profile.P_f,
    }
    lines = [",".join(PROFILE_COLUMNS)]
    columns = [np.asarray(fields[name], dtype=float) for name in PROFILE_COLUMNS]
    for row in zip(*columns):
        lines.append(",".join(_fmt(v) for v in row))
    _atomic_write(path, "\n".join(lines) + "\n")


def _layer_scalars(spec: ProblemSpec) -> dict[str, float]:
    """Boundary-layer scalars from the incompressible linearization.

    For compressible constituents these are the estimates obtained by
    switching the compressibility slopes off; the density-preserving case
    is exact.
    """
    material = spec.material
    if material.c_s != 0.0 or material.c_f != 0.0:
        material = MaterialModel(
            eps_ss=material.eps_ss,
            eps_ff=material.eps_ff,
            eps_sf=material.eps_sf,
            lambda_s=material.lambda_s,
        )
    stiffness = saturation_stiffness(material, spec.reference)
    return {
        "L": stiffness,
        "x0": attenuation_length(material, spec.reference),
        "delta_rho_s": boundary_density_drop(material, spec.reference, spec.interface),
        "C2": boundary_amplitude(material, spec.reference, spec.interface),
    }


def write_summary(path: str, entries: dict[str, Any]) -> None:
    lines = []
    for key, value in entries.items():
        if isinstance(value, float):
            lines.append(f"{key} = {_fmt(value)}")
        else:
            lines.append(f"{key} = {value}")
    _atomic_write(path, "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def run_solve(config: dict, track: str, out_dir: str) -> int:
    spec = build_problem_spec(config)
    problem = HalfspaceProblem(spec)
    incompressible = spec.material.c_s == 0.0 and spec.material.c_f == 0.0
    if track == "auto":
        track = "closed-form" if incompressible else "compressible"
    if track == "closed-form" and not incompressible:
        raise ConfigError("track", "closed-form track requires c_s = c_f = 0")

    if track == "closed-form":
        profile = problem.closed_form_profile()
    else:
        profile = problem.solve_compressible()

    summary: dict[str, Any] = {"track": profile.track}
    summary.update(_layer_scalars(spec))
    summary["iterations"] = profile.newton_iterations
    summary["has_boundary_layer"] = profile.has_boundary_layer
    summary["c_const"] = profile.c_const
    summary["g1"] = profile.g1
    if track == "compressible" and incompressible:
        reference_profile = problem.closed_form_profile()
        deviation = float(np.max(np.abs(profile.rho_s - reference_profile.rho_s)))
        summary["deviation_from_closed_form"] = deviation
    for key, value in profile.diagnostics.as_dict().items():
        summary[f"residual_{key}"] = value

    output = config.get("output", {})
    profile_name = output.get("profile", "profile.csv")
    summary_name = output.get("summary", "summary.txt")
    write_profile_csv(os.path.join(out_dir, profile_name), profile)
    write_summary(os.path.join(out_dir, summary_name), summary)
    return EXIT_OK


def _sweep_apply(config: dict, parameter: str, value: float) -> dict:
    patched = json.loads(json.dumps(config))  # deep copy, JSON-compatible configs
    if parameter == "lambda_s":
        patched["material"]["lambda_s"] = value
    elif parameter in ("c_s", "c_f"):
        patched["material"][parameter] = value
    elif parameter == "p_i":
        patched["interface"]["p_i"] = value
    elif parameter == "D_coeff":
        patched["interface"]["D_coeff"] = value
    return patched


def run_sweep(config: dict, out_dir: str) -> int:
    sweep = config.get("sweep")
    if not sweep:
        raise ConfigError("sweep", "missing [sweep] block (parameter, values)")
    parameter = sweep.get("parameter")
    if parameter not in SWEEP_PARAMETERS:
        raise ConfigError(
            "sweep.parameter", f"must be one of {', '.join(SWEEP_PARAMETERS)}"
        )
    values = sweep.get("values")
    if not isinstance(values, list) or not values:
        raise ConfigError("sweep.values", "must be a nonempty list of numbers")

    header = ["parameter", "value", "L", "x0", "delta_rho_s", "v_s_boundary", "status"]
    rows = [",".join(header)]
    for value in values:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ConfigError("sweep.values", f"expected a number, got {value!r}")
        try:
            variant = _sweep_apply(config, parameter, float(value))
            spec = build_problem_spec(variant)
            problem = HalfspaceProblem(spec)
            scalars = _layer_scalars(spec)
            if spec.material.c_s == 0.0 and spec.material.c_f == 0.0:
                profile = problem.closed_form_profile()
            else:
                profile = problem.solve_compressible()
            row = [
                parameter, _fmt(float(value)),
                _fmt(scalars["L"]), _fmt(scalars["x0"]), _fmt(scalars["delta_rho_s"]),
                _fmt(float(profile.v_s[0])), "ok",
            ]
        except (PorogradError, ValueError) as exc:
            note = f"error: {exc}".replace(",", ";")
            row = [parameter, _fmt(float(value)), "", "", "", "", note]
        rows.append(",".join(row))
    _atomic_write(os.path.join(out_dir, "sweep.csv"), "\n".join(rows) + "\n")
    return EXIT_OK


def _validate_checks(config: dict) -> list[tuple[str, bool, float, str]]:
    """All invariant checks for one scenario: (name, passed, measure, note)."""
    spec = build_problem_spec(config)
    reference, material = spec.reference, spec.material
    model = ConstitutiveModel(reference, material)
    checks: list[tuple[str, bool, float, str]] = []
    rng = np.random.default_rng(20260810)

    # stiffness cross-consistency; raw overrides may break it deliberately
    mat_block = config.get("material", {})
    a_sf = float(mat_block.get("A_sf_raw", model.a_sf))
    a_fs = float(mat_block.get("A_fs_raw", model.a_fs))
    scale = max(abs(a_sf * reference.rho_f0), abs(a_fs * reference.rho_s0), 1.0)
    mismatch = abs(a_sf * reference.rho_f0 - a_fs * reference.rho_s0) / scale
    checks.append(("cross_consistency", mismatch <= 1e-14, mismatch, "relative"))

    # classical pressure partition recovered for zero energy, no compressibility
    plain = ConstitutiveModel(reference, MaterialModel(0.0, 0.0, 0.0))
    worst = 0.0
    for _ in range(200):
        rho_s = reference.rho_s0 * rng.uniform(0.95, 1.05)
        rho_f = plain.saturated_fluid_density(rho_s)
        p = float(rng.uniform(1e4, 1e7))
        state = MixtureState(rho_s, rho_f, p)
        for a in ("s", "f"):
            v = plain.volume_fraction(a, state.rho(a))
            worst = max(worst, abs(plain.partial_pressure(a, state) - p * v) / p)
        worst = max(worst, abs(plain.exchange_coefficient(state) - p) / p)
    checks.append(("delesse_recovery", worst <= 1e-12, worst, "relative"))

    # exchange antisymmetry and the pressure-sum identity on the actual model
    worst_sum = 0.0
    worst_asym = 0.0
    for _ in range(200):
        rho_s = reference.rho_s0 * rng.uniform(0.97, 1.03)
        rho_f = model.saturated_fluid_density(rho_s)
        p = float(rng.uniform(1e4, 1e7))
        state = MixtureState(rho_s, rho_f, p)
        m_s, m_f = model.exchange_forces(state, np.array([1.0, 0.0, 0.0]))
        worst_asym = max(worst_asym, float(np.max(np.abs(m_s + m_f))))
        total = model.partial_pressure("s", state) + model.partial_pressure("f", state)
        p_s, p_f = model.thermodynamic_pressures(state)
        v_s = model.volume_fraction("s", rho_s)
        v_f = model.volume_fraction("f", rho_f)
        identity = p_s + p_f + p * (1.0 - v_s**2 * material.c_s - v_f**2 * material.c_f)
        worst_sum = max(worst_sum, abs(total - identity) / max(abs(identity), 1.0))
    checks.append(("exchange_antisymmetry", worst_asym == 0.0, worst_asym, "absolute"))
    checks.append(("pressure_sum_identity", worst_sum <= 1e-12, worst_sum, "relative"))

    # linearized exchange coefficient against central differences
    _, (m_s_lin, m_f_lin) = model.exchange_coefficient_linearization()
    worst_m = 0.0
    for a, coeff in (("s", m_s_lin), ("f", m_f_lin)):
        step = 1e-6 * reference.ref_rho(a)
        args = {"s": (step, 0.0), "f": (0.0, step)}[a]
        plus = MixtureState(reference.rho_s0 + args[0], reference.rho_f0 + args[1], 0.0)
        minus = MixtureState(reference.rho_s0 - args[0], reference.rho_f0 - args[1], 0.0)
        fd = (model.exchange_coefficient(plus) - model.exchange_coefficient(minus)) / (2 * step)
        denom = max(abs(coeff), abs(fd), 1e-30)
        worst_m = max(worst_m, abs(fd - coeff) / denom)
    checks.append(("exchange_linearization", worst_m <= 1e-8, worst_m, "relative"))

    # first integrals along the solved profile
    problem = HalfspaceProblem(spec)
    incompressible = material.c_s == 0.0 and material.c_f == 0.0
    try:
        if incompressible:
            profile = problem.closed_form_profile()
            tol = 1e-8
        else:
            small = ProblemSpec(
                material=material, reference=reference, interface=spec.interface,
                x_max=spec.x_max, n_nodes=min(spec.n_nodes, 800),
                newton_tol=spec.newton_tol, newton_max_iter=spec.newton_max_iter,
            )
            profile = HalfspaceProblem(small).solve_compressible()
            tol = 1e-6
        worst_prof = profile.diagnostics.worst()
        checks.append(("equilibrium_residuals", worst_prof <= tol, worst_prof, "relative"))
    except PorogradError as exc:
        checks.append(("equilibrium_residuals", False, float("nan"), str(exc)))

    # oracle equivalence on the density-preserving companion, at a drive
    # small enough that both tracks approximate the same continuum limit
    # (the closed form is the linearized solution; at full drive the two
    # differ by the linearization gap, not by solver error)
    if material.lambda_s > 0.0:
        try:
            companion = MaterialModel(
                eps_ss=material.eps_ss, eps_ff=material.eps_ff,
                eps_sf=material.eps_sf, lambda_s=material.lambda_s,
            )
            iface = spec.interface
            drop_full = boundary_density_drop(companion, reference, iface)
            if drop_full > 0.0:
                shrink = 1e-8 * reference.rho_s0 / drop_full
                iface = InterfaceParams(
                    p_i=iface.p_i, d_coeff=iface.d_coeff * shrink,
                    alpha=iface.alpha, l=iface.l,
                )
            small = ProblemSpec(
                material=companion, reference=reference, interface=iface,
                n_nodes=min(spec.n_nodes, 1000),
            )
            prob_c = HalfspaceProblem(small)
            cf = prob_c.closed_form_profile()
            num = prob_c.solve_compressible()
            drop = cf.closed_form.delta_rho_s
            err = float(np.max(np.abs(num.rho_s - cf.rho_s)))
            rel = err / drop if drop > 0.0 else err
            checks.append(("oracle_equivalence", rel <= 1e-5, rel, "of delta_rho_s"))
        except PorogradError as exc:
            checks.append(("oracle_equivalence", False, float("nan"), str(exc)))

        # scaling laws of the attenuation length and boundary drop
        companion = MaterialModel(
            eps_ss=material.eps_ss, eps_ff=material.eps_ff,
            eps_sf=material.eps_sf, lambda_s=material.lambda_s,
        )
        quad = MaterialModel(
            eps_ss=material.eps_ss, eps_ff=material.eps_ff,
            eps_sf=material.eps_sf, lambda_s=4.0 * material.lambda_s,
        )
        try:
            ratio_x0 = attenuation_length(quad, reference) / attenuation_length(
                companion, reference
            )
            iface2 = InterfaceParams(
                p_i=2.0 * spec.interface.p_i, d_coeff=spec.interface.d_coeff,
                alpha=spec.interface.alpha, l=spec.interface.l,
            )
            drop1 = boundary_density_drop(companion, reference, spec.interface)
            drop2 = boundary_density_drop(companion, reference, iface2)
            err = abs(ratio_x0 - 2.0)
            if drop1 > 0.0:
                err = max(err, abs(drop2 / drop1 - 2.0))
            checks.append(("scaling_laws", err <= 1e-12, err, "relative"))
        except PorogradError as exc:
            checks.append(("scaling_laws", False, float("nan"), str(exc)))

    return checks


def run_validate(config: dict, out_dir: str) -> int:
    checks = _validate_checks(config)
    lines = []
    all_pass = True
    for name, passed, measure, note in checks:
        all_pass &= passed
        status = "PASS" if passed else "FAIL"
        lines.append(f"{name}: {status} (residual = {measure:.3e}, {note})")
    _atomic_write(os.path.join(out_dir, "validation_report.txt"), "\n".join(lines) + "\n")
    for line in lines:
        print(line)
    return EXIT_OK if all_pass else EXIT_VALIDATION


def run_closed_form(config: dict) -> int:
    spec = build_problem_spec(config)
    for key, value in _layer_scalars(spec).items():
        print(f"{key} = {_fmt(value)}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="porograd",
        description="Saturated porous solid equilibrium: solvers and reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("solve", "sweep", "validate", "closed-form"):
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", required=True, help="TOML or JSON scenario file")
        cmd.add_argument("--override", action="append", default=[],
                         metavar="KEY=VALUE", help="patch a config entry (section.key=value)")
        if name in ("solve", "sweep", "validate"):
            cmd.add_argument("--out", default=".", help="output directory")
        if name == "solve":
            cmd.add_argument("--track", default="auto",
                             choices=("auto", "closed-form", "compressible"))
            cmd.add_argument("--format", default="csv", choices=("csv",))
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = apply_overrides(load_config(args.config), args.override)
        if args.command == "solve":
            return run_solve(config, args.track, args.out)
        if args.command == "sweep":
            return run_sweep(config, args.out)
        if args.command == "validate":
            return run_validate(config, args.out)
        return run_closed_form(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PorogradError as exc:
        print(f"solver error: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
