"""Oracle and invariant suite backing the `verify` subcommand.

Each check recomputes a quantity and compares it against its pinned target
band or identity. The same bands are asserted independently by the test
suite; this module exists so a deployed artifact can audit itself from the
command line.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import budget, hydrogen, quadrature, renorm, sums, units
from .units import constants


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float | None   # None where a value would break byte-determinism
    target: str
    passed: bool


def _band(name: str, value: float, center: float, tol: float) -> CheckResult:
    return CheckResult(name=name, value=float(value),
                       target=f"{center:g} +/- {tol:g}",
                       passed=abs(value - center) <= tol)


def _rel_band(name: str, value: float, center: float, rel: float) -> CheckResult:
    return CheckResult(name=name, value=float(value),
                       target=f"{center:g} +/- {rel * 100:g}%",
                       passed=abs(value - center) <= rel * abs(center))


def run_checks() -> list[CheckResult]:
    const = constants()
    alpha = const.fine_structure_alpha
    out: list[CheckResult] = []

    # Constant-set consistency.
    hartree_ratio = const.hartree_energy / (
        alpha**2 * const.electron_mass * const.light_speed_c0**2)
    out.append(_rel_band("units_hartree_identity", hartree_ratio, 1.0, 1e-9))
    bohr_ratio = const.bohr_radius_a0 * const.electron_mass \
        * const.light_speed_c0 * alpha / const.hbar
    out.append(_rel_band("units_bohr_identity", bohr_ratio, 1.0, 1e-9))
    coulomb_ratio = const.elementary_charge_e**2 / (
        4 * math.pi * const.vacuum_permittivity_eps0 * const.bohr_radius_a0
        * const.hartree_energy)
    out.append(_rel_band("units_coulomb_identity", coulomb_ratio, 1.0, 1e-9))

    # Discrete sums with tails.
    t0 = time.perf_counter()
    k1d = sums.kappa1_discrete(200, tail=True)
    k1_runtime = time.perf_counter() - t0
    out.append(_band("kappa1_discrete_200", k1d.value, 0.21, 0.005))
    out.append(CheckResult("kappa1_discrete_runtime", None,
                           "under 60 s", k1_runtime < 60.0))
    k2d = sums.kappa2_discrete(200, tail=True)
    out.append(_band("kappa2_discrete_200", k2d.value, 0.0796, 0.0005))

    # Continuum integrals.
    k1c0 = quadrature.kappa1_continuum(0.0)
    k1c1 = quadrature.kappa1_continuum(1.0)
    out.append(_rel_band("kappa1_continuum_ymin0", k1c0.value, 1.4e-2, 0.02))
    out.append(_rel_band("kappa1_continuum_ymin1", k1c1.value, 9.3e-3, 0.02))
    k2c1 = quadrature.kappa2_continuum(1.0)
    out.append(_rel_band("kappa2_continuum_ymin1", k2c1.value, 0.018, 0.05))
    k2c0 = quadrature.kappa2_continuum(0.0)
    out.append(CheckResult(
        "kappa2_continuum_closed_form", k2c0.value, "1/18 to 1e-9",
        abs(k2c0.value - quadrature.KAPPA2_CONTINUUM_AT_ZERO) <= 1e-9))
    beta = quadrature.integrate_adaptive(
        lambda y: y**4 / (1 + y * y)**6, 0.0,
        quadrature.DEFAULT_SPEC.upper_cut)
    out.append(CheckResult(
        "beta_integral_closed_form", beta.value, "3 pi/512 to 1e-9",
        abs(beta.value - 3 * math.pi / 512) <= 1e-9))

    # Adopted totals and the net relative shift.
    k1_total = k1d.value + k1c1.value
    k2_total = k2d.value + k2c1.value
    net = -k1_total + k2_total
    out.append(_band("kappa1_total", k1_total, 0.22, 0.01))
    out.append(_band("kappa2_total", k2_total, 0.098, 0.005))
    out.append(_band("net_coefficient", net, -0.12, 0.01))
    out.append(_rel_band("relative_shift_magnitude", abs(net) * alpha**2,
                         6e-6, 0.10))

    # Constant-log sum and the normalization coefficient.
    sb = sums.bethe_sum(200, tail=True)
    out.append(_band("bethe_sum_200", sb.value, 0.336, 0.002))
    out.append(_band("normalization_coefficient",
                     sums.normalization_constant(-8.35, sb), 0.84, 0.01))

    # Polarizability and oscillator strengths.
    pol = sums.polarizability_discrete(400, tail=True)
    out.append(_band("polarizability_discrete_400", pol.value, 3.663, 0.001))
    out.append(CheckResult("polarizability_below_exact", pol.value,
                           "below 4.5", pol.value < sums.POLARIZABILITY_EXACT_AU))
    osc = sums.oscillator_strength_sum(400, tail=True)
    out.append(_band("oscillator_strength_sum_400", osc.value, 0.5650, 0.001))
    out.append(CheckResult(
        "oscillator_partials_below_one",
        max(v for _, v in osc.partial_sums), "below 1 for all truncations",
        all(v < 1.0 for _, v in osc.partial_sums)))

    # Regularization scaling.
    disp = renorm.DispersionModel.dispersionless(2.0)
    grid = [1e16 * 2.0**k for k in range(5)]
    out.append(_band("divergence_exponent_dispersionless",
                     renorm.divergence_exponent(disp, grid), 4.00, 0.01))
    free = renorm.DispersionModel.free_electron(2.5e28)
    out.append(_band("divergence_exponent_free_electron",
                     renorm.divergence_exponent(free, grid), 2.00, 0.01))
    m_e = const.electron_mass
    big = 1e4 * m_e * const.light_speed_c0 / const.hbar
    increment = renorm.delta_mass(m_e, 2 * big) - renorm.delta_mass(m_e, big)
    limit = (8 * alpha * m_e / (3 * math.pi)) * math.log(2.0)
    out.append(_rel_band("delta_mass_doubling_increment",
                         increment / limit, 1.0, 1e-3))
    rho = renorm.casimir_mass_density(
        free, renorm.CutoffScheme.length(const.classical_electron_radius))
    ratio = abs(rho) / (free.n_e * m_e / alpha)
    out.append(CheckResult("rho_c_order_of_magnitude", ratio,
                           "within factor 10 of n_e m_e/alpha",
                           0.1 <= ratio <= 10.0))

    # Identity suite.
    atom = units.AtomicParams.hydrogen()
    dm1 = renorm.delta_mass(const.proton_mass,
                            2 * const.proton_mass * const.light_speed_c0 / const.hbar
                            ) / const.electron_mass
    dm2 = renorm.delta_mass(m_e, 2 * m_e * const.light_speed_c0 / const.hbar
                            ) / const.electron_mass
    formula = renorm.reduced_mass_shift(atom, dm1, dm2)
    up = units.AtomicParams(m1=atom.m1 + dm1, m2=atom.m2 + dm2)
    down = units.AtomicParams(m1=atom.m1 - dm1, m2=atom.m2 - dm2)
    centered = 0.5 * (1.0 / up.reduced_mass - 1.0 / down.reduced_mass)
    rel_err = abs(formula - centered) / abs(centered)
    out.append(CheckResult("reduced_mass_shift_first_order", float(rel_err),
                           "matches two-sided perturbed 1/mu to 1e-3",
                           rel_err <= 1e-3))
    net_coeff = (budget.DARWIN_MASS_COEFF + budget.P4_MASS_COEFF)
    out.append(CheckResult("mass_coefficient_itemization", float(net_coeff),
                           "8/3 - 5/3 = 1 exactly", net_coeff == 1))
    residual = sums.first_moment_residual(sums.PerturbedGroundState.build(40))
    out.append(CheckResult("first_moment_residual", residual,
                           "0 to 1e-14", residual <= 1e-14))

    worst = 0.0
    for n in range(2, 201):
        for p in (1, 2, 3):
            closed = hydrogen.radial_record(n, "closed_form").integral(p)
            quad = hydrogen.radial_record(n, "quadrature").integral(p)
            worst = max(worst, abs(quad - closed) / abs(closed))
    out.append(CheckResult("radial_dual_route_nle200", float(worst),
                           "agree to 1e-10 relative", worst <= 1e-10))

    # Determinism of the serialized report for a fixed configuration.
    from .cli import ReportEnvelope, RunConfig, serialize
    cfg = RunConfig(subcommand="budget", params={"probe": 1.0},
                    output_format="json", output_path=None)
    env = ReportEnvelope(artifact_version="probe", config=cfg,
                         results={"q": {"value": [0.1, 0.2, 0.3],
                                        "error": None}},
                         provenance={"q": "determinism probe"},
                         timing_seconds=0.0)
    out.append(CheckResult("serialization_deterministic", None,
                           "byte-identical repeated serialization",
                           serialize(env, "json") == serialize(env, "json")))

    budget_fields = budget.FieldConfiguration(E0=[1e5, 0, 0], B0=[0, 1, 0],
                                              Q0=[0, 0, 0])
    bud = budget.assemble_budget(budget_fields)
    cross = np.cross(budget_fields.B0, budget_fields.E0)
    dot = float(bud.abraham @ cross)
    parallel = abs(dot - float(np.linalg.norm(bud.abraham))
                   * float(np.linalg.norm(cross)))
    out.append(CheckResult("abraham_parallel_to_BxE", float(parallel),
                           "parallel to B0 x E0",
                           parallel <= 1e-12 * float(np.linalg.norm(bud.abraham))
                           * float(np.linalg.norm(cross)) + 1e-300))
    return out
