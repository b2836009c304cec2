import math

import numpy as np
import pytest

from casimir_momentum.quadrature import (
    DEFAULT_SPEC,
    KAPPA1_CONTINUUM_AT_ZERO,
    KAPPA2_CONTINUUM_AT_ZERO,
    ContinuumResult,
    QuadratureError,
    QuadratureSpec,
    integrate_adaptive,
    integrate_to_inf,
    kappa1_continuum,
    kappa1_continuum_integrand,
    kappa2_continuum,
    kappa2_continuum_integrand,
    tail_bound_ok,
    ymin_sensitivity,
)

BETA_VALUE = 3.0 * math.pi / 512.0  # int_0^inf y^4/(1+y^2)^6 dy


def test_polynomial():
    res = integrate_adaptive(lambda x: x**2, 0.0, 1.0)
    assert abs(res.value - 1.0 / 3.0) < 1e-12


def test_beta_integral_via_upper_cut():
    # Tail beyond the cut is bounded by int_Y^inf y^-8 = Y^-7/7.
    spec = DEFAULT_SPEC
    assert tail_bound_ok(spec.upper_cut**-7 / 7.0, spec)
    res = integrate_adaptive(lambda y: y**4 / (1 + y * y)**6, 0.0,
                             spec.upper_cut, spec)
    assert abs(res.value - BETA_VALUE) < 1e-9


def test_interior_kink_converges_with_subdivisions():
    res = integrate_adaptive(lambda x: np.abs(x - 1.0 / 3.0), 0.0, 1.0)
    assert abs(res.value - 5.0 / 18.0) < 1e-10
    assert res.subdivisions > 0
    assert res.neval >= 15 * (1 + 2 * res.subdivisions) - 30


@pytest.mark.parametrize("f,a,b,true", [
    (lambda x: np.sin(10 * x), 0.0, math.pi, (1 - math.cos(10 * math.pi)) / 10.0),
    (lambda x: np.exp(-x), 0.0, 30.0, 1.0 - math.exp(-30.0)),
    (lambda x: 1.0 / (1.0 + x * x), 0.0, 1.0, math.pi / 4.0),
])
def test_error_estimate_honest(f, a, b, true):
    res = integrate_adaptive(f, a, b)
    # The estimate covers truncation; allow a machine-rounding floor.
    assert abs(res.value - true) <= res.error + 100 * np.finfo(float).eps * (1 + abs(true))


def test_max_subdivisions_failure_carries_best_estimate():
    spec = QuadratureSpec(abs_tol=1e-300, rel_tol=1e-16, max_subdivisions=3)
    with pytest.raises(QuadratureError) as info:
        integrate_adaptive(lambda x: np.abs(x - 1.0 / 3.0) ** 0.5, 0.0, 1.0, spec)
    err = info.value
    assert math.isfinite(err.value)
    assert err.error > 0
    assert err.subdivisions == 3


def test_invalid_limits_rejected():
    with pytest.raises(ValueError):
        integrate_adaptive(lambda x: x, 1.0, 0.0)
    with pytest.raises(ValueError):
        integrate_adaptive(lambda x: x, 0.0, math.inf)


def test_nonfinite_integrand_rejected():
    def f(x):
        with np.errstate(divide="ignore", over="ignore"):
            return 1.0 / x

    with pytest.raises(ValueError, match="not finite"):
        integrate_adaptive(f, 0.0, 1.0)


def test_spec_validation():
    with pytest.raises(ValueError):
        QuadratureSpec(abs_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureSpec(rel_tol=-1e-9)
    with pytest.raises(ValueError):
        QuadratureSpec(max_subdivisions=0)


def test_infinite_range_transform():
    res = integrate_to_inf(lambda y: np.exp(-y), 0.0)
    assert abs(res.value - 1.0) < 1e-12
    res = integrate_to_inf(lambda y: y**4 / (1 + y * y)**6, 0.0)
    assert abs(res.value - BETA_VALUE) < 1e-13


# Frozen continuum oracles (30-digit quadrature, independent of this engine):
K1_AT_0 = 0.013928822303688225      # equals 3 pi/64 - 2/15 exactly
K1_AT_1 = 0.0093809208359485096
K2_AT_1 = 0.018346373742702499


def test_kappa1_closed_form_at_zero():
    assert KAPPA1_CONTINUUM_AT_ZERO == pytest.approx(K1_AT_0, abs=1e-17)
    res = kappa1_continuum(0.0)
    assert res.value == pytest.approx(KAPPA1_CONTINUUM_AT_ZERO, abs=1e-9)


def test_kappa1_continuum_endpoints():
    assert kappa1_continuum(0.0).value == pytest.approx(1.4e-2, rel=0.02)
    assert kappa1_continuum(1.0).value == pytest.approx(9.3e-3, rel=0.02)
    assert kappa1_continuum(1.0).value == pytest.approx(K1_AT_1, rel=1e-10)


def test_kappa1_vanishes_at_large_ymin():
    assert kappa1_continuum(1e3).value < 1e-6


def test_kappa2_continuum_values():
    assert kappa2_continuum(1.0).value == pytest.approx(0.018, rel=0.05)
    assert kappa2_continuum(1.0).value == pytest.approx(K2_AT_1, rel=1e-10)
    assert abs(kappa2_continuum(0.0).value - KAPPA2_CONTINUUM_AT_ZERO) < 1e-9
    # Prefactor times the beta-function value reproduces the closed form.
    assert KAPPA2_CONTINUUM_AT_ZERO == pytest.approx(
        256.0 / (27.0 * math.pi) * BETA_VALUE, abs=1e-17)


def test_kappa2_vanishes_at_large_ymin():
    assert kappa2_continuum(1e3).value < 1e-12


def test_negative_ymin_rejected():
    with pytest.raises(ValueError):
        kappa1_continuum(-0.1)
    with pytest.raises(ValueError):
        kappa2_continuum(-2.0)


def test_continuum_error_contract():
    spec = QuadratureSpec(abs_tol=1e-13, rel_tol=1e-9)
    for res in (kappa1_continuum(0.7, spec), kappa2_continuum(0.7, spec)):
        assert isinstance(res, ContinuumResult)
        assert res.estimated_error <= spec.rel_tol * abs(res.value) + spec.abs_tol


def test_integrand_positivity_dense_grid():
    grid = np.concatenate([np.geomspace(1e-8, 1e-3, 2000),
                           np.linspace(1.0000001e-3, 60.0, 30000)])
    assert np.all(kappa1_continuum_integrand(grid) >= 0.0)
    assert np.all(kappa2_continuum_integrand(grid) >= 0.0)


def test_kappa1_series_matches_direct_bracket():
    # Series used below 1e-3 must join smoothly onto the direct expression.
    y = np.array([9.99e-4, 1.001e-3])
    vals = kappa1_continuum_integrand(y)
    assert vals[0] == pytest.approx(vals[1], rel=1e-8)


def test_tolerance_scaling_never_moves_beyond_reported_error():
    coarse = QuadratureSpec(abs_tol=1e-12, rel_tol=1e-6)
    fine = QuadratureSpec(abs_tol=1e-12, rel_tol=5e-7)
    for op in (kappa1_continuum, kappa2_continuum):
        res_c = op(0.8, coarse)
        res_f = op(0.8, fine)
        assert abs(res_c.value - res_f.value) <= res_c.estimated_error + 1e-15


def test_ymin_sensitivity_monotone():
    rows = ymin_sensitivity("kappa2", [0.0, 0.5, 1.0, 2.0])
    values = [r.value for r in rows]
    assert all(b < a for a, b in zip(values, values[1:]))


def test_ymin_sensitivity_kappa1_endpoints():
    rows = ymin_sensitivity("kappa1", [0.0, 1.0])
    assert rows[0].value == pytest.approx(1.4e-2, rel=0.02)
    assert rows[1].value == pytest.approx(9.3e-3, rel=0.02)


def test_ymin_sensitivity_single_point_matches_direct_call():
    row, = ymin_sensitivity("kappa2", [1.0])
    assert row.value == kappa2_continuum(1.0).value


def test_ymin_sensitivity_validation():
    with pytest.raises(ValueError):
        ymin_sensitivity("kappa3", [0.0, 1.0])
    with pytest.raises(ValueError):
        ymin_sensitivity("kappa1", [])
    with pytest.raises(ValueError):
        ymin_sensitivity("kappa1", [1.0, 0.5])
