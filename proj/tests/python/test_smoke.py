import cmath
import math

import pytest

import hestoncal as hc


def test_bsm_price():
    res = hc.price_call_bsm(hc.BsmParams(100.0, 0.20, 0.02, 1.0), 100.0)
    assert abs(res.price - 8.9160) <= 5e-4
    assert 0.0 <= res.pi2 <= res.pi1 <= 1.0


def test_heston_price():
    p = hc.HestonParams(v0=0.16, vbar=0.16, a=1.0, eta=2.0, rho=-0.8)
    res = hc.price_call_heston(p, hc.OptionSpec(s0=1.0, k=2.0, r=0.0, t=10.0))
    assert abs(res.price - 0.0495) <= 5e-4


def test_cf_and_inversion_with_python_callable():
    p = hc.BsmParams(100.0, 0.20, 0.02, 1.0)
    assert hc.cf_bsm(p, 0.0) == 1.0
    assert abs(hc.cf_bsm(p, -1j) - 100.0 * math.exp(0.02)) < 1e-10
    normal = lambda w: cmath.exp(-0.5 * w * w)
    assert abs(hc.cdf_from_cf(normal, 0.0) - 0.5) < 1e-10
    assert abs(hc.pi2(normal, 0.0) - 0.5) < 1e-10


def test_datasets_roundtrip():
    d1 = hc.builtin_dataset("D1")
    assert len(d1) == 15
    assert d1[0].mid == 56.9
    back = hc.parse_quotes(hc.serialize_quotes(d1))
    assert [q.ask for q in back] == [q.ask for q in d1]
    assert len(hc.builtin_dataset("d3")) == 30


def test_objective_and_local_calibration():
    d1 = hc.builtin_dataset("D1")
    published = hc.HestonParams(0.0989, 0.3407, 0.7331, 0.7068, -0.2949)
    mse, residuals = hc.objective(published, d1)
    assert len(residuals) == 15
    assert abs(sum(abs(r) for r in residuals) / 15 - 0.3369) <= 5e-3

    fit = hc.calibrate_local(d1)
    assert fit.converged
    assert fit.accepted
    assert fit.within_spread_count >= 12
    assert hc.acceptance_check(fit.per_option)


def test_errors():
    with pytest.raises(hc.HestonError, match="DegenerateParams"):
        hc.params_from_optvector(hc.OptVector(0.1, 0.0, 0.5, 0.0, 1.0))
    with pytest.raises(hc.HestonError, match="ParseError"):
        hc.parse_quotes("1 2 3\n")
    with pytest.raises(hc.HestonError):
        hc.calibrate_global(hc.builtin_dataset("D1"), hc.CalibrationConfig())
