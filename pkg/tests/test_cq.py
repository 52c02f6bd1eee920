"""Convolution quadrature weight and convolution tests."""

import json
import math
from pathlib import Path

import numpy as np
import pytest

from viscowave.cq import (CQScheme, convolve_full, convolve_step,
                          fractional_derivative_check, kinetic_weights,
                          weights)
from viscowave.material import MaterialRegion, ModelKind, eval_transfer

ORACLE = json.loads((Path(__file__).parent / "data"
                     / "frac_deriv_oracle.json").read_text())


def test_scheme_validation():
    with pytest.raises(ValueError):
        CQScheme(k=0.0, N=10)
    with pytest.raises(ValueError):
        CQScheme(k=0.1, N=0)
    with pytest.raises(ValueError):
        CQScheme(k=0.1, N=10, lam=1.5)
    sch = CQScheme(k=0.1, N=64)
    assert 0 < sch.lam < 1
    assert sch.symbol_at(0.0) == pytest.approx(2.0 / 0.1)


class TestWeightOracles:
    def test_constant_symbol(self):
        w = weights(lambda s: np.ones_like(s), CQScheme(k=1.0, N=128))
        expected = np.zeros(129)
        expected[0] = 1.0
        assert np.abs(w.omega - expected).max() < 1e-10

    def test_derivative_symbol(self):
        # f(s) = s, k = 0.1: w0 = 20, wj = 40 (-1)^j
        w = weights(lambda s: s, CQScheme(k=0.1, N=128))
        j = np.arange(129)
        expected = np.where(j == 0, 20.0, 40.0 * (-1.0) ** j)
        assert np.abs(w.omega - expected).max() < 1e-10

    def test_integral_symbol(self):
        # f(s) = 1/s, k = 1: trapezoidal integration weights
        w = weights(lambda s: 1.0 / s, CQScheme(k=1.0, N=128))
        expected = np.ones(129)
        expected[0] = 0.5
        assert np.abs(w.omega - expected).max() < 1e-10

    def test_kinetic_closed_form_matches_transform(self):
        sch = CQScheme(k=0.05, N=200)
        w_exact = kinetic_weights(sch)
        w_fft = weights(lambda s: s * s, sch)
        scale = np.abs(w_exact.omega).max()
        assert np.abs(w_exact.omega - w_fft.omega).max() / scale < 1e-12

    def test_weights_scale_with_large_N(self):
        # the largest shipped grid: absolute accuracy survives N = 10,240
        sch = CQScheme(k=40.0 / 10240, N=10240)
        w = weights(lambda s: s, sch)
        j = np.arange(10241)
        expected = np.where(j == 0, 2.0 / sch.k, (4.0 / sch.k) * (-1.0) ** j)
        assert np.abs(w.omega - expected).max() < 1e-8 * np.abs(expected).max()


def test_weight_linearity():
    sch = CQScheme(k=0.2, N=96)
    f = lambda s: 1.0 / (1.0 + 0.5 * s)
    g = lambda s: s / (1.0 + 0.25 * s)
    combo = weights(lambda s: 2.0 * f(s) - 3.0 * g(s), sch)
    parts = 2.0 * weights(f, sch).omega - 3.0 * weights(g, sch).omega
    assert np.abs(combo.omega - parts).max() < 1e-10 * max(1, np.abs(parts).max())


def test_fractional_composition():
    """CQ(s^nu) o CQ(s^(1-nu)) acts like CQ(s) on smooth causal samples."""
    nu = 0.3
    sch = CQScheme(k=2.0 / 256, N=256)
    t = sch.times
    x = np.sin(t) ** 2 * t**2          # smooth, vanishes to 2nd order at 0
    w_nu = weights(lambda s: np.exp(nu * np.log(s)), sch)
    w_rest = weights(lambda s: np.exp((1 - nu) * np.log(s)), sch)
    w_one = weights(lambda s: s, sch)
    composed = convolve_full(w_rest, convolve_full(w_nu, x))
    direct = convolve_full(w_one, x)
    assert np.abs(composed - direct).max() < 1e-8 * np.abs(direct).max()


def test_elastic_region_weights_are_memoryless():
    reg = MaterialRegion(0, 1, ModelKind.ZENER, c0=1.5, c1=0.75, a=0.5)
    w = weights(lambda s: eval_transfer(reg, s), CQScheme(k=0.01, N=256))
    assert w.omega[0] == pytest.approx(1.5, abs=1e-12)
    assert np.abs(w.omega[1:]).max() < 1e-12


def test_material_weights_are_real_with_tolerance():
    frac = MaterialRegion(0, 1, ModelKind.FRACTIONAL_ZENER,
                          c0=1.5, c1=2.75, a=0.5, nu=0.5)
    w = weights(lambda s: eval_transfer(frac, s), CQScheme(k=0.02, N=512))
    assert w.imag_residue < 1e-10


def test_non_symmetric_function_rejected():
    with pytest.raises(ValueError, match="conjugate-symmetric"):
        weights(lambda s: 1j * np.ones_like(s), CQScheme(k=0.1, N=32))


class TestConvolveStep:
    def test_zero_history(self):
        w = weights(lambda s: s, CQScheme(k=0.1, N=16))
        hist = np.zeros((8, 5))
        assert np.all(convolve_step(w, hist, 8) == 0.0)

    def test_memoryless_weights_ignore_history(self):
        w = weights(lambda s: np.ones_like(s), CQScheme(k=0.1, N=16))
        rng = np.random.default_rng(0)
        hist = rng.standard_normal((10, 4))
        assert np.abs(convolve_step(w, hist, 10)).max() < 1e-9

    def test_trapezoid_identity(self):
        # f = 1/s, k = 1, history x^0 = x^1 = 1: lagged sum at n = 2 is 2
        w = weights(lambda s: 1.0 / s, CQScheme(k=1.0, N=8))
        hist = np.ones((2, 1))
        assert convolve_step(w, hist, 2)[0] == pytest.approx(2.0, abs=1e-10)

    def test_out_of_range(self):
        w = weights(lambda s: s, CQScheme(k=0.1, N=4))
        with pytest.raises(IndexError):
            convolve_step(w, np.ones((9, 1)), 9)


class TestFractionalDerivative:
    def test_exact_value_at_t1(self):
        # nu = 0.5 on t^2: exact derivative at t = 1 is 2/Gamma(2.5)
        sch = CQScheme(k=1.0 / 128, N=128)
        w = weights(lambda s: np.exp(0.5 * np.log(s)), sch)
        t = sch.times
        approx = convolve_full(w, t**2)
        assert approx[-1] == pytest.approx(2.0 / math.gamma(2.5), abs=2e-4)
        assert 2.0 / math.gamma(2.5) == pytest.approx(1.504506, abs=1e-6)

    def test_nu_to_one_limit(self):
        # weights of s applied to t^2 give 2t away from the start
        sch = CQScheme(k=2.0 / 128, N=128)
        w = weights(lambda s: s, sch)
        t = sch.times
        approx = convolve_full(w, t**2)
        mask = t >= 0.25
        assert np.abs(approx[mask] - 2 * t[mask]).max() < 1e-3

    def test_matches_frozen_oracle(self):
        for nu_s, entry in ORACLE["nu"].items():
            nu = float(nu_s)
            for level in entry["levels"]:
                N = level["steps"]
                err = fractional_derivative_check(nu, k=ORACLE["horizon"] / N, N=N)
                assert err == pytest.approx(level["max_error_full"], rel=1e-6)

    def test_second_order_on_smooth_window(self):
        T = ORACLE["horizon"]
        for nu in (0.25, 0.5, 0.75):
            errs = [fractional_derivative_check(nu, k=T / N, N=N,
                                                t_min=ORACLE["t_min_smooth"])
                    for N in (128, 256)]
            assert 3.5 <= errs[0] / errs[1] <= 4.5
