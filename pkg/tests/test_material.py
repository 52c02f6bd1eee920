"""Material law and certificate tests."""

import numpy as np
import pytest

from viscowave.material import (Certificate, CoupledModel, MaterialRegion,
                                ModelKind, certificate_of, eval_transfer,
                                fractional_power_bound_check,
                                verify_hypotheses)


def region(kind, **kw):
    defaults = dict(x_lo=0.0, x_hi=1.0)
    defaults.update(kw)
    return MaterialRegion(kind=kind, **defaults)


ZENER = region(ModelKind.ZENER, c0=1.5, c1=2.75, a=0.5)
MAXWELL = region(ModelKind.MAXWELL, c1=1.0, a=0.5)
VOIGT = region(ModelKind.VOIGT, c0=1.5, c1=2.0)


class TestRegionValidation:
    def test_zener_needs_nonnegative_diffusive_part(self):
        with pytest.raises(ValueError, match="c1 >= a\\*c0"):
            region(ModelKind.ZENER, c0=2.0, c1=0.5, a=1.0)

    def test_maxwell_forbids_base_stiffness(self):
        with pytest.raises(ValueError):
            region(ModelKind.MAXWELL, c0=1.0, c1=1.0, a=0.5)

    def test_voigt_forbids_relaxation(self):
        with pytest.raises(ValueError):
            region(ModelKind.VOIGT, c0=1.0, c1=1.0, a=0.5)

    def test_fractional_orders(self):
        with pytest.raises(ValueError):
            region(ModelKind.FRACTIONAL_ZENER, c0=1.0, c1=1.0, a=0.5, nu=1.0)
        with pytest.raises(ValueError):
            region(ModelKind.ZENER, c0=1.0, c1=1.0, a=0.5, nu=0.5)

    def test_elastic_accepts_collapsed_zener_parameters(self):
        r = region(ModelKind.ELASTIC, c0=1.75, c1=1.75, a=1.0)
        assert r.c_diff == 0.0
        with pytest.raises(ValueError):
            region(ModelKind.ELASTIC, c0=1.0, c1=0.3, a=0.5)

    def test_empty_interval(self):
        with pytest.raises(ValueError, match="empty region"):
            MaterialRegion(1.0, 1.0, ModelKind.ELASTIC, c0=1.0)


class TestTransferFunction:
    def test_elastic_collapse_is_constant(self):
        # c1 = a*c0 reduces the zener law to linear elasticity
        r = region(ModelKind.ZENER, c0=1.5, c1=0.75, a=0.5)
        for s in (1.0, 0.01 + 3j, 200.0 - 15j):
            assert eval_transfer(r, s) == pytest.approx(1.5, abs=1e-14)

    def test_zener_value(self):
        assert eval_transfer(ZENER, 1.0) == pytest.approx(17.0 / 6.0, abs=1e-14)

    def test_real_s_gives_real_value(self):
        rng = np.random.default_rng(3)
        s = 10.0 ** rng.uniform(-3, 3, size=50)
        for r in (ZENER, MAXWELL, VOIGT):
            assert np.all(eval_transfer(r, s).imag == 0.0)

    def test_special_cases(self):
        s = 0.7 + 1.3j
        assert eval_transfer(MAXWELL, s) == pytest.approx(s * 1.0 / (1 + 0.5 * s))
        assert eval_transfer(VOIGT, s) == pytest.approx(1.5 + 2.0 * s)

    def test_conjugation_symmetry(self):
        rng = np.random.default_rng(11)
        s = 10.0 ** rng.uniform(-3, 3, 200) + 1j * rng.uniform(-1e3, 1e3, 200)
        frac = region(ModelKind.FRACTIONAL_ZENER, c0=1.5, c1=2.75, a=0.5, nu=0.3)
        for r in (ZENER, MAXWELL, VOIGT, frac):
            c_bar = eval_transfer(r, np.conj(s))
            assert np.allclose(c_bar, np.conj(eval_transfer(r, s)), rtol=1e-14)

    def test_rejects_left_halfplane(self):
        with pytest.raises(ValueError):
            eval_transfer(ZENER, -1.0 + 2j)
        with pytest.raises(ValueError):
            eval_transfer(ZENER, 1j)


class TestCertificates:
    def test_zener_psi(self):
        cert = certificate_of(region(ModelKind.ZENER, c0=1.5, c1=2.75, a=0.5))
        assert cert.r == 0
        assert cert.psi(np.array(0.25)) == pytest.approx(0.375)

    def test_voigt_phi(self):
        cert = certificate_of(VOIGT)
        assert cert.r == 1
        assert cert.phi(np.array(2.0)) == pytest.approx(3.5)
        frac = certificate_of(region(ModelKind.FRACTIONAL_VOIGT,
                                     c0=1.5, c1=2.0, nu=0.5))
        assert frac.phi(np.array(0.5)) == pytest.approx(3.5 / 0.25)

    def test_maxwell_psi(self):
        cert = certificate_of(MAXWELL)
        # c1 min(1, a^3) / (2 a^2) * min(1, x^3) at x = 1
        assert cert.psi(np.array(1.0)) == pytest.approx(0.125 / 0.5)

    def test_power_law_bounds_near_zero(self):
        """psi(x) >= const x^3 and phi(x) <= const x^-2 on (0, 1] (the
        worst exponents across the model families)."""
        x = 10.0 ** np.linspace(-6, 0, 200)
        for r in (ZENER, MAXWELL, VOIGT,
                  region(ModelKind.FRACTIONAL_MAXWELL, c1=1.0, a=0.5, nu=0.3)):
            cert = certificate_of(r)
            assert np.all(cert.psi(x) / x**3 >= cert.psi(np.array(1.0)) * 0.99)
            assert np.all(cert.phi(x) * x**2 <= cert.phi(np.array(1.0)) * 1.01)

    def test_monotonicity(self):
        x = np.linspace(1e-3, 1e3, 500)
        for r in (ZENER, MAXWELL, VOIGT,
                  region(ModelKind.ELASTIC, c0=2.0)):
            cert = certificate_of(r)
            assert np.all(np.diff(cert.psi(x)) >= 0)
            assert np.all(np.diff(cert.phi(x)) <= 0)


class TestCoupledModel:
    def test_rejects_gaps(self):
        with pytest.raises(ValueError, match="share endpoints"):
            CoupledModel([
                region(ModelKind.ELASTIC, c0=1.0, x_lo=0.0, x_hi=0.4),
                region(ModelKind.ELASTIC, c0=1.0, x_lo=0.5, x_hi=1.0),
            ])

    def test_combined_certificate_dominates(self):
        left = region(ModelKind.ELASTIC, c0=1.75, c1=1.75, a=1.0,
                      x_lo=0.0, x_hi=0.5)
        right = region(ModelKind.VOIGT, c0=1.5, c1=2.0, x_lo=0.5, x_hi=1.0)
        model = CoupledModel([left, right])
        comb = model.certificate()
        assert comb.r == 1
        x = 10.0 ** np.random.default_rng(5).uniform(-3, 3, 200)
        for reg in model.regions:
            cert = certificate_of(reg)
            assert np.all(comb.psi(x) <= cert.psi(x) + 1e-12)
            assert np.all(x**comb.r * comb.phi(x)
                          >= x**cert.r * cert.phi(x) * (1 - 1e-12))


class TestVerifier:
    def test_elastic_margin_is_zero_at_equality(self):
        r = region(ModelKind.ELASTIC, c0=1.5)
        rep = verify_hypotheses(r, sample_count=2000, rng_seed=0)
        assert rep.passed
        # Re(conj(s) c0) = c0 Re s = psi(Re s): equality cases hit 0 exactly
        assert rep.worst_positivity_margin == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("reg", [ZENER, MAXWELL, VOIGT], ids=str)
    def test_shipped_models_pass(self, reg):
        rep = verify_hypotheses(reg, sample_count=10_000, rng_seed=42)
        assert rep.passed, rep.violations[:3]

    def test_corrupted_certificate_is_reported(self):
        cert = certificate_of(ZENER)
        bad = Certificate(r=cert.r,
                          psi=lambda x: 10.0 * 1.5 * np.asarray(x, dtype=float),
                          phi=cert.phi)
        rep = verify_hypotheses(ZENER, cert=bad, sample_count=5000, rng_seed=0)
        assert not rep.passed
        assert any(kind == "positivity" for kind, _, _ in rep.violations)
        assert rep.worst_positivity_margin < 0
        # the inflated bound must fail at exactly-real s, where the small-s
        # limit makes the true margin tight
        assert any(s.imag == 0.0 for _, s, _ in rep.violations)

    def test_fractional_power_bound(self):
        rep = fractional_power_bound_check(sample_count=10_000, rng_seed=7)
        assert rep.passed
        assert rep.worst_positivity_margin >= -1e-12
