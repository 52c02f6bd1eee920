"""Frequency-domain solve and coercivity tests."""

import numpy as np
import pytest

from viscowave.cq import CQScheme
from viscowave.fem1d import build_mesh
from viscowave.laplace_probe import (coercivity_check, solve_at,
                                     transfer_consistency)
from viscowave.material import (CoupledModel, MaterialRegion, ModelKind,
                                eval_transfer)

UNIT_ELASTIC = CoupledModel([MaterialRegion(0, 1, ModelKind.ELASTIC, c0=1.0)])
ZENER = CoupledModel([MaterialRegion(0, 1, ModelKind.ZENER,
                                     c0=1.5, c1=2.75, a=0.5)])
FRAC = CoupledModel([MaterialRegion(0, 1, ModelKind.FRACTIONAL_ZENER,
                                    c0=1.5, c1=2.75, a=0.5, nu=0.5)])
MIXED = CoupledModel([
    MaterialRegion(0, 0.5, ModelKind.ELASTIC, c0=1.75, c1=1.75, a=1.0, rho=10.0),
    MaterialRegion(0.5, 1, ModelKind.ZENER, c0=1.5, c1=1.75, a=0.5, rho=10.0),
])


class TestSolveAt:
    def test_sinh_boundary_value_problem(self):
        """s = 1, c0 = 1, beta = 1: u(x) = sinh(x)/cosh(1), order p+1."""
        exact = lambda x: np.sinh(x) / np.cosh(1.0)
        errs = []
        for n in (4, 8, 16):
            mesh = build_mesh(UNIT_ELASTIC, n, 2)
            sol = solve_at(1.0, UNIT_ELASTIC, mesh, beta=1.0)
            errs.append(np.abs(sol.u - exact(mesh.dof_positions)).max())
        assert errs[0] < 1e-4
        orders = [np.log2(errs[i] / errs[i + 1]) for i in range(2)]
        assert min(orders) > 2.6          # p + 1 = 3 for p = 2
        assert errs[-1] == pytest.approx(0.0, abs=1e-6)

    def test_viscoelastic_sinh_oracle(self):
        """Closed-form check with a complex wavenumber: on one zener
        region, -(c(s) u')' + rho s^2 u = 0 with u(0) = 0, c u'(1) = beta
        has u(x) = beta sinh(g x) / (c g cosh(g)), g = s sqrt(rho/c(s))."""
        beta = 1.0 + 0.5j
        for s in (1.0 + 2.0j, 0.3 + 5.0j):
            c = eval_transfer(ZENER.regions[0], s)
            g = s * np.sqrt(1.0 / c)
            mesh = build_mesh(ZENER, 16, 2)
            sol = solve_at(s, ZENER, mesh, beta=beta)
            xs = mesh.dof_positions
            exact = beta * np.sinh(g * xs) / (c * g * np.cosh(g))
            assert np.abs(sol.u - exact).max() < 5e-7

    def test_zero_data_unique_zero(self):
        mesh = build_mesh(ZENER, 8, 2)
        sol = solve_at(2.0 + 1.0j, ZENER, mesh)
        assert np.abs(sol.u).max() == 0.0
        assert sol.energy_norm == 0.0

    def test_conjugation(self):
        mesh = build_mesh(FRAC, 8, 3)
        s = 0.8 + 2.3j
        a = solve_at(s, FRAC, mesh, F=0.5, alpha=0.2 + 0.1j, beta=1.0 - 0.3j)
        b = solve_at(np.conj(s), FRAC, mesh, F=0.5,
                     alpha=np.conj(0.2 + 0.1j), beta=np.conj(1.0 - 0.3j))
        assert np.allclose(b.u, np.conj(a.u), rtol=1e-12, atol=1e-14)

    def test_linearity_in_data(self):
        mesh = build_mesh(ZENER, 8, 2)
        s = 1.5 + 0.7j
        u1 = solve_at(s, ZENER, mesh, F=1.0).u
        u2 = solve_at(s, ZENER, mesh, beta=1.0).u
        u12 = solve_at(s, ZENER, mesh, F=2.0, beta=-0.5).u
        assert np.allclose(u12, 2.0 * u1 - 0.5 * u2, rtol=1e-11, atol=1e-13)

    def test_rejects_left_halfplane(self):
        mesh = build_mesh(ZENER, 4, 1)
        with pytest.raises(ValueError):
            solve_at(-1.0, ZENER, mesh)

    def test_residual_small(self):
        mesh = build_mesh(MIXED, 8, 2)
        sol = solve_at(0.5 + 3.0j, MIXED, mesh, F=1.0, alpha=0.3, beta=0.7)
        assert sol.residual < 1e-10 * max(1.0, sol.energy_norm)

    def test_stability_ratio_logged(self):
        mesh = build_mesh(ZENER, 8, 2)
        sol = solve_at(1.0 + 1.0j, ZENER, mesh, beta=1.0)
        assert np.isfinite(sol.stability_ratio)
        assert sol.stability_ratio > 0.0
        assert solve_at(2.0, ZENER, mesh).stability_ratio == 0.0


class TestCoercivity:
    def test_elastic_real_s_equality(self):
        """Real s, elastic c0 = 1: Re b(u, conj(su)) equals s |||u|||^2."""
        mesh = build_mesh(UNIT_ELASTIC, 6, 2)
        rep = coercivity_check(UNIT_ELASTIC, mesh, trials=200, rng_seed=0,
                               s=2.0)
        assert rep.passed
        assert rep.worst_positivity_margin == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize("model", [ZENER, FRAC, MIXED],
                             ids=["zener", "frac", "mixed"])
    def test_random_fields_pass(self, model):
        mesh = build_mesh(model, 6, 2)
        rep = coercivity_check(model, mesh, trials=500, rng_seed=3)
        assert rep.passed, rep.violations[:3]

    def test_corrupted_certificate_caught(self):
        # psi* <- 10 psi* must fail at (near-)real s, where the elastic
        # equality case makes the true bound tight
        mesh = build_mesh(ZENER, 6, 2)
        rep = coercivity_check(ZENER, mesh, trials=500, rng_seed=3,
                               psi_star_scale=10.0)
        assert not rep.passed
        assert any(k == "coercivity" for k, _, _ in rep.violations)
        real_s = [s for k, s, _ in rep.violations if abs(s.imag) == 0.0]
        assert real_s


class TestNormEquivalence:
    def test_two_sided_bounds(self):
        """min(1, Re s) |||u|||_1 <= |||u|||_|s| <= |s|/min(1, Re s) |||u|||_1."""
        from viscowave.fem1d import assemble
        from viscowave.laplace_probe import energy_norm
        mesh = build_mesh(MIXED, 6, 2)
        ops = assemble(mesh, MIXED)
        rng = np.random.default_rng(8)
        for _ in range(200):
            u = rng.standard_normal(mesh.n_dofs) \
                + 1j * rng.standard_normal(mesh.n_dofs)
            s = complex(10.0 ** rng.uniform(-2, 2),
                        np.sign(rng.standard_normal()) * 10.0 ** rng.uniform(-2, 2))
            n1 = energy_norm(ops, u, 1.0)
            ns = energy_norm(ops, u, abs(s))
            lo = min(1.0, s.real) * n1
            hi = abs(s) / min(1.0, s.real) * n1
            assert lo <= ns * (1 + 1e-12)
            assert ns <= hi * (1 + 1e-12)


class TestTransferConsistency:
    def test_center_point_is_implicit_matrix(self):
        """zeta = 0 gives s = 2/k and the series collapses to B0."""
        mesh = build_mesh(ZENER, 6, 2)
        scheme = CQScheme(k=0.05, N=64)
        out = transfer_consistency(ZENER, mesh, scheme, [2.0 / scheme.k])
        assert out[0][1] < 1e-13

    @pytest.mark.parametrize("model", [UNIT_ELASTIC, ZENER, FRAC, MIXED],
                             ids=["elastic", "zener", "frac", "mixed"])
    def test_contour_points(self, model):
        mesh = build_mesh(model, 6, 2)
        scheme = CQScheme(k=0.05, N=64)
        rng = np.random.default_rng(2)
        zetas = scheme.lam * np.exp(2j * np.pi * rng.random(16))
        s_list = scheme.symbol_at(zetas)
        for s, rel in transfer_consistency(model, mesh, scheme, s_list):
            assert rel < 1e-12

    def test_off_contour_rejected(self):
        mesh = build_mesh(ZENER, 4, 1)
        scheme = CQScheme(k=0.05, N=64)
        s_bad = scheme.symbol_at(0.999)   # |zeta| far above scheme.lam
        with pytest.raises(ValueError, match="outside the certified contour"):
            transfer_consistency(ZENER, mesh, scheme, [s_bad])
