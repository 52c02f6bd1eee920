"""Semigroup (Crank-Nicolson first-order system) tests."""

import numpy as np
import pytest

from viscowave.fem1d import build_mesh
from viscowave.material import CoupledModel, MaterialRegion, ModelKind
from viscowave.semigroup import (CrankNicolson, SemigroupState,
                                 SemigroupSystem, cross_validate,
                                 cross_validate_study,
                                 generator_quadratic_form,
                                 reconstruct_displacement_stress, run)
from viscowave.signals import BoundarySignals, Window

ZENER = CoupledModel([MaterialRegion(0, 1, ModelKind.ZENER,
                                     c0=1.5, c1=2.75, a=0.5)])
MAXWELL = CoupledModel([MaterialRegion(0, 1, ModelKind.MAXWELL, c1=1.0, a=0.5)])
VOIGT = CoupledModel([MaterialRegion(0, 1, ModelKind.VOIGT, c0=1.5, c1=0.5)])
ELASTIC = CoupledModel([MaterialRegion(0, 1, ModelKind.ZENER,
                                       c0=1.5, c1=0.75, a=0.5)])
MIXED = CoupledModel([
    MaterialRegion(0, 0.5, ModelKind.ELASTIC, c0=1.75, c1=1.75, a=1.0, rho=10.0),
    MaterialRegion(0.5, 1, ModelKind.ZENER, c0=1.5, c1=1.75, a=0.5, rho=10.0),
])
PULSE = Window((0.5, 1.5, 2.5, 3.5))


def random_homogeneous_state(sysm, rng) -> SemigroupState:
    u = rng.standard_normal(sysm.mesh.n_dofs)
    u[0] = 0.0                       # states in the generator's domain
    E = rng.standard_normal(sysm.nQ) * sysm.mask_E
    S = rng.standard_normal(sysm.nQ) * sysm.mask_S
    return SemigroupState(u, E, S)


def test_fractional_region_rejected():
    frac = CoupledModel([MaterialRegion(0, 1, ModelKind.FRACTIONAL_ZENER,
                                        c0=1.5, c1=2.75, a=0.5, nu=0.5)])
    mesh = build_mesh(frac, 8, 1)
    with pytest.raises(ValueError, match="nu = 1"):
        SemigroupSystem(frac, mesh)


def test_relaxation_field_absent_on_elastic_cells():
    mesh = build_mesh(MIXED, 8, 2)
    sysm = SemigroupSystem(MIXED, mesh)
    left = mesh.region_of_element == 0
    nq = sysm.nQ // mesh.n_elements
    for e in np.flatnonzero(left):
        assert not sysm.mask_S[e * nq: (e + 1) * nq].any()
    right = mesh.region_of_element == 1
    for e in np.flatnonzero(right):
        assert sysm.mask_S[e * nq: (e + 1) * nq].all()


@pytest.mark.parametrize("model", [ZENER, MAXWELL, VOIGT, MIXED],
                         ids=["zener", "maxwell", "voigt", "mixed"])
def test_generator_dissipative_on_random_states(model):
    mesh = build_mesh(model, 8, 2)
    sysm = SemigroupSystem(model, mesh)
    rng = np.random.default_rng(1)
    for _ in range(1000):
        st = random_homogeneous_state(sysm, rng)
        q = generator_quadratic_form(sysm, st)
        assert q <= 1e-13


def test_quadratic_form_matches_direct_inner_product():
    """<A U, U>_H computed through the generator equals the closed form."""
    for model in (ZENER, MAXWELL, VOIGT, MIXED):
        mesh = build_mesh(model, 6, 2)
        sysm = SemigroupSystem(model, mesh)
        rng = np.random.default_rng(9)
        for _ in range(25):
            st = random_homogeneous_state(sysm, rng)
            direct = sysm.h_inner(sysm.generator(st), st)
            closed = generator_quadratic_form(sysm, st)
            assert direct == pytest.approx(closed, rel=1e-9, abs=1e-11)


def test_cn_contracts_without_forcing():
    mesh = build_mesh(ZENER, 12, 2)
    sysm = SemigroupSystem(ZENER, mesh)
    stepper = CrankNicolson(sysm, dt=0.02)
    rng = np.random.default_rng(4)
    for _ in range(50):
        st = random_homogeneous_state(sysm, rng)
        before = sysm.h_norm_sq(st)
        after = sysm.h_norm_sq(stepper.step_cn(st, 0.0, 0.0))
        assert after <= before * (1 + 1e-12)


def test_cn_isometry_for_elastic():
    mesh = build_mesh(ELASTIC, 12, 2)
    sysm = SemigroupSystem(ELASTIC, mesh)
    stepper = CrankNicolson(sysm, dt=0.02)
    rng = np.random.default_rng(5)
    st = random_homogeneous_state(sysm, rng)
    before = sysm.h_norm_sq(st)
    for _ in range(100):
        st = stepper.step_cn(st, 0.0, 0.0)
    assert sysm.h_norm_sq(st) == pytest.approx(before, rel=1e-12)


def test_zener_norm_decreases_after_input_stops():
    mesh = build_mesh(ZENER, 24, 2)
    traj = run(ZENER, mesh, dt=20.0 / 1000, n_steps=1000,
               bc=BoundarySignals(dirichlet=PULSE))
    after = traj.times >= PULSE.support_end
    h = traj.h_norms[after]
    assert np.all(np.diff(h) <= 1e-12 * h[:-1])
    assert h[-1] < 0.9 * h[0]        # strict decay, not mere stagnation


def test_maxwell_linear_creep():
    mesh = build_mesh(MAXWELL, 24, 2)
    traction = Window((0.5, 1.5, 35.0, 36.0))
    traj = run(MAXWELL, mesh, dt=30.0 / 1500, n_steps=1500,
               bc=BoundarySignals(neumann=traction))
    idx, vals = mesh.interpolation_weights(1.0)
    p = traj.u[:, idx] @ vals
    t = traj.times
    win = (t >= 10.0) & (t <= 30.0)
    A = np.vstack([t[win], np.ones(win.sum())]).T
    coef, _, _, _ = np.linalg.lstsq(A, p[win], rcond=None)
    fit = A @ coef
    r2 = 1 - ((p[win] - fit) ** 2).sum() / ((p[win] - p[win].mean()) ** 2).sum()
    assert r2 > 0.999
    assert coef[0] == pytest.approx(1.0, rel=1e-3)   # rate sigma / c1


def test_reconstruct_voigt_stress():
    mesh = build_mesh(VOIGT, 16, 2)
    N = 400
    traj = run(VOIGT, mesh, dt=6.0 / N, n_steps=N,
               bc=BoundarySignals(dirichlet=PULSE))
    u, sigma, t_mid = reconstruct_displacement_stress(traj)
    sysm = traj.system
    # direct evaluation: c0 eps(u) + c1 eps(u)_t at midpoints
    eps = (sysm.G @ traj.u.T).T
    eps_mid = 0.5 * (eps[1:] + eps[:-1])
    deps = np.diff(eps, axis=0) / (traj.times[1] - traj.times[0])
    direct = 1.5 * eps_mid + 0.5 * deps
    scale = np.abs(direct).max()
    assert np.abs(sigma - direct).max() < 2e-3 * scale


def test_reconstruct_zener_stress_residual_second_order():
    """sigma + a sigma_t - c0 eps - c1 eps_t -> 0 at order 2 in dt."""
    c0, c1, a = 1.5, 2.75, 0.5
    resid = []
    for N in (200, 400):
        mesh = build_mesh(ZENER, 24, 2)
        k = 6.0 / N
        traj = run(ZENER, mesh, dt=k, n_steps=N,
                   bc=BoundarySignals(dirichlet=PULSE))
        _, sigma, t_mid = reconstruct_displacement_stress(traj)
        sysm = traj.system
        eps = (sysm.G @ traj.u.T).T
        # center everything on the interior node grid t_1..t_{N-1}
        sig_node = 0.5 * (sigma[1:] + sigma[:-1])
        dsig_node = np.diff(sigma, axis=0) / k
        eps_node = eps[1:-1]
        deps_node = (eps[2:] - eps[:-2]) / (2 * k)
        r = sig_node + a * dsig_node - c0 * eps_node - c1 * deps_node
        resid.append(np.abs(r).max())
    assert 3.0 < resid[0] / resid[1] < 5.5


class TestCrossValidate:
    def test_zero_data(self):
        mesh = build_mesh(ZENER, 8, 1)
        assert cross_validate(ZENER, mesh, k=0.1, N=20,
                              bc=BoundarySignals()) == 0.0

    def test_traction_order_two(self):
        bc = BoundarySignals(neumann=PULSE)
        mesh = build_mesh(ELASTIC, 16, 2)
        study = cross_validate_study(ELASTIC, mesh, T=6.0, steps=[96, 192],
                                     bc=bc)
        assert 3.0 < study["ratios"][0] < 5.0

    def test_dirichlet_paths_algebraically_identical(self):
        """For nodal Dirichlet data the two integrators are the same step
        map; the residual difference is round-off, far below truncation."""
        bc = BoundarySignals(dirichlet=PULSE)
        mesh = build_mesh(ZENER, 16, 2)
        d = cross_validate(ZENER, mesh, k=6.0 / 192, N=192, bc=bc)
        assert d < 1e-8
