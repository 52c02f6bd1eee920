"""First-order-in-time integrator for the classical (nu = 1) models.

The state is (u, E, S): displacement dofs, a strain-antiderivative field,
and a relaxation field, the latter two stored at quadrature points so that
the discrete integration by parts is exact and the generator's quadratic
form is non-positive in the discrete inner product.  The evolution is

    rho u_t = div(c0 E + c_diff S + c_diff eps(u) [voigt cells])
    E_t     = eps(u)                  on cells with c0 > 0
    a S_t   = eps(u) - S              on cells with c_diff > 0, a > 0

The S block exists only where the diffusive part is strictly positive
(its restriction operator is a cell mask); Voigt cells (a = 0) carry the
diffusive term directly in the flux.  The squared state norm is

    (rho u, u) + (c0 E, E) + (a c_diff S, S),

conserved exactly by Crank-Nicolson stepping when every cell is elastic
and non-increasing otherwise.  Fractional regions are rejected.

This integrator discretizes the same semi-discrete system as the CQ
marcher, so their trajectories converge to each other at second order in
the time step; `cross_validate` measures that discrepancy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from . import cq, fem1d, timestepper
from .material import CoupledModel
from .signals import BoundarySignals

__all__ = ["SemigroupSystem", "SemigroupState", "SemigroupTrajectory",
           "CrankNicolson", "build_semigroup", "run",
           "reconstruct_displacement_stress", "cross_validate",
           "cross_validate_study", "generator_quadratic_form"]


@dataclass
class SemigroupState:
    """Block state (u, E, S); E and S live at quadrature points."""

    u: np.ndarray
    E: np.ndarray
    S: np.ndarray
    t: float = 0.0

    def copy(self) -> "SemigroupState":
        return SemigroupState(self.u.copy(), self.E.copy(), self.S.copy(), self.t)


class SemigroupSystem:
    """Quadrature-level discretization of one coupled nu = 1 model."""

    def __init__(self, model: CoupledModel, mesh: fem1d.Mesh1D):
        for reg in model.regions:
            if reg.kind.is_fractional:
                raise ValueError(
                    "semigroup integrator requires nu = 1 in every region"
                )
        self.model = model
        self.mesh = mesh
        self.ops = fem1d.assemble(mesh, model)
        p = mesh.degree
        q_ref, w_ref, _, D_ref = fem1d.reference_element(p)
        n_el = mesh.n_elements
        nq = len(q_ref)
        self.nQ = n_el * nq

        rows, cols, vals = [], [], []
        wq = np.empty(self.nQ)
        c0 = np.empty(self.nQ)
        cdiff = np.empty(self.nQ)
        a = np.empty(self.nQ)
        for e in range(n_el):
            h = mesh.vertices[e + 1] - mesh.vertices[e]
            reg = model.regions[int(mesh.region_of_element[e])]
            sl = slice(e * nq, (e + 1) * nq)
            wq[sl] = w_ref * h / 2.0
            c0[sl] = reg.c0
            cdiff[sl] = reg.c_diff
            a[sl] = reg.a
            dofs = mesh.element_dofs(e)
            for ql in range(nq):
                rows.extend([e * nq + ql] * (p + 1))
                cols.extend(dofs)
                vals.extend(D_ref[ql] * (2.0 / h))
        self.G = sp.csr_matrix((vals, (rows, cols)), shape=(self.nQ, mesh.n_dofs))
        self.wq, self.c0, self.cdiff, self.a = wq, c0, cdiff, a
        self.mask_E = c0 > 0
        self.mask_S = (cdiff > 0) & (a > 0)
        self.mask_V = (cdiff > 0) & (a == 0)
        self._mass_int_factor = self.ops.M.submatrix(
            np.arange(1, mesh.n_dofs)).factor()

    def strain(self, u: np.ndarray) -> np.ndarray:
        return self.G @ u

    def flux_divergence_load(self, flux_q: np.ndarray) -> np.ndarray:
        """-(T, eps(v)) part of the weak divergence of a quad-point flux."""
        return -(self.G.T @ (self.wq * flux_q))

    def h_inner(self, A: SemigroupState, B: SemigroupState) -> float:
        """H inner product (rho u, u') + (c0 E, E') + (a c_diff S, S')."""
        return (float(A.u @ self.ops.M.matvec(B.u))
                + float(self.wq @ (self.c0 * A.E * B.E))
                + float(self.wq @ (self.a * self.cdiff * A.S * B.S)))

    def h_norm_sq(self, state: SemigroupState, regions=None) -> float:
        """Squared H-norm; `regions` (index list) restricts both the mass
        blocks and the quadrature sums to those regions."""
        if regions is None:
            return self.h_inner(state, state)
        uMu = 0.0
        qmask = np.zeros(self.nQ, dtype=bool)
        nq = self.nQ // self.mesh.n_elements
        for ridx in regions:
            uMu += float(state.u @ self.ops.M_r[ridx].matvec(state.u))
            for e in np.flatnonzero(self.mesh.region_of_element == ridx):
                qmask[e * nq: (e + 1) * nq] = True
        w = self.wq * qmask
        return (uMu
                + float(w @ (self.c0 * state.E**2))
                + float(w @ (self.a * self.cdiff * state.S**2)))

    def generator(self, state: SemigroupState) -> SemigroupState:
        """Action of the (homogeneous-BC) generator on a state."""
        flux = (self.c0 * state.E * self.mask_E
                + self.cdiff * state.S * self.mask_S
                + self.cdiff * self.strain(state.u) * self.mask_V)
        load = self.flux_divergence_load(flux)
        # rho^{-1} div: interior dofs only, homogeneous Dirichlet at x=0
        du = np.zeros_like(state.u)
        du[1:] = fem1d.BandedSym.solve_factored(self._mass_int_factor, load[1:])
        eps_u = self.strain(state.u)
        dE = eps_u * self.mask_E
        dS = np.where(self.mask_S, (eps_u - state.S) / np.where(self.mask_S, self.a, 1.0), 0.0)
        return SemigroupState(du, dE, dS, state.t)


def generator_quadratic_form(sys_: SemigroupSystem, state: SemigroupState) -> float:
    """<A U, U>_H = -(c_diff S, S) - (c_diff eps(u), eps(u))_voigt <= 0.

    Evaluated directly from the dissipative identity (the weak divergence
    pairs exactly against the strain terms in the discrete inner product).
    """
    eps_u = sys_.strain(state.u)
    return float(
        -(sys_.wq * sys_.cdiff * state.S**2)[sys_.mask_S].sum()
        - (sys_.wq * sys_.cdiff * eps_u**2)[sys_.mask_V].sum()
    )


class CrankNicolson:
    """Factored one-step map for the semigroup system."""

    def __init__(self, sys_: SemigroupSystem, dt: float):
        self.sys = sys_
        self.dt = dt
        q = np.where(sys_.mask_S, dt / (2.0 * np.where(sys_.mask_S, sys_.a, 1.0)), 0.0)
        self.q = q
        kappa = (sys_.c0 * (dt / 4.0) * sys_.mask_E
                 + sys_.cdiff * q / (2.0 * (1.0 + q)) * sys_.mask_S
                 + (sys_.cdiff / 2.0) * sys_.mask_V)
        GtWkG = (sys_.G.T @ sp.diags(sys_.wq * kappa) @ sys_.G).tocsr()
        p = sys_.mesh.degree
        A = fem1d.BandedSym(sys_.mesh.n_dofs, p)
        for d in range(p + 1):
            A.ab[p - d, d:] = dt * GtWkG.diagonal(d)
        A.ab += sys_.ops.M.ab
        self.A = A
        u = A.u
        self.coupling = np.concatenate([
            np.array([A.ab[u - d, d] for d in range(1, u + 1)]),
            np.zeros(A.n - 1 - u),
        ])
        self.factor = A.submatrix(np.arange(1, A.n)).factor()
        self.kappa = kappa

    def step_cn(self, state: SemigroupState, g_next: float,
                h_mid: float, f_mid: np.ndarray | None = None) -> SemigroupState:
        """One Crank-Nicolson step; g_next is the Dirichlet value at
        t + dt, h_mid the traction at the midpoint."""
        sys_, dt, q = self.sys, self.dt, self.q
        eps_n = sys_.strain(state.u)
        flux_known = (sys_.c0 * state.E * sys_.mask_E
                      + sys_.cdiff * state.S / (1.0 + q) * sys_.mask_S
                      + self.kappa * eps_n)
        rhs = sys_.ops.M.matvec(state.u)
        rhs += dt * sys_.flux_divergence_load(flux_known)
        rhs += dt * fem1d.neumann_load(sys_.mesh, h_mid)
        if f_mid is not None:
            rhs += dt * f_mid
        u_next = np.empty_like(state.u)
        u_next[0] = g_next
        rhs_int = rhs[1:] - self.coupling * g_next
        u_next[1:] = fem1d.BandedSym.solve_factored(self.factor, rhs_int)
        eps_sum = eps_n + sys_.strain(u_next)
        E_next = state.E + (dt / 2.0) * eps_sum * sys_.mask_E
        S_next = np.where(
            sys_.mask_S,
            ((1.0 - q) * state.S + q * eps_sum) / (1.0 + q),
            0.0,
        )
        return SemigroupState(u_next, E_next, S_next, state.t + dt)


@dataclass
class SemigroupTrajectory:
    times: np.ndarray
    u: np.ndarray                 # (N+1, ndofs)
    E: np.ndarray                 # (N+1, nQ)
    S: np.ndarray                 # (N+1, nQ)
    h_norms: np.ndarray           # H-norm at every step
    system: SemigroupSystem
    mesh: fem1d.Mesh1D
    model: CoupledModel


def build_semigroup(model: CoupledModel, mesh: fem1d.Mesh1D) -> SemigroupSystem:
    return SemigroupSystem(model, mesh)


def run(model: CoupledModel, mesh: fem1d.Mesh1D, dt: float, n_steps: int,
        bc: BoundarySignals, f_antiderivative=None,
        system: SemigroupSystem | None = None) -> SemigroupTrajectory:
    """March Crank-Nicolson from the zero state, recording state norms."""
    sys_ = system if system is not None else SemigroupSystem(model, mesh)
    stepper = CrankNicolson(sys_, dt)
    g, h = bc.dirichlet, bc.neumann
    if abs(float(np.asarray(g(0.0)))) > 0 or abs(float(np.asarray(h(0.0)))) > 0:
        raise ValueError("boundary signals must vanish at t = 0 (causal data)")
    state = SemigroupState(np.zeros(mesh.n_dofs), np.zeros(sys_.nQ),
                           np.zeros(sys_.nQ), 0.0)
    U = np.zeros((n_steps + 1, mesh.n_dofs))
    E = np.zeros((n_steps + 1, sys_.nQ))
    S = np.zeros((n_steps + 1, sys_.nQ))
    norms = np.zeros(n_steps + 1)
    for n in range(1, n_steps + 1):
        t_mid = (n - 0.5) * dt
        f_mid = None
        if f_antiderivative is not None:
            f_mid = fem1d.volume_load(mesh, lambda x: f_antiderivative(x, t_mid))
        # the traction datum of the first-order system is the running
        # integral of h (the flux block is the time-integrated stress)
        state = stepper.step_cn(state, float(np.asarray(g(n * dt))),
                                float(np.asarray(h.primitive(t_mid))), f_mid)
        if not np.all(np.isfinite(state.u)):
            raise FloatingPointError(f"non-finite state at step {n}")
        U[n], E[n], S[n] = state.u, state.E, state.S
        norms[n] = np.sqrt(sys_.h_norm_sq(state))
    norms[0] = 0.0
    return SemigroupTrajectory(times=dt * np.arange(n_steps + 1), u=U, E=E,
                               S=S, h_norms=norms, system=sys_, mesh=mesh,
                               model=model)


def reconstruct_displacement_stress(traj: SemigroupTrajectory):
    """Displacement history and midpoint stress samples.

    The state's u block is the displacement itself; stress comes from the
    same finite differences the stepper uses:

        sigma^{n+1/2} = c0 (E^{n+1}-E^n)/dt + c_diff (S^{n+1}-S^n)/dt
                        + c_diff eps((u^{n+1}-u^n)/dt)   [voigt cells]

    Returns (u, sigma, t_mid) with sigma at quadrature points.
    """
    sys_ = traj.system
    dt = float(traj.times[1] - traj.times[0])
    dE = np.diff(traj.E, axis=0) / dt
    dS = np.diff(traj.S, axis=0) / dt
    du = np.diff(traj.u, axis=0) / dt
    sigma = (sys_.c0 * dE * sys_.mask_E
             + sys_.cdiff * dS * sys_.mask_S
             + sys_.cdiff * (sys_.G @ du.T).T * sys_.mask_V)
    t_mid = 0.5 * (traj.times[:-1] + traj.times[1:])
    return traj.u, sigma, t_mid


def cross_validate(model: CoupledModel, mesh: fem1d.Mesh1D, k: float, N: int,
                   bc: BoundarySignals, probe_x: float = 1.0) -> float:
    """Max probe discrepancy between the CQ and semigroup trajectories."""
    scheme = cq.CQScheme(k=k, N=N)
    traj_cq = timestepper.run(model, mesh, scheme, bc)
    traj_sg = run(model, mesh, dt=k, n_steps=N, bc=bc)
    p_cq = timestepper.probe(traj_cq, probe_x)
    idx, vals = mesh.interpolation_weights(probe_x)
    p_sg = traj_sg.u[:, idx] @ vals
    return float(np.abs(p_cq - p_sg).max())


def cross_validate_study(model: CoupledModel, mesh: fem1d.Mesh1D, T: float,
                         steps: list, bc: BoundarySignals,
                         probe_x: float = 1.0) -> dict:
    """Discrepancies over a step-halving sequence plus their decay ratios."""
    discrepancies = [cross_validate(model, mesh, k=T / N, N=N, bc=bc,
                                    probe_x=probe_x) for N in steps]
    ratios = [discrepancies[i] / discrepancies[i + 1]
              for i in range(len(discrepancies) - 1)]
    return {"steps": list(steps), "discrepancies": discrepancies,
            "ratios": ratios}
