"""1D continuous Galerkin machinery: meshes, Lagrange elements of degree
1-4, region-wise banded assembly, and boundary handling.

Dofs are numbered left to right; element e of degree p owns dofs
e*p .. e*p + p, sharing endpoint dofs with its neighbours (displacement is
continuous across region interfaces by construction).  Quadrature is
Gauss-Legendre with p+1 points per element, exact for the polynomial
integrands that arise with region-constant coefficients.

Matrices are assembled in symmetric banded storage (scipy's
`solveh_banded` layout, bandwidth p) and factored once per run.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_solve_banded, cholesky_banded, solve_banded

from .material import CoupledModel

__all__ = [
    "Mesh1D",
    "AssembledOperators",
    "BandedSym",
    "build_mesh",
    "assemble",
    "apply_dirichlet",
    "neumann_load",
    "volume_load",
    "static_solve",
    "reference_element",
]


def reference_element(p: int, n_quad: int | None = None):
    """Lagrange basis data on [-1, 1] with equispaced nodes.

    Returns (quad points, quad weights, B, D) where B[q, i] = phi_i(x_q)
    and D[q, i] = phi_i'(x_q).
    """
    if p not in (1, 2, 3, 4):
        raise ValueError(f"degree must be in 1..4, got {p}")
    if n_quad is None:
        n_quad = p + 1
    q, w = np.polynomial.legendre.leggauss(n_quad)
    nodes = np.linspace(-1.0, 1.0, p + 1)
    B = np.empty((n_quad, p + 1))
    D = np.empty((n_quad, p + 1))
    for i in range(p + 1):
        others = [j for j in range(p + 1) if j != i]
        denom = np.prod([nodes[i] - nodes[j] for j in others])
        B[:, i] = np.prod([q - nodes[j] for j in others], axis=0) / denom
        D[:, i] = sum(
            np.prod([q - nodes[j] for j in others if j != m], axis=0)
            for m in others
        ) / denom
    return q, w, B, D


@dataclass(frozen=True)
class Mesh1D:
    """Region-conforming 1D mesh with degree-p Lagrange dofs."""

    vertices: np.ndarray            # element boundaries, strictly increasing
    degree: int
    region_of_element: np.ndarray   # element -> region index

    def __post_init__(self):
        if np.any(np.diff(self.vertices) <= 0):
            raise ValueError("mesh vertices must be strictly increasing")

    @property
    def n_elements(self) -> int:
        return len(self.vertices) - 1

    @property
    def n_dofs(self) -> int:
        return self.n_elements * self.degree + 1

    @property
    def dof_positions(self) -> np.ndarray:
        """Coordinates of the global dofs (equispaced within elements)."""
        p = self.degree
        xs = np.empty(self.n_dofs)
        for e in range(self.n_elements):
            a, b = self.vertices[e], self.vertices[e + 1]
            xs[e * p: e * p + p + 1] = np.linspace(a, b, p + 1)
        return xs

    def element_dofs(self, e: int) -> np.ndarray:
        p = self.degree
        return np.arange(e * p, e * p + p + 1)

    def locate(self, x: float) -> tuple[int, float]:
        """Element index and local coordinate in [-1, 1] containing x."""
        v = self.vertices
        if not v[0] <= x <= v[-1]:
            raise ValueError(f"x = {x} outside [{v[0]}, {v[-1]}]")
        e = min(int(np.searchsorted(v, x, side="right")) - 1, self.n_elements - 1)
        a, b = v[e], v[e + 1]
        return e, 2.0 * (x - a) / (b - a) - 1.0

    def interpolation_weights(self, x: float) -> tuple[np.ndarray, np.ndarray]:
        """Global dof indices and basis values for point evaluation at x."""
        p = self.degree
        e, xi = self.locate(x)
        nodes = np.linspace(-1.0, 1.0, p + 1)
        vals = np.array([
            np.prod([(xi - nodes[j]) / (nodes[i] - nodes[j])
                     for j in range(p + 1) if j != i])
            for i in range(p + 1)
        ])
        return self.element_dofs(e), vals

    def interpolate(self, u: np.ndarray, x: float) -> float:
        idx, vals = self.interpolation_weights(x)
        return float(np.asarray(u)[..., idx] @ vals)

    def derivative_weights(self, x: float) -> tuple[np.ndarray, np.ndarray]:
        """Global dof indices and basis-derivative values at x."""
        p = self.degree
        e, xi = self.locate(x)
        h = self.vertices[e + 1] - self.vertices[e]
        nodes = np.linspace(-1.0, 1.0, p + 1)
        vals = np.empty(p + 1)
        for i in range(p + 1):
            others = [j for j in range(p + 1) if j != i]
            denom = np.prod([nodes[i] - nodes[j] for j in others])
            vals[i] = sum(
                np.prod([xi - nodes[j] for j in others if j != m])
                for m in others
            ) / denom
        return self.element_dofs(e), vals * (2.0 / h)


def build_mesh(model: CoupledModel, elements_per_unit: int, p: int) -> Mesh1D:
    """Uniform elements within each region, vertices at every interface."""
    if elements_per_unit < 1:
        raise ValueError("elements_per_unit must be >= 1")
    if p not in (1, 2, 3, 4):
        raise ValueError(f"degree must be in 1..4, got {p}")
    verts = [model.x_lo]
    region_ids = []
    for ridx, reg in enumerate(model.regions):
        n = max(1, round(elements_per_unit * reg.length))
        verts.extend(np.linspace(reg.x_lo, reg.x_hi, n + 1)[1:])
        region_ids.extend([ridx] * n)
    return Mesh1D(np.array(verts), p, np.array(region_ids, dtype=int))


class BandedSym:
    """Symmetric banded matrix in scipy upper-diagonal storage.

    ab[u + i - j, j] = A[i, j] for max(0, j-u) <= i <= j, where u is the
    number of super-diagonals.  Supports accumulation during assembly,
    matvec, Cholesky factor-once/solve-many, and dense export for the
    complex frequency solves.
    """

    def __init__(self, n: int, u: int):
        self.n = n
        self.u = u
        self.ab = np.zeros((u + 1, n))

    def add(self, idx: np.ndarray, local: np.ndarray):
        for a, i in enumerate(idx):
            for b, j in enumerate(idx):
                if i <= j:
                    self.ab[self.u + i - j, j] += local[a, b]

    def matvec(self, x: np.ndarray) -> np.ndarray:
        y = self.ab[self.u] * x
        for d in range(1, self.u + 1):
            off = self.ab[self.u - d, d:]
            y[:-d] += off * x[d:]
            y[d:] += off * x[:-d]
        return y

    def toarray(self) -> np.ndarray:
        A = np.diag(self.ab[self.u])
        for d in range(1, self.u + 1):
            A += np.diag(self.ab[self.u - d, d:], k=d)
            A += np.diag(self.ab[self.u - d, d:], k=-d)
        return A

    def copy(self) -> "BandedSym":
        out = BandedSym(self.n, self.u)
        out.ab = self.ab.copy()
        return out

    def scaled_sum(self, coeffs, mats: list["BandedSym"]) -> "BandedSym":
        out = BandedSym(self.n, self.u)
        out.ab = self.ab * 0.0
        for c, m in zip(coeffs, mats):
            out.ab += c * m.ab
        return out

    def submatrix(self, keep: np.ndarray) -> "BandedSym":
        """Banded principal submatrix (keep must be sorted indices)."""
        dense = self.toarray()[np.ix_(keep, keep)]
        out = BandedSym(len(keep), self.u)
        for d in range(self.u + 1):
            out.ab[self.u - d, d:] = np.diagonal(dense, offset=d)
        return out

    def factor(self):
        return cholesky_banded(self.ab, check_finite=False)

    @staticmethod
    def solve_factored(factor, b: np.ndarray) -> np.ndarray:
        # finiteness is checked by the callers' NaN guards, not per solve
        return cho_solve_banded((factor, False), b, check_finite=False)


@dataclass
class AssembledOperators:
    """Mass and per-region unit stiffness operators on one mesh.

    M is rho-weighted; each K_r carries a unit material factor (transfer
    function scalars multiply K_r later).  M_r are the per-region mass
    blocks, used for localized energy diagnostics; sum(M_r) = M.
    """

    mesh: Mesh1D
    M: BandedSym
    K_r: list[BandedSym]
    M_r: list[BandedSym]

    @property
    def K(self) -> BandedSym:
        total = self.K_r[0].copy()
        for k in self.K_r[1:]:
            total.ab += k.ab
        return total

    @property
    def neumann_unit_load(self) -> np.ndarray:
        """Unit traction functional at x = x_hi (scale by the data value)."""
        return neumann_load(self.mesh, 1.0)


def assemble(mesh: Mesh1D, model: CoupledModel) -> AssembledOperators:
    """Assemble M_ij = int rho phi_i phi_j and (K_r)_ij = int_r phi_i' phi_j'."""
    n_regions = len(model.regions)
    if mesh.region_of_element.max() >= n_regions:
        raise ValueError("mesh does not conform to the model regions")
    for iface in model.interfaces:
        if not np.any(np.isclose(mesh.vertices, iface)):
            raise ValueError(f"region boundary {iface} is not a mesh vertex")
    p = mesh.degree
    _, w, B, D = reference_element(p)
    ndof = mesh.n_dofs
    M = BandedSym(ndof, p)
    K_r = [BandedSym(ndof, p) for _ in range(n_regions)]
    M_r = [BandedSym(ndof, p) for _ in range(n_regions)]
    mass_ref = (B.T * w) @ B            # int phi_i phi_j on [-1,1]
    stiff_ref = (D.T * w) @ D           # int phi_i' phi_j' on [-1,1]
    for e in range(mesh.n_elements):
        h = mesh.vertices[e + 1] - mesh.vertices[e]
        ridx = int(mesh.region_of_element[e])
        rho = model.regions[ridx].rho
        idx = mesh.element_dofs(e)
        M.add(idx, rho * (h / 2.0) * mass_ref)
        M_r[ridx].add(idx, rho * (h / 2.0) * mass_ref)
        K_r[ridx].add(idx, (2.0 / h) * stiff_ref)
    return AssembledOperators(mesh=mesh, M=M, K_r=K_r, M_r=M_r)


def neumann_load(mesh: Mesh1D, value: float) -> np.ndarray:
    """Traction at x = x_hi: value times the test function at the endpoint."""
    load = np.zeros(mesh.n_dofs)
    load[-1] = value
    return load


def volume_load(mesh: Mesh1D, f) -> np.ndarray:
    """Load vector (f, phi_i) by element quadrature; f maps x-array to values."""
    p = mesh.degree
    q, w, B, _ = reference_element(p)
    load = np.zeros(mesh.n_dofs)
    for e in range(mesh.n_elements):
        a, b = mesh.vertices[e], mesh.vertices[e + 1]
        h = b - a
        xq = a + (q + 1.0) * h / 2.0
        load[mesh.element_dofs(e)] += (h / 2.0) * (B.T * w) @ np.asarray(f(xq))
    return load


def apply_dirichlet(A: BandedSym, rhs: np.ndarray, value: float):
    """Impose u = value strongly at the left endpoint (dof 0).

    Row/column elimination with load correction; returns the interior
    system (A_II, rhs_I - A_I0 * value).
    """
    coupling = np.zeros(A.n - 1, dtype=A.ab.dtype)
    m = min(A.u, A.n - 1)
    coupling[:m] = [A.ab[A.u - d, d] for d in range(1, m + 1)]  # A[0, 1:u+1]
    sub = A.submatrix(np.arange(1, A.n))
    return sub, rhs[1:] - coupling * value


def static_solve(ops: AssembledOperators, coeffs, load: np.ndarray,
                 dirichlet_value: float = 0.0) -> np.ndarray:
    """Solve sum_r coeffs[r]*K_r u = load with u fixed at the left endpoint.

    Strong nodal imposition: dof 0 is eliminated with a load correction.
    """
    A = ops.K_r[0].scaled_sum(coeffs, ops.K_r)
    sub, rhs = apply_dirichlet(A, load, dirichlet_value)
    ab_general = _sym_to_general_banded(sub)
    u_int = solve_banded((sub.u, sub.u), ab_general, rhs)
    return np.concatenate(([dirichlet_value], u_int))


def _sym_to_general_banded(A: BandedSym) -> np.ndarray:
    """Expand symmetric-upper storage to the (2u+1)-row solve_banded layout."""
    u, n = A.u, A.n
    ab = np.zeros((2 * u + 1, n))
    ab[:u + 1] = A.ab
    for d in range(1, u + 1):
        ab[u + d, :n - d] = A.ab[u - d, d:]
    return ab
