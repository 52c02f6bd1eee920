"""Trapezoidal convolution quadrature.

Weights of a transfer function f analytic on Re s > 0 are the Taylor
coefficients of the generating function f(delta(zeta)/k) at zeta = 0,
where delta(zeta) = 2(1 - zeta)/(1 + zeta) is the trapezoidal symbol.
They are recovered by a scaled inverse discrete Fourier transform over a
circle of radius lambda < 1:

    omega_j ~= (lambda**-j / M) * sum_m f(delta(lambda zeta_m)/k) zeta_m^{-j}

The transform here oversamples the contour (M >= 16 (N+1) points, radius
tied to a fixed aliasing target) instead of using M = N+1 points at the
classical radius eps**(1/(2(N+1))).  With M = N+1 the round-off of the
transform is amplified by lambda**-j, capping the absolute weight accuracy
near sqrt(eps); oversampling keeps the amplification bounded (~10^15/16)
and delivers ~1e-11 absolute error even for unbounded symbols at
N = 10,240.  Contour evaluations exploit conjugation symmetry: f is
evaluated on the upper half circle and mirrored.

Discrete convolutions are evaluated directly (O(N^2) history summation),
which is adequate at N <= 10,240.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "CQScheme",
    "WeightSequence",
    "weights",
    "kinetic_weights",
    "convolve_step",
    "convolve_full",
    "fractional_derivative_check",
]

# contour parameters: aliasing target and oversampling of the transform
_ALIAS_TARGET = 1e-15
_OVERSAMPLE = 16
_MIN_POINTS = 4096
_IMAG_TOL = 1e-10   # relative imaginary residue allowed in real weights


def trapezoidal_symbol(zeta):
    """delta(zeta) = 2 (1 - zeta) / (1 + zeta)."""
    zeta = np.asarray(zeta)
    return 2.0 * (1.0 - zeta) / (1.0 + zeta)


@dataclass(frozen=True)
class CQScheme:
    """Time grid (step k, N steps) plus the certified contour radius.

    `lam` is the radius at which the truncated weight series is certified
    to reproduce the transfer function (used by the consistency probe);
    the weight transform itself uses its own oversampled contour.
    """

    k: float
    N: int
    lam: float = field(default=0.0)

    def __post_init__(self):
        if self.k <= 0:
            raise ValueError("time step k must be positive")
        if self.N < 1:
            raise ValueError("step count N must be >= 1")
        if self.lam == 0.0:
            object.__setattr__(self, "lam", 10.0 ** (-22.0 / (self.N + 1)))
        if not 0.0 < self.lam < 1.0:
            raise ValueError("contour radius must lie in (0, 1)")
        # trapezoidal symbol maps the contour into the right half-plane
        zeta = self.lam * np.exp(2j * np.pi * np.linspace(0, 1, 64, endpoint=False))
        if not np.all(trapezoidal_symbol(zeta).real / self.k > 0):
            raise ValueError("symbol left the right half-plane on the contour")

    @property
    def times(self) -> np.ndarray:
        return self.k * np.arange(self.N + 1)

    def symbol_at(self, zeta):
        """s = delta(zeta)/k, the Laplace point tied to a contour point."""
        return trapezoidal_symbol(zeta) / self.k


@dataclass(frozen=True)
class WeightSequence:
    """Real weights omega_0..omega_N of one transfer function."""

    omega: np.ndarray
    imag_residue: float

    def __len__(self) -> int:
        return len(self.omega)


def weights(f: Callable, scheme: CQScheme) -> WeightSequence:
    """Convolution quadrature weights of f on the scheme's time grid.

    f must be analytic on Re s > 0 and accept complex numpy arrays.  The
    imaginary part of the transform is checked against the conjugation
    symmetry tolerance and then discarded.
    """
    N, k = scheme.N, scheme.k
    M = max(_MIN_POINTS, _OVERSAMPLE * 2 ** math.ceil(math.log2(N + 1)))
    lam = _ALIAS_TARGET ** (1.0 / M)
    half = M // 2
    zeta = lam * np.exp(2j * np.pi * np.arange(half + 1) / M)
    F_half = np.asarray(f(trapezoidal_symbol(zeta) / k), dtype=complex)
    F = np.empty(M, dtype=complex)
    F[: half + 1] = F_half
    F[half + 1:] = np.conj(F_half[1:half][::-1])
    coeff = np.fft.fft(F)[: N + 1] / M
    coeff *= lam ** -np.arange(N + 1, dtype=float)
    scale = np.abs(coeff.real).max()
    residue = float(np.abs(coeff.imag).max() / scale) if scale > 0 else 0.0
    if residue > _IMAG_TOL:
        raise ValueError(
            f"imaginary residue {residue:.2e} exceeds {_IMAG_TOL:.0e}; "
            "transfer function is not conjugate-symmetric or not analytic"
        )
    return WeightSequence(omega=np.ascontiguousarray(coeff.real),
                          imag_residue=residue)


def kinetic_weights(scheme: CQScheme) -> WeightSequence:
    """Weights of f(s) = s^2, in closed form.

    (delta(zeta)/k)^2 = (4/k^2) (1-zeta)^2/(1+zeta)^2 has Taylor
    coefficients (4/k^2) * [1, -4, 8, -12, ...] = (4/k^2) * 4j(-1)^j for
    j >= 1.  The exact values avoid the transform's round-off, which the
    growing kinetic weights would otherwise amplify into the marching
    scheme's noise floor.
    """
    j = np.arange(scheme.N + 1, dtype=float)
    omega = (4.0 / scheme.k**2) * 4.0 * j * (-1.0) ** np.arange(scheme.N + 1)
    omega[0] = 4.0 / scheme.k**2
    return WeightSequence(omega=omega, imag_residue=0.0)


def convolve_step(w: WeightSequence, history: np.ndarray, n: int) -> np.ndarray:
    """Lagged part sum_{j=1..n} omega_j x^{n-j} of the discrete convolution.

    `history` holds x^0..x^{n-1} as rows; the j = 0 term belongs to the
    implicit solve and is excluded.
    """
    if n < 0 or n > len(w.omega) - 1 or n > len(history):
        raise IndexError(f"step {n} out of range")
    if n == 0:
        return np.zeros_like(np.asarray(history[0]) if len(history) else 0.0)
    return w.omega[1: n + 1][::-1] @ np.asarray(history[:n])


def convolve_full(w: WeightSequence, samples: np.ndarray) -> np.ndarray:
    """Full causal convolution y^n = sum_{j=0..n} omega_j x^{n-j}."""
    x = np.asarray(samples, dtype=float)
    n = len(x)
    out = np.empty(n)
    for i in range(n):
        out[i] = w.omega[: i + 1][::-1] @ x[: i + 1]
    return out


def fractional_derivative_check(nu: float, k: float, N: int,
                                t_min: float = 0.0) -> float:
    """Max error of CQ(s^nu) on t^2 against 2 t^(2-nu)/Gamma(3-nu).

    With t_min = 0 the maximum runs over the whole grid, where the O(k)
    startup layer limits the decay to order 2 - nu; restricting to
    t >= t_min > 0 exposes the scheme's clean second-order decay.
    """
    if not 0.0 < nu < 1.0:
        raise ValueError("nu must lie in (0, 1)")
    scheme = CQScheme(k=k, N=N)
    w = weights(lambda s: np.exp(nu * np.log(s)), scheme)
    t = scheme.times
    approx = convolve_full(w, t**2)
    exact = 2.0 * t ** (2.0 - nu) / math.gamma(3.0 - nu)
    err = np.abs(approx - exact)
    return float(err[t >= t_min].max())
