"""Viscoelastic material laws as Laplace-domain transfer functions.

Each 1D material region carries a scalar transfer function

    c(s) = (c0 + c1 * s**nu) / (1 + a * s**nu),      Re s > 0,

with the classical special cases

    elastic:  c(s) = c0                 (c1 = a*c0 collapses to this)
    zener:    c0 > 0, c1 > 0, a > 0,    c1 - a*c0 >= 0
    maxwell:  c0 = 0, c1 > 0, a > 0
    voigt:    a = 0,  c(s) = c0 + c1 * s**nu

and nu in (0, 1] (fractional kinds use nu < 1, integer kinds fix nu = 1).
Fractional powers use the principal branch, which has no cut on the right
half-plane.

Alongside the transfer function every region exposes a *certificate*
(r, psi, phi): a growth exponent and two functions of x = Re s such that

    Re(conj(s) * c(s)) >= psi(Re s)          (positivity)
    |c(s)|            <= |s|**r * phi(Re s)  (boundedness)

hold on all of C_+.  The certificates are the closed forms proved for each
model family; `verify_hypotheses` checks them statistically against the
implemented arithmetic and reports worst margins.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

__all__ = [
    "ModelKind",
    "MaterialRegion",
    "Certificate",
    "CoupledModel",
    "eval_transfer",
    "certificate_of",
    "verify_hypotheses",
    "fractional_power_bound_check",
    "VerificationReport",
]


class ModelKind(enum.Enum):
    ELASTIC = "elastic"
    ZENER = "zener"
    FRACTIONAL_ZENER = "fractional_zener"
    MAXWELL = "maxwell"
    FRACTIONAL_MAXWELL = "fractional_maxwell"
    VOIGT = "voigt"
    FRACTIONAL_VOIGT = "fractional_voigt"

    @property
    def is_fractional(self) -> bool:
        return self in (
            ModelKind.FRACTIONAL_ZENER,
            ModelKind.FRACTIONAL_MAXWELL,
            ModelKind.FRACTIONAL_VOIGT,
        )


@dataclass(frozen=True)
class MaterialRegion:
    """One spatial interval [x_lo, x_hi] with constant coefficients.

    c0 : base stiffness, c1 : first-order stiffness, a : relaxation
    coefficient, nu : fractional order in (0, 1], rho : mass density.
    """

    x_lo: float
    x_hi: float
    kind: ModelKind
    c0: float = 0.0
    c1: float = 0.0
    a: float = 0.0
    nu: float = 1.0
    rho: float = 1.0

    def __post_init__(self):
        if not self.x_lo < self.x_hi:
            raise ValueError(f"empty region: [{self.x_lo}, {self.x_hi}]")
        if self.rho <= 0:
            raise ValueError("rho must be positive")
        if min(self.c0, self.c1, self.a) < 0:
            raise ValueError("coefficients c0, c1, a must be non-negative")
        k = self.kind
        if k.is_fractional:
            if not 0.0 < self.nu < 1.0:
                raise ValueError(f"{k.value} requires nu in (0,1), got {self.nu}")
        else:
            if self.nu != 1.0:
                raise ValueError(f"{k.value} fixes nu = 1, got {self.nu}")
        if k in (ModelKind.ZENER, ModelKind.FRACTIONAL_ZENER):
            if not (self.c0 > 0 and self.c1 > 0 and self.a > 0):
                raise ValueError("zener requires c0 > 0, c1 > 0, a > 0")
            if self.c_diff < 0:
                raise ValueError(
                    f"zener requires c1 >= a*c0 (diffusive part >= 0), "
                    f"got c1 - a*c0 = {self.c_diff}"
                )
        elif k in (ModelKind.MAXWELL, ModelKind.FRACTIONAL_MAXWELL):
            if not (self.c0 == 0 and self.c1 > 0 and self.a > 0):
                raise ValueError("maxwell requires c0 = 0, c1 > 0, a > 0")
        elif k in (ModelKind.VOIGT, ModelKind.FRACTIONAL_VOIGT):
            if not (self.a == 0 and self.c0 > 0 and self.c1 >= 0):
                raise ValueError("voigt requires a = 0, c0 > 0, c1 >= 0")
        elif k is ModelKind.ELASTIC:
            collapsed = self.c1 == self.a * self.c0
            trivial = self.c1 == 0 and self.a == 0
            if not (collapsed or trivial):
                raise ValueError("elastic requires c1 = a*c0 or c1 = a = 0")
            if self.c0 <= 0:
                raise ValueError("elastic requires c0 > 0")

    @property
    def c_diff(self) -> float:
        """Diffusive part c1 - a*c0 (zero means the law is conservative)."""
        return self.c1 - self.a * self.c0

    @property
    def length(self) -> float:
        return self.x_hi - self.x_lo


def _principal_power(s, nu: float):
    """s**nu with the principal argument; exact identity for nu = 1."""
    if nu == 1.0:
        return s
    return np.exp(nu * np.log(s))


def eval_transfer(region: MaterialRegion, s):
    """Evaluate the region's transfer function c(s) on Re s > 0.

    Accepts scalars or arrays; rejects any point with Re s <= 0.
    """
    s = np.asarray(s, dtype=complex)
    if np.any(s.real <= 0):
        raise ValueError("transfer function is only defined for Re s > 0")
    k = region.kind
    if k is ModelKind.ELASTIC:
        out = np.full(s.shape, complex(region.c0))
        return out if s.shape else out[()]
    z = _principal_power(s, region.nu)
    if k in (ModelKind.VOIGT, ModelKind.FRACTIONAL_VOIGT):
        out = region.c0 + region.c1 * z
    else:  # zener family; maxwell is the c0 = 0 member
        out = (region.c0 + region.c1 * z) / (1.0 + region.a * z)
    return out if s.shape else out[()]


@dataclass(frozen=True)
class Certificate:
    """Positivity/boundedness certificate (r, psi, phi) of a material law.

    psi is non-decreasing, phi non-increasing on (0, inf); r >= 0 integer.
    """

    r: int
    psi: Callable[[np.ndarray], np.ndarray]
    phi: Callable[[np.ndarray], np.ndarray]
    label: str = ""

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("growth exponent r must be >= 0")


def certificate_of(region: MaterialRegion) -> Certificate:
    """Closed-form certificate of one region's model family.

    elastic:  r=0, psi(x) = c0*x,                 phi(x) = c0
    zener:    r=0, psi(x) = c0*x,                 phi(x) = (1+a)/a^2 (c0+c1)/min(1,x)^2
    maxwell:  r=0, psi(x) = c1 min(1,a^3)/(2a^2) * min(1,x^3),
                                                  phi(x) = (1+a)/a^2 c1/min(1,x^2)
    voigt:    r=1, psi(x) = c0*x,                 phi(x) = (c0+c1)/min(1,x)
    The fractional variants keep the classical psi/phi except fractional
    voigt, whose phi uses min(1, x^2).  Coefficients are region-constant,
    so the L-inf norms in the general formulas reduce to the values
    themselves.
    """
    c0, c1, a = region.c0, region.c1, region.a
    k = region.kind
    if k is ModelKind.ELASTIC:
        return Certificate(
            r=0,
            psi=lambda x: c0 * np.asarray(x, dtype=float),
            phi=lambda x: np.full_like(np.asarray(x, dtype=float), c0),
            label="elastic",
        )
    if k in (ModelKind.ZENER, ModelKind.FRACTIONAL_ZENER):
        amp = (1.0 + a) / a**2 * (c0 + c1)
        return Certificate(
            r=0,
            psi=lambda x: c0 * np.asarray(x, dtype=float),
            phi=lambda x: amp / np.minimum(1.0, np.asarray(x, dtype=float)) ** 2,
            label=k.value,
        )
    if k in (ModelKind.MAXWELL, ModelKind.FRACTIONAL_MAXWELL):
        lead = c1 * min(1.0, a**3) / (2.0 * a**2)
        amp = (1.0 + a) / a**2 * c1
        return Certificate(
            r=0,
            psi=lambda x: lead * np.minimum(1.0, np.asarray(x, dtype=float) ** 3),
            phi=lambda x: amp / np.minimum(1.0, np.asarray(x, dtype=float) ** 2),
            label=k.value,
        )
    if k is ModelKind.VOIGT:
        return Certificate(
            r=1,
            psi=lambda x: c0 * np.asarray(x, dtype=float),
            phi=lambda x: (c0 + c1) / np.minimum(1.0, np.asarray(x, dtype=float)),
            label="voigt",
        )
    if k is ModelKind.FRACTIONAL_VOIGT:
        return Certificate(
            r=1,
            psi=lambda x: c0 * np.asarray(x, dtype=float),
            phi=lambda x: (c0 + c1) / np.minimum(1.0, np.asarray(x, dtype=float) ** 2),
            label="fractional_voigt",
        )
    raise ValueError(f"no certificate for kind {k}")


@dataclass(frozen=True)
class CoupledModel:
    """Ordered regions covering [0, L] without overlap or gaps."""

    regions: tuple[MaterialRegion, ...]

    def __init__(self, regions: Sequence[MaterialRegion]):
        regions = tuple(regions)
        if not regions:
            raise ValueError("coupled model needs at least one region")
        for left, right in zip(regions, regions[1:]):
            if left.x_hi != right.x_lo:
                raise ValueError(
                    f"regions must share endpoints exactly: "
                    f"{left.x_hi} != {right.x_lo}"
                )
        object.__setattr__(self, "regions", regions)

    @property
    def x_lo(self) -> float:
        return self.regions[0].x_lo

    @property
    def x_hi(self) -> float:
        return self.regions[-1].x_hi

    @property
    def interfaces(self) -> tuple[float, ...]:
        """Interior region boundaries."""
        return tuple(r.x_hi for r in self.regions[:-1])

    def region_at(self, x: float) -> MaterialRegion:
        for r in self.regions:
            if r.x_lo <= x <= r.x_hi:
                return r
        raise ValueError(f"x = {x} outside [{self.x_lo}, {self.x_hi}]")

    def certificate(self) -> Certificate:
        """Combined certificate: r = max r_j, psi = min psi_j,
        phi(x) = max_j x^(r_j - r) phi_j(x)."""
        certs = [certificate_of(r) for r in self.regions]
        r = max(c.r for c in certs)

        def psi(x):
            x = np.asarray(x, dtype=float)
            return np.minimum.reduce([c.psi(x) for c in certs])

        def phi(x):
            x = np.asarray(x, dtype=float)
            return np.maximum.reduce([x ** float(c.r - r) * c.phi(x) for c in certs])

        label = "+".join(c.label for c in certs)
        return Certificate(r=r, psi=psi, phi=phi, label=label)


# ---------------------------------------------------------------------------
# sampling verifiers
# ---------------------------------------------------------------------------

@dataclass
class VerificationReport:
    """Outcome of a sampled inequality check.

    Margins are (lhs - rhs) with the convention that >= 0 means the
    inequality holds; `violations` lists (s, margin) for failures beyond
    the numerical slack.
    """

    samples: int
    worst_positivity_margin: float = np.inf
    worst_boundedness_margin: float = np.inf
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def _sample_halfplane(rng: np.random.Generator, n: int) -> np.ndarray:
    """Log-uniform draw on {1e-3 <= Re s <= 1e3, |Im s| <= 1e3}.

    Re s = 10^U, U ~ U(-3, 3).  Im s = sign * 10^V, V ~ U(-3, 3), with one
    in eight samples placed exactly on the real axis so that equality cases
    of the certificates are exercised.
    """
    re = 10.0 ** rng.uniform(-3.0, 3.0, size=n)
    im = np.where(rng.random(n) < 0.125, 0.0,
                  np.sign(rng.standard_normal(n)) * 10.0 ** rng.uniform(-3.0, 3.0, size=n))
    return re + 1j * im

_REL_SLACK = 1e-10  # numerical slack for mathematically guaranteed inequalities


def verify_hypotheses(region: MaterialRegion,
                      cert: Certificate | None = None,
                      sample_count: int = 10_000,
                      rng_seed: int = 0) -> VerificationReport:
    """Check positivity and boundedness of c(s) against a certificate.

    Draws `sample_count` points from the documented log-uniform cloud and
    asserts Re(conj(s) c(s)) >= psi(Re s) and |c(s)| <= |s|^r phi(Re s).
    A violation report (never an exception) flags certificate or
    arithmetic bugs.
    """
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    if cert is None:
        cert = certificate_of(region)
    rng = np.random.default_rng(rng_seed)
    s = _sample_halfplane(rng, sample_count)
    c = eval_transfer(region, s)
    x = s.real

    pos_lhs = (np.conj(s) * c).real
    pos_rhs = cert.psi(x)
    pos_margin = pos_lhs - pos_rhs

    bnd_lhs = np.abs(s) ** cert.r * cert.phi(x)
    bnd_rhs = np.abs(c)
    bnd_margin = bnd_lhs - bnd_rhs

    report = VerificationReport(samples=sample_count)
    report.worst_positivity_margin = float(pos_margin.min())
    report.worst_boundedness_margin = float(bnd_margin.min())

    pos_bad = pos_margin < -_REL_SLACK * np.maximum(np.abs(pos_lhs), np.abs(pos_rhs))
    bnd_bad = bnd_margin < -_REL_SLACK * np.maximum(bnd_lhs, bnd_rhs)
    for idx in np.flatnonzero(pos_bad):
        report.violations.append(("positivity", complex(s[idx]), float(pos_margin[idx])))
    for idx in np.flatnonzero(bnd_bad):
        report.violations.append(("boundedness", complex(s[idx]), float(bnd_margin[idx])))
    return report


def fractional_power_bound_check(sample_count: int = 10_000,
                                 rng_seed: int = 0) -> VerificationReport:
    """Sampled check of min(1, Re s) <= Re(s^nu) for nu in (0,1), Re s > 0."""
    if sample_count < 1:
        raise ValueError("sample_count must be >= 1")
    rng = np.random.default_rng(rng_seed)
    s = _sample_halfplane(rng, sample_count)
    nu = rng.uniform(0.0, 1.0, size=sample_count)
    nu = np.clip(nu, 1e-12, 1.0 - 1e-12)
    lhs = np.exp(nu * np.log(s)).real
    rhs = np.minimum(1.0, s.real)
    margin = lhs - rhs

    report = VerificationReport(samples=sample_count)
    report.worst_positivity_margin = float(margin.min())
    bad = margin < -_REL_SLACK * np.maximum(np.abs(lhs), rhs)
    for idx in np.flatnonzero(bad):
        report.violations.append(
            ("fractional_power", complex(s[idx]), float(margin[idx]))
        )
    return report
