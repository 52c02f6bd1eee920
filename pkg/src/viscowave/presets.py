"""Model battery and ready-made scenarios for the shipped experiments.

The parameter sets mirror the published experiment tables: three model
families with varying first-order stiffness (dissipation sweep), varying
fractional order, the traction/creep set, and the heterogeneous
elastic/viscoelastic splits used for the space-time panels.
"""

from __future__ import annotations

from .material import CoupledModel, MaterialRegion, ModelKind

__all__ = ["TABLE_MODEL_BATTERY", "region", "table1_model", "table2_model",
           "table3_model", "heterogeneous_zener", "heterogeneous_maxwell",
           "heterogeneous_voigt"]


def region(kind: ModelKind, c0=0.0, c1=0.0, a=0.0, nu=1.0, rho=1.0,
           x_lo=0.0, x_hi=1.0) -> MaterialRegion:
    return MaterialRegion(x_lo=x_lo, x_hi=x_hi, kind=kind, c0=c0, c1=c1,
                          a=a, nu=nu, rho=rho)


def table1_model(family: str, c1: float) -> CoupledModel:
    """Dissipation sweep set: zener/maxwell/voigt with c1 varying.

    The smallest zener and voigt choices collapse to linear elasticity
    (c1 = a*c0 and c1 = 0 respectively)."""
    if family == "zener":
        # c1 = a*c0 = 0.75 collapses to elasticity but stays a valid region
        reg = region(ModelKind.ZENER, c0=1.5, c1=c1, a=0.5)
    elif family == "maxwell":
        reg = region(ModelKind.MAXWELL, c1=c1, a=0.5)
    elif family == "voigt":
        reg = region(ModelKind.VOIGT, c0=1.5, c1=c1)
    else:
        raise ValueError(f"unknown family {family!r}")
    return CoupledModel([reg])


def table2_model(family: str, nu: float) -> CoupledModel:
    """Fractional sweep set: c1 = 1 with nu varying."""
    frac = {"zener": ModelKind.FRACTIONAL_ZENER,
            "maxwell": ModelKind.FRACTIONAL_MAXWELL,
            "voigt": ModelKind.FRACTIONAL_VOIGT}
    classical = {"zener": ModelKind.ZENER, "maxwell": ModelKind.MAXWELL,
                 "voigt": ModelKind.VOIGT}
    kind = classical[family] if nu == 1.0 else frac[family]
    if family == "zener":
        reg = region(kind, c0=1.5, c1=1.0, a=0.5, nu=nu)
    elif family == "maxwell":
        reg = region(kind, c1=1.0, a=0.5, nu=nu)
    else:
        reg = region(kind, c0=1.5, c1=1.0, nu=nu)
    return CoupledModel([reg])


def table3_model(family: str, nu: float = 1.0) -> CoupledModel:
    """Traction/creep set: unit stiffnesses."""
    frac = {"zener": ModelKind.FRACTIONAL_ZENER,
            "maxwell": ModelKind.FRACTIONAL_MAXWELL,
            "voigt": ModelKind.FRACTIONAL_VOIGT}
    classical = {"zener": ModelKind.ZENER, "maxwell": ModelKind.MAXWELL,
                 "voigt": ModelKind.VOIGT}
    kind = classical[family] if nu == 1.0 else frac[family]
    if family == "zener":
        reg = region(kind, c0=1.0, c1=1.0, a=0.5, nu=nu)
    elif family == "maxwell":
        reg = region(kind, c1=1.0, a=0.5, nu=nu)
    else:
        reg = region(kind, c0=1.0, c1=1.0, nu=nu)
    return CoupledModel([reg])


def heterogeneous_zener() -> CoupledModel:
    """Elastic left half, strictly diffusive zener right half (rho = 10)."""
    left = region(ModelKind.ELASTIC, c0=1.75, c1=1.75, a=1.0, rho=10.0,
                  x_lo=0.0, x_hi=0.5)
    right = region(ModelKind.ZENER, c0=1.5, c1=1.75, a=0.5, rho=10.0,
                   x_lo=0.5, x_hi=1.0)
    return CoupledModel([left, right])


def heterogeneous_maxwell() -> CoupledModel:
    left = region(ModelKind.ELASTIC, c0=1.75, c1=1.75, a=1.0, rho=10.0,
                  x_lo=0.0, x_hi=0.5)
    right = region(ModelKind.MAXWELL, c1=1.75, a=1.0, rho=10.0,
                   x_lo=0.5, x_hi=1.0)
    return CoupledModel([left, right])


def heterogeneous_voigt() -> CoupledModel:
    left = region(ModelKind.ELASTIC, c0=1.75, c1=1.75, a=1.0, rho=10.0,
                  x_lo=0.0, x_hi=0.5)
    right = region(ModelKind.VOIGT, c0=1.75, c1=1.75, rho=10.0,
                   x_lo=0.5, x_hi=1.0)
    return CoupledModel([left, right])


# every distinct single-region law appearing in the experiment tables,
# labelled for the verifier reports
TABLE_MODEL_BATTERY: list[tuple[str, MaterialRegion]] = [
    ("t1 zener c1=0.75 (elastic collapse)",
     region(ModelKind.ZENER, c0=1.5, c1=0.75, a=0.5)),
    ("t1 zener c1=1", region(ModelKind.ZENER, c0=1.5, c1=1.0, a=0.5)),
    ("t1 zener c1=2.75", region(ModelKind.ZENER, c0=1.5, c1=2.75, a=0.5)),
    ("t1 maxwell c1=0.05", region(ModelKind.MAXWELL, c1=0.05, a=0.5)),
    ("t1 maxwell c1=0.25", region(ModelKind.MAXWELL, c1=0.25, a=0.5)),
    ("t1 maxwell c1=2", region(ModelKind.MAXWELL, c1=2.0, a=0.5)),
    ("t1 voigt c1=0 (elastic)", region(ModelKind.VOIGT, c0=1.5, c1=0.0)),
    ("t1 voigt c1=0.25", region(ModelKind.VOIGT, c0=1.5, c1=0.25)),
    ("t1 voigt c1=2", region(ModelKind.VOIGT, c0=1.5, c1=2.0)),
    ("t2 frac zener nu=0.05",
     region(ModelKind.FRACTIONAL_ZENER, c0=1.5, c1=1.0, a=0.5, nu=0.05)),
    ("t2 frac zener nu=0.5",
     region(ModelKind.FRACTIONAL_ZENER, c0=1.5, c1=1.0, a=0.5, nu=0.5)),
    ("t2 frac zener nu=0.95",
     region(ModelKind.FRACTIONAL_ZENER, c0=1.5, c1=1.0, a=0.5, nu=0.95)),
    ("t2 frac maxwell nu=0.05",
     region(ModelKind.FRACTIONAL_MAXWELL, c1=1.0, a=0.5, nu=0.05)),
    ("t2 frac maxwell nu=0.5",
     region(ModelKind.FRACTIONAL_MAXWELL, c1=1.0, a=0.5, nu=0.5)),
    ("t2 frac maxwell nu=0.95",
     region(ModelKind.FRACTIONAL_MAXWELL, c1=1.0, a=0.5, nu=0.95)),
    ("t2 frac voigt nu=0.05",
     region(ModelKind.FRACTIONAL_VOIGT, c0=1.5, c1=1.0, nu=0.05)),
    ("t2 frac voigt nu=0.5",
     region(ModelKind.FRACTIONAL_VOIGT, c0=1.5, c1=1.0, nu=0.5)),
    ("t2 frac voigt nu=0.95",
     region(ModelKind.FRACTIONAL_VOIGT, c0=1.5, c1=1.0, nu=0.95)),
    ("t3 zener", region(ModelKind.ZENER, c0=1.0, c1=1.0, a=0.5)),
    ("t3 frac zener nu=0.25",
     region(ModelKind.FRACTIONAL_ZENER, c0=1.0, c1=1.0, a=0.5, nu=0.25)),
    ("t3 maxwell", region(ModelKind.MAXWELL, c1=1.0, a=0.5)),
    ("t3 frac maxwell nu=0.75",
     region(ModelKind.FRACTIONAL_MAXWELL, c1=1.0, a=0.5, nu=0.75)),
    ("t3 voigt", region(ModelKind.VOIGT, c0=1.0, c1=1.0)),
    ("t3 frac voigt nu=0.25",
     region(ModelKind.FRACTIONAL_VOIGT, c0=1.0, c1=1.0, nu=0.25)),
    ("t4 elastic rho=10",
     region(ModelKind.ELASTIC, c0=1.75, c1=1.75, a=1.0, rho=10.0)),
    ("t4 zener rho=10",
     region(ModelKind.ZENER, c0=1.5, c1=1.75, a=0.5, rho=10.0)),
    ("t4 frac zener nu=0.3 rho=10",
     region(ModelKind.FRACTIONAL_ZENER, c0=1.5, c1=1.75, a=0.5, nu=0.3, rho=10.0)),
    ("t5 maxwell rho=10",
     region(ModelKind.MAXWELL, c1=1.75, a=1.0, rho=10.0)),
    ("t5 frac maxwell nu=0.3 rho=10",
     region(ModelKind.FRACTIONAL_MAXWELL, c1=1.75, a=1.0, nu=0.3, rho=10.0)),
    ("t5 voigt rho=10",
     region(ModelKind.VOIGT, c0=1.75, c1=1.75, rho=10.0)),
    ("t5 frac voigt nu=0.3 rho=10",
     region(ModelKind.FRACTIONAL_VOIGT, c0=1.75, c1=1.75, nu=0.3, rho=10.0)),
]
