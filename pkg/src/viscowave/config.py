"""Scenario configuration: JSON schema, validation, round-trip."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .material import CoupledModel, MaterialRegion, ModelKind
from .signals import BoundarySignals, signal_from_dict

__all__ = ["ConfigError", "SimulationConfig", "load_config", "parse_config"]


class ConfigError(ValueError):
    """Invalid configuration; message carries the offending field path."""


_REGION_FIELDS = {"x_lo", "x_hi", "kind", "c0", "c1", "a", "nu", "rho"}


@dataclass
class SimulationConfig:
    name: str
    model: CoupledModel
    elements_per_unit: int
    degree: int
    T: float
    steps: int
    signals: BoundarySignals
    integrator: str = "cq"
    probes: tuple = (1.0,)
    timeseries_path: str = "probes.csv"
    spacetime_path: str | None = None
    spacetime_nx: int = 101
    spacetime_nt: int = 101
    stride: int = 1

    @property
    def k(self) -> float:
        return self.T / self.steps

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "regions": [
                {"x_lo": r.x_lo, "x_hi": r.x_hi, "kind": r.kind.value,
                 "c0": r.c0, "c1": r.c1, "a": r.a, "nu": r.nu, "rho": r.rho}
                for r in self.model.regions
            ],
            "mesh": {"elements_per_unit": self.elements_per_unit,
                     "degree": self.degree},
            "time": {"T": self.T, "steps": self.steps},
            "signals": self.signals.to_dict(),
            "integrator": self.integrator,
            "probes": list(self.probes),
            "outputs": {
                "timeseries": self.timeseries_path,
                "spacetime": self.spacetime_path,
                "spacetime_nx": self.spacetime_nx,
                "spacetime_nt": self.spacetime_nt,
                "stride": self.stride,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"


def _require(d: dict, key: str, path: str):
    if key not in d:
        raise ConfigError(f"{path}.{key}: missing required field")
    return d[key]


def parse_config(data: dict) -> SimulationConfig:
    """Validate a parsed JSON document; errors carry field paths."""
    if not isinstance(data, dict):
        raise ConfigError("config root must be an object")
    regions_raw = _require(data, "regions", "config")
    if not regions_raw:
        raise ConfigError("regions: must contain at least one region")
    regions = []
    for i, rd in enumerate(regions_raw):
        path = f"regions[{i}]"
        unknown = set(rd) - _REGION_FIELDS
        if unknown:
            raise ConfigError(f"{path}: unknown fields {sorted(unknown)}")
        try:
            kind = ModelKind(_require(rd, "kind", path))
        except ValueError as exc:
            raise ConfigError(f"{path}.kind: {exc}") from None
        try:
            regions.append(MaterialRegion(
                x_lo=float(_require(rd, "x_lo", path)),
                x_hi=float(_require(rd, "x_hi", path)),
                kind=kind,
                c0=float(rd.get("c0", 0.0)),
                c1=float(rd.get("c1", 0.0)),
                a=float(rd.get("a", 0.0)),
                nu=float(rd.get("nu", 1.0)),
                rho=float(rd.get("rho", 1.0)),
            ))
        except ValueError as exc:
            raise ConfigError(f"{path}: {exc}") from None
    try:
        model = CoupledModel(regions)
    except ValueError as exc:
        raise ConfigError(f"regions: {exc}") from None

    mesh = _require(data, "mesh", "config")
    epu = int(_require(mesh, "elements_per_unit", "mesh"))
    degree = int(_require(mesh, "degree", "mesh"))
    if epu < 1:
        raise ConfigError("mesh.elements_per_unit: must be >= 1")
    if degree not in (1, 2, 3, 4):
        raise ConfigError("mesh.degree: must be in 1..4")

    time_d = _require(data, "time", "config")
    T = float(_require(time_d, "T", "time"))
    steps = int(_require(time_d, "steps", "time"))
    if T <= 0 or steps < 1:
        raise ConfigError("time: requires T > 0 and steps >= 1")

    sig_d = data.get("signals", {})
    try:
        signals = BoundarySignals(
            dirichlet=signal_from_dict(sig_d.get("dirichlet", {"kind": "zero"})),
            neumann=signal_from_dict(sig_d.get("neumann", {"kind": "zero"})),
        )
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"signals: {exc}") from None

    integrator = data.get("integrator", "cq")
    if integrator not in ("cq", "semigroup"):
        raise ConfigError(f"integrator: must be 'cq' or 'semigroup', got {integrator!r}")
    if integrator == "semigroup":
        for i, r in enumerate(model.regions):
            if r.kind.is_fractional:
                raise ConfigError(
                    f"integrator: semigroup requires nu = 1, but regions[{i}] "
                    f"is {r.kind.value}"
                )

    probes = tuple(float(x) for x in data.get("probes", [model.x_hi]))
    for x in probes:
        if not model.x_lo <= x <= model.x_hi:
            raise ConfigError(f"probes: {x} outside [{model.x_lo}, {model.x_hi}]")

    out = data.get("outputs", {})
    stride = int(out.get("stride", 1))
    if stride < 1:
        raise ConfigError("outputs.stride: must be >= 1")
    nx = int(out.get("spacetime_nx", 101))
    nt = int(out.get("spacetime_nt", 101))
    if out.get("spacetime") is not None and (nx < 2 or nt < 2):
        raise ConfigError("outputs: spacetime grid needs nx, nt >= 2")

    return SimulationConfig(
        name=str(data.get("name", "scenario")),
        model=model,
        elements_per_unit=epu,
        degree=degree,
        T=T,
        steps=steps,
        signals=signals,
        integrator=integrator,
        probes=probes,
        timeseries_path=str(out.get("timeseries", "probes.csv")),
        spacetime_path=out.get("spacetime"),
        spacetime_nx=nx,
        spacetime_nt=nt,
        stride=stride,
    )


def load_config(path) -> SimulationConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from None
    return parse_config(data)
