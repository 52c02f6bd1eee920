"""Configuration-driven scenario runner and CSV artifact writers.

CSV dialect (fixed): UTF-8, comma separator, '.' decimal point, one header
line, LF line endings.  Float cells use the shortest round-trip
representation, so identical runs produce byte-identical files.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import semigroup, timestepper
from .config import ConfigError, SimulationConfig
from .cq import CQScheme
from .fem1d import build_mesh
from .material import MaterialRegion, ModelKind

__all__ = ["ScenarioResult", "run_scenario", "spacetime_grid", "sweep",
           "dissipation_metric", "write_csv"]


def _fmt(x: float) -> str:
    return repr(float(x))


def write_csv(path, header: list[str], columns: list[np.ndarray]):
    """Write columns in the fixed dialect; parent dirs are created."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = len(columns[0])
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for i in range(rows):
            fh.write(",".join(_fmt(c[i]) for c in columns) + "\n")
    return path


@dataclass
class ScenarioResult:
    config: SimulationConfig
    times: np.ndarray
    probes: dict                  # position -> series
    files: list
    trajectory: object


def _probe_series(cfg: SimulationConfig, mesh, u_hist: np.ndarray) -> dict:
    out = {}
    for x in cfg.probes:
        idx, vals = mesh.interpolation_weights(x)
        out[x] = u_hist[:, idx] @ vals
    return out


def run_scenario(cfg: SimulationConfig, out_dir) -> ScenarioResult:
    """Run one configured scenario and write its CSV artifacts."""
    out_dir = Path(out_dir)
    mesh = build_mesh(cfg.model, cfg.elements_per_unit, cfg.degree)
    if cfg.integrator == "cq":
        scheme = CQScheme(k=cfg.k, N=cfg.steps)
        traj = timestepper.run(cfg.model, mesh, scheme, cfg.signals)
        u_hist = traj.u
    else:
        traj = semigroup.run(cfg.model, mesh, dt=cfg.k, n_steps=cfg.steps,
                             bc=cfg.signals)
        u_hist = traj.u
    times = cfg.k * np.arange(cfg.steps + 1)
    probes = _probe_series(cfg, mesh, u_hist)

    files = []
    sel = slice(None, None, cfg.stride)
    header = ["t"] + [f"u_at_{x:g}" for x in cfg.probes]
    cols = [times[sel]] + [probes[x][sel] for x in cfg.probes]
    files.append(write_csv(out_dir / cfg.timeseries_path, header, cols))
    if cfg.spacetime_path is not None:
        grid_path = out_dir / cfg.spacetime_path
        spacetime_grid(u_hist, mesh, times, cfg.spacetime_nx,
                       cfg.spacetime_nt, grid_path)
        files.append(grid_path)
    return ScenarioResult(config=cfg, times=times, probes=probes,
                          files=files, trajectory=traj)


def spacetime_grid(u_hist: np.ndarray, mesh, times: np.ndarray,
                   nx: int, nt: int, path) -> Path:
    """Sample u on a uniform (x, t) grid and write the grid CSV.

    Layout: first row holds the x coordinates (empty corner cell), each
    following row starts with its t coordinate.
    """
    if nx < 2 or nt < 2:
        raise ValueError("spacetime grid needs nx, nt >= 2")
    xs = np.linspace(mesh.vertices[0], mesh.vertices[-1], nx)
    t_idx = np.unique(np.round(np.linspace(0, len(times) - 1, nt)).astype(int))
    P = np.zeros((nx, mesh.n_dofs))
    for i, x in enumerate(xs):
        idx, vals = mesh.interpolation_weights(x)
        P[i, idx] = vals
    grid = u_hist[t_idx] @ P.T           # (nt, nx)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("," + ",".join(_fmt(x) for x in xs) + "\n")
        for r, ti in enumerate(t_idx):
            fh.write(_fmt(times[ti]) + ","
                     + ",".join(_fmt(v) for v in grid[r]) + "\n")
    return path


def dissipation_metric(times: np.ndarray, series: np.ndarray,
                       t_lo: float = 10.0, t_hi: float = 40.0) -> float:
    """Trapezoidal integral of |u|^2 over [t_lo, t_hi] (clipped to the run)."""
    mask = (times >= t_lo) & (times <= t_hi)
    if mask.sum() < 2:
        raise ValueError("probe series does not cover the metric window")
    return float(np.trapezoid(series[mask] ** 2, times[mask]))


_SWEEPABLE = ("c0", "c1", "a", "nu")


def sweep(cfg: SimulationConfig, parameter: str, values, out_dir) -> Path:
    """One run per value of `region_index.name`; writes the summary CSV.

    parameter is e.g. "0.c1" (region index dot field); the summary has one
    row per value with the final-time probe value at the last configured
    probe and the dissipation metric over [10, 40].
    """
    out_dir = Path(out_dir)
    try:
        ridx_s, name = parameter.split(".")
        ridx = int(ridx_s)
    except ValueError:
        raise ConfigError(
            f"sweep parameter must look like '<region>.<name>', got {parameter!r}"
        ) from None
    if name not in _SWEEPABLE:
        raise ConfigError(f"sweep parameter name must be one of {_SWEEPABLE}")
    if not 0 <= ridx < len(cfg.model.regions):
        raise ConfigError(f"sweep region index {ridx} out of range")

    rows_value, rows_final, rows_metric = [], [], []
    for v in values:
        regions = list(cfg.model.regions)
        regions[ridx] = _with_param(regions[ridx], name, float(v))
        run_cfg = replace(cfg, model=type(cfg.model)(regions),
                          name=f"{cfg.name}_{name}_{v:g}",
                          timeseries_path=f"{cfg.name}_{name}_{v:g}.csv")
        res = run_scenario(run_cfg, out_dir)
        x_last = cfg.probes[-1]
        rows_value.append(float(v))
        rows_final.append(res.probes[x_last][-1])
        rows_metric.append(dissipation_metric(res.times, res.probes[x_last]))
    return write_csv(out_dir / f"{cfg.name}_sweep_{name}.csv",
                     [name, "final_probe", "dissipation_metric"],
                     [np.array(rows_value), np.array(rows_final),
                      np.array(rows_metric)])


_FRACTIONAL_OF = {
    ModelKind.ZENER: ModelKind.FRACTIONAL_ZENER,
    ModelKind.MAXWELL: ModelKind.FRACTIONAL_MAXWELL,
    ModelKind.VOIGT: ModelKind.FRACTIONAL_VOIGT,
}
_CLASSICAL_OF = {v: k for k, v in _FRACTIONAL_OF.items()}


def _with_param(region: MaterialRegion, name: str, value: float) -> MaterialRegion:
    kwargs = dict(x_lo=region.x_lo, x_hi=region.x_hi, kind=region.kind,
                  c0=region.c0, c1=region.c1, a=region.a, nu=region.nu,
                  rho=region.rho)
    kwargs[name] = value
    if name == "nu":
        # sweeping across nu = 1 switches between the fractional kind and
        # its classical counterpart
        kind = kwargs["kind"]
        if value == 1.0 and kind in _CLASSICAL_OF:
            kwargs["kind"] = _CLASSICAL_OF[kind]
        elif value < 1.0 and kind in _FRACTIONAL_OF:
            kwargs["kind"] = _FRACTIONAL_OF[kind]
    return MaterialRegion(**kwargs)
